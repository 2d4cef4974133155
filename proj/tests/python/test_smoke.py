"""Quick end-to-end checks of the python bindings."""

import math
import os
import tempfile

import numpy as np

import segmerge


def test_fit_predict_roundtrip():
    syn = segmerge.gen_synthetic(n=1000, d=4, d_prime=1, k=4, s2=1.0, seed=3)
    model = segmerge.fit(syn.dataset, kernel="constant", sigma=1.0, stop_count=4)
    assert model.num_pieces >= 1
    assert model.num_pieces <= segmerge.piece_count_bound(1024, 1, 4)
    mse = segmerge.oracle_mse(model, syn.dataset)
    floor = segmerge.true_fit_mse(syn, kernel="constant")
    assert floor <= mse < 1.0

    preds = model.predict(syn.dataset.features)
    risk = float(np.mean((preds - syn.dataset.labels) ** 2))
    assert math.isclose(risk, segmerge.empirical_risk(model, syn.dataset), rel_tol=1e-9)

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "m.json")
        model.save(path)
        back = segmerge.load_model(path)
        assert np.array_equal(back.predict(syn.dataset.features), preds)


def test_cart_and_csv():
    syn = segmerge.gen_synthetic(n=500, d=3, d_prime=1, k=4, s2=1.0, seed=9)
    cart = segmerge.cart_fit(syn.dataset, max_leaves=8)
    assert 1 <= cart.num_leaves <= 8
    assert segmerge.cart_oracle_mse(cart, syn.dataset) < 1.0

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "d.csv")
        segmerge.write_dataset_csv(path, syn.dataset)
        back = segmerge.read_dataset_csv(path, 1)
        assert np.array_equal(back.features, syn.dataset.features)
        assert np.array_equal(back.labels, syn.dataset.labels)


def test_dataset_from_arrays():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(64, 2))
    y = np.where(X[:, 0] > 0, 1.0, -1.0)
    ds = segmerge.Dataset(X, y, d_prime=1)
    model = segmerge.fit(ds, kernel="constant", sigma=0.0,
                         stop_count=segmerge.default_stop_count(2, 64, 1))
    assert segmerge.empirical_risk(model, ds) < 1e-9


if __name__ == "__main__":
    test_fit_predict_roundtrip()
    test_cart_and_csv()
    test_dataset_from_arrays()
    print("python smoke: all checks passed")
