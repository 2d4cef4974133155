"""Multidimensional segmented regression by greedy bottom-up merging."""

from ._segmerge import (
    CartModel,
    Dataset,
    FittedPiece,
    Model,
    SyntheticData,
    cart_empirical_risk,
    cart_fit,
    cart_oracle_mse,
    default_stop_count,
    empirical_risk,
    fit,
    gen_synthetic,
    load_cart,
    load_model,
    oracle_mse,
    piece_count_bound,
    read_dataset_csv,
    true_fit_mse,
    write_dataset_csv,
)

__all__ = [
    "CartModel",
    "Dataset",
    "FittedPiece",
    "Model",
    "SyntheticData",
    "cart_empirical_risk",
    "cart_fit",
    "cart_oracle_mse",
    "default_stop_count",
    "empirical_risk",
    "fit",
    "gen_synthetic",
    "load_cart",
    "load_model",
    "oracle_mse",
    "piece_count_bound",
    "read_dataset_csv",
    "true_fit_mse",
    "write_dataset_csv",
]
