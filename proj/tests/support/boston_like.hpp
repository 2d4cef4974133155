#pragma once

#include <random>

#include "segmerge/types.hpp"

namespace segmerge::testing {

// Deterministic housing-style regression set: 506 samples, 13 features of
// mixed scales, a piecewise-affine response over the first two coordinates
// (four cells split at the feature medians) and noise of variance ~4.
inline Dataset boston_like() {
  const int n = 506, d = 13;
  std::mt19937_64 rng(6174);
  std::normal_distribution<double> normal;

  const double scale[13] = {3.6, 23.3, 6.9, 0.25, 0.12, 0.70, 28.1,
                            2.1, 8.7,  169, 2.2,  91.3, 7.1};
  const double shift[13] = {3.6, 11.4, 11.1, 0.07, 0.55, 6.3, 68.6,
                            3.8, 9.5,  408,  18.5, 357,  12.7};

  Dataset ds;
  ds.d_prime = 2;
  ds.features.resize(n, d);
  ds.labels.resize(n);
  Eigen::VectorXd truth(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) ds.features(i, j) = shift[j] + scale[j] * normal(rng);

  // per-cell affine responses; the cell is (x0 > median0, x1 > median1)
  const double w0[4] = {1.1, 0.7, 1.5, 0.9};
  const double w1[4] = {0.15, 0.25, 0.10, 0.20};
  const double c[4] = {22.0, 25.0, 19.0, 23.5};
  for (int i = 0; i < n; ++i) {
    int cell = 2 * (ds.features(i, 0) > shift[0]) + (ds.features(i, 1) > shift[1]);
    truth[i] = c[cell] + w0[cell] * (ds.features(i, 0) - shift[0]) +
               w1[cell] * (ds.features(i, 1) - shift[1]);
    ds.labels[i] = truth[i] + 2.0 * normal(rng);
  }
  ds.truth = truth;
  return ds;
}

}  // namespace segmerge::testing
