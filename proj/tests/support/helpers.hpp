#pragma once

#include <random>
#include <vector>

#include "segmerge/grid.hpp"
#include "segmerge/merge.hpp"
#include "segmerge/types.hpp"

namespace segmerge::testing {

// Dataset with d = d_prime = 1 from explicit coordinate/label pairs.
inline Dataset dataset_1d(const std::vector<double>& xs, const std::vector<double>& ys) {
  Dataset ds;
  ds.d_prime = 1;
  ds.features.resize(static_cast<int>(xs.size()), 1);
  ds.labels.resize(static_cast<int>(ys.size()));
  for (size_t i = 0; i < xs.size(); ++i) {
    ds.features(static_cast<int>(i), 0) = xs[i];
    ds.labels[static_cast<int>(i)] = ys[i];
  }
  return ds;
}

inline Dataset random_dataset(int n, int d, int d_prime, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset ds;
  ds.d_prime = d_prime;
  ds.features.resize(n, d);
  ds.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) ds.features(i, j) = normal(rng);
    ds.labels[i] = normal(rng);
  }
  return ds;
}

inline FittedModel fit_model(const Dataset& ds, Kernel kernel, double sigma, int stop,
                             MergeTrace* trace = nullptr) {
  Grid grid = build_grid(ds);
  auto tree = build_tree(grid, ds);
  MergeConfig cfg{sigma, stop, kernel};
  return greedy_merge(*tree, ds, grid, cfg, trace);
}

}  // namespace segmerge::testing
