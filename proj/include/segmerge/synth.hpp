#pragma once

#include <cstdint>
#include <vector>

#include "segmerge/types.hpp"

namespace segmerge {

struct SyntheticData {
  Dataset dataset;
  std::vector<int> cell;  // true piece index per sample
  int k = 0;
};

// Standard-normal features; the first d_prime coordinates are partitioned
// into k equal-count cells by recursive empirical quantiles (k must be a
// perfect d_prime-th power when d_prime > 1). Each cell's truth is a
// Uniform[0,1] constant, or an affine function of the features when
// affine_truth is set. Labels are truth plus noise.
SyntheticData gen_synthetic(int n, int d, int d_prime, int k, const NoiseSpec& noise,
                            std::uint64_t seed, bool affine_truth = false);

// Least-squares fit per true cell, evaluated against the truth: the
// benchmark floor.
double true_fit_mse(const SyntheticData& data, Kernel kernel);

}  // namespace segmerge
