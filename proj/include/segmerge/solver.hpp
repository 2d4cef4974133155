#pragma once

#include <Eigen/Dense>

#include <vector>

#include "segmerge/grid.hpp"
#include "segmerge/types.hpp"

namespace segmerge {

// Relative pivot threshold for numerical rank decisions.
inline constexpr double kRankRtol = 1e-10;

Eigen::VectorXd apply_kernel(Kernel kernel, const Eigen::Ref<const Eigen::VectorXd>& x);

// t x m matrix with row i = kernel(features[samples[i]]).
Eigen::MatrixXd kernel_matrix(Kernel kernel, const Dataset& dataset,
                              const std::vector<int>& samples);

struct LsqResult {
  Eigen::VectorXd theta;
  double sse = 0.0;
  int effective_rank = 0;
};

// Minimum-norm least-squares solution via rank-revealing orthogonal
// factorization; t = 0 yields theta = 0, sse = 0, rank 0.
LsqResult least_squares(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels);

FittedPiece fit_samples(const RankRect& rect, int level, const std::vector<int>& samples,
                        const Dataset& dataset, Kernel kernel);

FittedPiece fit_rectangle(const TreeNode& node, const Dataset& dataset, Kernel kernel);

}  // namespace segmerge
