#pragma once

#include <vector>

#include "segmerge/grid.hpp"
#include "segmerge/solver.hpp"
#include "segmerge/types.hpp"

namespace segmerge {

struct MergeConfig {
  double sigma = 0.0;    // noise scale in the regularized error
  int stop_count = 1;    // sibling groups retained unmerged per iteration
  Kernel kernel = Kernel::Affine;
};

// Theory default: k * ceil(log2 n)^{d'}.
int default_stop_count(int k, int n, int d_prime);

// sse - sigma^2 * count; may be negative.
double regularized_error(const FittedPiece& piece, double sigma);

// One group per internal node all of whose children are leaves, in
// pre-order with children visited in row-major rank order.
std::vector<TreeNode*> sibling_groups(TreeNode& root);

struct MergeTraceGroup {
  RankRect rect;
  double sse = 0.0;
  double reg_err = 0.0;
  double child_sse_sum = 0.0;  // sum of the children's own fit sse
  int count = 0;
  bool merged = false;
};
using MergeTrace = std::vector<std::vector<MergeTraceGroup>>;

// Iterative bottom-up merging: while at least stop_count sibling groups
// exist, fit each group's union, retain the stop_count groups of largest
// regularized error (ties broken toward the earlier group in canonical
// order) and collapse the rest into their parents. An iteration that
// merges nothing ends the loop. The returned model fits every final leaf,
// reusing group fits cached at merge time.
FittedModel greedy_merge(TreeNode& root, const Dataset& dataset, const Grid& grid,
                         const MergeConfig& config, MergeTrace* trace = nullptr);

// Upper-bound certificate on the number of output pieces.
long long piece_count_bound(int n_padded, int d_prime, int stop_count);

// Heuristic noise-scale estimate: median over bottom-level sibling groups
// of sse / (count - rank), square-rooted. Returns 0 if no group has
// residual degrees of freedom.
double estimate_sigma(const TreeNode& root, const Dataset& dataset, Kernel kernel);

}  // namespace segmerge
