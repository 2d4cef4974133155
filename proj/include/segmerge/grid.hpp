#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "segmerge/types.hpp"

namespace segmerge {

// Node of the 2^{d'}-ary tree over the rank grid. Children exist only for
// non-empty sub-rectangles; children's sample lists partition the parent's.
struct TreeNode {
  RankRect rect;
  int level = 0;
  std::vector<int> samples;
  std::vector<std::unique_ptr<TreeNode>> children;  // row-major rank order
  std::optional<FittedPiece> fit;  // cached group fit once merged
  TreeNode* parent = nullptr;      // set by greedy_merge's numbering pass
  int canon = -1;                  // pre-order position, ditto

  bool leaf() const { return children.empty(); }
};

Grid build_grid(const Dataset& dataset);

// All aligned rank cubes of side 2^level, row-major (first coordinate slowest).
std::vector<RankRect> level_rectangles(const Grid& grid, int level);

std::unique_ptr<TreeNode> build_tree(const Grid& grid, const Dataset& dataset);

// Canonical minimal cover of [lo, hi) by disjoint aligned power-of-two
// intervals, left to right. At most 2*log2(n_padded) pieces.
std::vector<std::pair<int, int>> dyadic_decompose_interval(int lo, int hi, int n_padded);

// Cross product of the per-coordinate interval covers.
std::vector<RankRect> decompose_rectangle(const RankRect& rect, const Grid& grid);

}  // namespace segmerge
