#include "segmerge/grid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace segmerge {

namespace {

int next_pow2(int n) {
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(n)));
}

}  // namespace

Grid build_grid(const Dataset& dataset) {
  dataset.validate();
  const int n = dataset.n();
  Grid grid;
  grid.d_prime = dataset.d_prime;
  grid.n_padded = next_pow2(n);
  grid.levels = std::countr_zero(static_cast<unsigned>(grid.n_padded));
  grid.boundaries.resize(grid.d_prime);
  grid.sample_ranks.assign(n, std::vector<int>(grid.d_prime));

  std::vector<int> order(n);
  for (int c = 0; c < grid.d_prime; ++c) {
    std::iota(order.begin(), order.end(), 0);
    // Ties broken by original sample index, so ranks are a permutation.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return dataset.features(a, c) < dataset.features(b, c);
    });
    auto& b = grid.boundaries[c];
    b.resize(grid.n_padded);
    for (int r = 0; r < n; ++r) {
      b[r] = dataset.features(order[r], c);
      grid.sample_ranks[order[r]][c] = r;
    }
    for (int r = n; r < grid.n_padded; ++r) b[r] = b[n - 1];
  }
  return grid;
}

std::vector<RankRect> level_rectangles(const Grid& grid, int level) {
  if (level < 0 || level > grid.levels) throw std::invalid_argument("level out of range");
  const int side = 1 << level;
  const int per_axis = grid.n_padded / side;
  std::vector<RankRect> out;
  std::vector<int> idx(grid.d_prime, 0);
  for (;;) {
    std::vector<int> lo(grid.d_prime);
    for (int c = 0; c < grid.d_prime; ++c) lo[c] = idx[c] * side;
    out.push_back(RankRect::cube(lo, side));
    // row-major: last coordinate varies fastest
    int c = grid.d_prime - 1;
    while (c >= 0 && ++idx[c] == per_axis) idx[c--] = 0;
    if (c < 0) break;
  }
  return out;
}

std::unique_ptr<TreeNode> build_tree(const Grid& grid, const Dataset& dataset) {
  auto root = std::make_unique<TreeNode>();
  root->rect = RankRect::cube(std::vector<int>(grid.d_prime, 0), grid.n_padded);
  root->level = grid.levels;
  root->samples.resize(dataset.n());
  std::iota(root->samples.begin(), root->samples.end(), 0);

  const int dp = grid.d_prime;
  // Iterative stack to avoid deep recursion on singleton chains.
  std::vector<TreeNode*> stack{root.get()};
  while (!stack.empty()) {
    TreeNode* node = stack.back();
    stack.pop_back();
    if (node->level == 0) continue;
    const int half = node->rect.side(0) / 2;
    const int n_children = 1 << dp;
    std::vector<std::vector<int>> parts(n_children);
    for (int s : node->samples) {
      int child = 0;
      for (int c = 0; c < dp; ++c) {
        child <<= 1;
        if (grid.sample_ranks[s][c] >= node->rect.lo[c] + half) child |= 1;
      }
      parts[child].push_back(s);
    }
    for (int ci = 0; ci < n_children; ++ci) {
      if (parts[ci].empty()) continue;
      auto child = std::make_unique<TreeNode>();
      child->level = node->level - 1;
      child->rect.lo.resize(dp);
      child->rect.hi.resize(dp);
      for (int c = 0; c < dp; ++c) {
        int bit = (ci >> (dp - 1 - c)) & 1;
        child->rect.lo[c] = node->rect.lo[c] + bit * half;
        child->rect.hi[c] = child->rect.lo[c] + half;
      }
      child->samples = std::move(parts[ci]);
      node->children.push_back(std::move(child));
      stack.push_back(node->children.back().get());
    }
  }
  return root;
}

std::vector<std::pair<int, int>> dyadic_decompose_interval(int lo, int hi, int n_padded) {
  if (!(0 <= lo && lo < hi && hi <= n_padded))
    throw std::invalid_argument("invalid rank interval");
  std::vector<std::pair<int, int>> out;
  while (lo < hi) {
    int align = lo == 0 ? n_padded : (lo & -lo);
    int fit = static_cast<int>(std::bit_floor(static_cast<unsigned>(hi - lo)));
    int block = std::min(align, fit);
    out.emplace_back(lo, lo + block);
    lo += block;
  }
  return out;
}

std::vector<RankRect> decompose_rectangle(const RankRect& rect, const Grid& grid) {
  std::vector<std::vector<std::pair<int, int>>> per_coord(rect.dims());
  for (int c = 0; c < rect.dims(); ++c)
    per_coord[c] = dyadic_decompose_interval(rect.lo[c], rect.hi[c], grid.n_padded);

  std::vector<RankRect> out;
  std::vector<int> idx(rect.dims(), 0);
  for (;;) {
    RankRect r;
    r.lo.resize(rect.dims());
    r.hi.resize(rect.dims());
    for (int c = 0; c < rect.dims(); ++c) {
      r.lo[c] = per_coord[c][idx[c]].first;
      r.hi[c] = per_coord[c][idx[c]].second;
    }
    out.push_back(std::move(r));
    int c = rect.dims() - 1;
    while (c >= 0 && ++idx[c] == static_cast<int>(per_coord[c].size())) idx[c--] = 0;
    if (c < 0) break;
  }
  return out;
}

}  // namespace segmerge
