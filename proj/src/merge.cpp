#include "segmerge/merge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace segmerge {

int default_stop_count(int k, int n, int d_prime) {
  if (k < 1 || n < 1 || d_prime < 1) throw std::invalid_argument("bad default_stop_count args");
  int log_n = static_cast<int>(std::ceil(std::log2(std::max(2, n))));
  long long stop = k;
  for (int c = 0; c < d_prime; ++c) stop *= log_n;
  return static_cast<int>(std::min<long long>(stop, 1LL << 30));
}

double regularized_error(const FittedPiece& piece, double sigma) {
  return piece.sse - sigma * sigma * piece.count;
}

namespace {

void collect_groups(TreeNode& node, std::vector<TreeNode*>& out) {
  if (node.leaf()) return;
  bool all_leaves = true;
  for (const auto& child : node.children)
    if (!child->leaf()) all_leaves = false;
  if (all_leaves) {
    out.push_back(&node);
    return;
  }
  for (auto& child : node.children) collect_groups(*child, out);
}

void collect_leaves(TreeNode& node, std::vector<TreeNode*>& out) {
  if (node.leaf()) {
    out.push_back(&node);
    return;
  }
  for (auto& child : node.children) collect_leaves(*child, out);
}

}  // namespace

std::vector<TreeNode*> sibling_groups(TreeNode& root) {
  std::vector<TreeNode*> out;
  collect_groups(root, out);
  return out;
}

FittedModel greedy_merge(TreeNode& root, const Dataset& dataset, const Grid& grid,
                         const MergeConfig& config, MergeTrace* trace) {
  if (config.stop_count < 1) throw std::invalid_argument("stop_count must be >= 1");

  // The candidate list is maintained incrementally: merging removes a
  // group and can promote only its parent, so a full re-traversal per
  // iteration is unnecessary. Canonical (pre-order) indices keep the
  // list in the same order sibling_groups would produce.
  {
    int next_idx = 0;
    std::vector<TreeNode*> stack{&root};
    root.parent = nullptr;
    while (!stack.empty()) {
      TreeNode* node = stack.back();
      stack.pop_back();
      node->canon = next_idx++;
      for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
        (*it)->parent = node;
        stack.push_back(it->get());
      }
    }
  }
  auto is_group = [](const TreeNode* node) {
    if (node->leaf()) return false;
    for (const auto& child : node->children)
      if (!child->leaf()) return false;
    return true;
  };
  std::vector<std::pair<int, TreeNode*>> groups;  // (canonical index, node), sorted
  for (TreeNode* node : sibling_groups(root)) groups.emplace_back(node->canon, node);

  for (;;) {
    const int g = static_cast<int>(groups.size());
    if (g < config.stop_count) break;

    std::vector<double> errs(g);
    std::vector<double> child_sse(g, 0.0);
    for (int i = 0; i < g; ++i) {
      TreeNode* node = groups[i].second;
      // A retained group is structurally unchanged next iteration, so its
      // fit is computed once and kept on the node.
      if (!node->fit) node->fit = fit_rectangle(*node, dataset, config.kernel);
      errs[i] = regularized_error(*node->fit, config.sigma);
      if (trace)
        for (const auto& child : node->children)
          child_sse[i] += child->fit ? child->fit->sse
                                     : fit_rectangle(*child, dataset, config.kernel).sse;
    }

    // Largest regularized error first; equal errors rank the earlier
    // canonical group higher, so it is retained.
    std::vector<int> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return errs[a] > errs[b]; });

    std::vector<char> merged(g, 0);
    bool merged_any = false;
    std::vector<std::pair<int, TreeNode*>> promoted;
    for (int pos = config.stop_count; pos < g; ++pos) {
      int i = order[pos];
      groups[i].second->children.clear();  // the cached group fit becomes the leaf fit
      merged[i] = 1;
      merged_any = true;
      TreeNode* p = groups[i].second->parent;
      if (p && is_group(p)) promoted.emplace_back(p->canon, p);
    }

    if (trace) {
      std::vector<MergeTraceGroup> iter(g);
      for (int i = 0; i < g; ++i) {
        iter[i].rect = groups[i].second->rect;
        iter[i].sse = groups[i].second->fit->sse;
        iter[i].reg_err = errs[i];
        iter[i].child_sse_sum = child_sse[i];
        iter[i].count = static_cast<int>(groups[i].second->samples.size());
        iter[i].merged = merged[i] != 0;
      }
      trace->push_back(std::move(iter));
    }

    if (!merged_any) break;  // every group retained: no further progress

    // retained groups are already in canonical order; splice the few
    // newly promoted parents in
    std::vector<std::pair<int, TreeNode*>> next;
    next.reserve(config.stop_count + promoted.size());
    for (int i = 0; i < g; ++i)
      if (!merged[i]) next.push_back(groups[i]);
    std::sort(promoted.begin(), promoted.end());
    const size_t retained = next.size();
    next.insert(next.end(), promoted.begin(), promoted.end());
    std::inplace_merge(next.begin(), next.begin() + retained, next.end());
    groups = std::move(next);
  }

  FittedModel model;
  model.grid = grid;
  model.kernel = config.kernel;
  model.d = dataset.dim();
  std::vector<TreeNode*> leaves;
  collect_leaves(root, leaves);
  model.pieces.reserve(leaves.size());
  for (TreeNode* leaf : leaves) {
    if (leaf->fit)
      model.pieces.push_back(*leaf->fit);
    else
      model.pieces.push_back(fit_rectangle(*leaf, dataset, config.kernel));
  }
  return model;
}

long long piece_count_bound(int n_padded, int d_prime, int stop_count) {
  if (n_padded < 1 || d_prime < 1 || stop_count < 1)
    throw std::invalid_argument("bad piece_count_bound args");
  int log_n = 0;
  while ((1 << (log_n + 1)) <= n_padded) ++log_n;
  return (1LL << d_prime) * stop_count * (log_n + 2);
}

double estimate_sigma(const TreeNode& root, const Dataset& dataset, Kernel kernel) {
  std::vector<double> s2;
  std::vector<const TreeNode*> stack{&root};
  while (!stack.empty()) {
    const TreeNode* node = stack.back();
    stack.pop_back();
    if (node->level == 1 && !node->leaf()) {
      FittedPiece fit = fit_rectangle(*node, dataset, kernel);
      int dof = fit.count - fit.effective_rank;
      if (dof >= 1) s2.push_back(fit.sse / dof);
      continue;
    }
    for (const auto& child : node->children) stack.push_back(child.get());
  }
  if (s2.empty()) return 0.0;
  auto mid = s2.begin() + s2.size() / 2;
  std::nth_element(s2.begin(), mid, s2.end());
  return std::sqrt(*mid);
}

}  // namespace segmerge
