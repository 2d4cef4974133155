#include "segmerge/baseline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace segmerge {

namespace {

struct SplitChoice {
  double reduction = 0.0;
  int coord = -1;
  double threshold = 0.0;
  bool valid() const { return coord >= 0; }
};

struct LeafState {
  int node = -1;
  std::vector<int> samples;
  SplitChoice best;
  int created = 0;
};

double node_stats(const Dataset& ds, const std::vector<int>& samples, double& mean) {
  double sum = 0.0, sum2 = 0.0;
  for (int i : samples) {
    sum += ds.labels[i];
    sum2 += ds.labels[i] * ds.labels[i];
  }
  const double t = static_cast<double>(samples.size());
  mean = samples.empty() ? 0.0 : sum / t;
  return std::max(0.0, sum2 - sum * sum / std::max(1.0, t));
}

SplitChoice best_split(const Dataset& ds, std::vector<int>& samples, double node_sse,
                       int coords) {
  SplitChoice best;
  double best_red = 0.0;
  const int t = static_cast<int>(samples.size());
  if (t < 2) return best;
  std::vector<int> order(samples);
  std::vector<double> prefix_y(t + 1), prefix_y2(t + 1);
  for (int c = 0; c < coords; ++c) {
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double va = ds.features(a, c), vb = ds.features(b, c);
      return va < vb || (va == vb && a < b);
    });
    for (int i = 0; i < t; ++i) {
      double y = ds.labels[order[i]];
      prefix_y[i + 1] = prefix_y[i] + y;
      prefix_y2[i + 1] = prefix_y2[i] + y * y;
    }
    for (int i = 1; i < t; ++i) {
      double lo = ds.features(order[i - 1], c), hi = ds.features(order[i], c);
      if (lo == hi) continue;  // no threshold separates equal values
      double sse_l = prefix_y2[i] - prefix_y[i] * prefix_y[i] / i;
      double sum_r = prefix_y[t] - prefix_y[i];
      double sum2_r = prefix_y2[t] - prefix_y2[i];
      double sse_r = sum2_r - sum_r * sum_r / (t - i);
      double red = node_sse - sse_l - sse_r;
      double thr = 0.5 * (lo + hi);
      bool better = red > best_red ||
                    (red == best_red && best.valid() &&
                     (c < best.coord || (c == best.coord && thr < best.threshold)));
      if (better && red > 1e-12 * (1.0 + node_sse)) {
        best_red = red;
        best.reduction = red;
        best.coord = c;
        best.threshold = thr;
      }
    }
  }
  return best;
}

}  // namespace

int CartModel::leaf_count() const {
  int count = 0;
  for (const CartNode& n : nodes)
    if (n.split_coord < 0) ++count;
  return count;
}

double CartModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != d) throw std::invalid_argument("query dimension mismatch");
  int i = 0;
  while (nodes[i].split_coord >= 0)
    i = x[nodes[i].split_coord] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
  return nodes[i].value;
}

Eigen::VectorXd CartModel::predict_many(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = predict(X.row(i));
  return out;
}

CartModel cart_fit(const Dataset& dataset, int max_leaves, int allowed_coords) {
  dataset.validate();
  if (max_leaves < 1) throw std::invalid_argument("max_leaves must be >= 1");
  const int coords = allowed_coords > 0 ? std::min(allowed_coords, dataset.dim())
                                        : dataset.dim();

  CartModel model;
  model.d = dataset.dim();

  std::vector<LeafState> leaves;
  int creation = 0;

  auto make_leaf = [&](std::vector<int>&& samples) {
    CartNode node;
    node.count = static_cast<int>(samples.size());
    node.sse = node_stats(dataset, samples, node.value);
    model.nodes.push_back(node);
    LeafState state;
    state.node = static_cast<int>(model.nodes.size()) - 1;
    state.samples = std::move(samples);
    state.best = best_split(dataset, state.samples, node.sse, coords);
    state.created = creation++;
    leaves.push_back(std::move(state));
  };

  std::vector<int> all(dataset.n());
  std::iota(all.begin(), all.end(), 0);
  make_leaf(std::move(all));

  while (static_cast<int>(leaves.size()) < max_leaves) {
    int pick = -1;
    for (int i = 0; i < static_cast<int>(leaves.size()); ++i) {
      if (!leaves[i].best.valid()) continue;
      if (pick < 0 || leaves[i].best.reduction > leaves[pick].best.reduction ||
          (leaves[i].best.reduction == leaves[pick].best.reduction &&
           leaves[i].created < leaves[pick].created))
        pick = i;
    }
    if (pick < 0) break;  // no improving split anywhere

    LeafState state = std::move(leaves[pick]);
    leaves.erase(leaves.begin() + pick);
    std::vector<int> left, right;
    for (int s : state.samples) {
      if (dataset.features(s, state.best.coord) < state.best.threshold)
        left.push_back(s);
      else
        right.push_back(s);
    }
    CartNode& parent = model.nodes[state.node];
    parent.split_coord = state.best.coord;
    parent.threshold = state.best.threshold;
    make_leaf(std::move(left));
    model.nodes[state.node].left = static_cast<int>(model.nodes.size()) - 1;
    make_leaf(std::move(right));
    model.nodes[state.node].right = static_cast<int>(model.nodes.size()) - 1;
  }
  return model;
}

double cart_oracle_mse(const CartModel& model, const Dataset& dataset) {
  if (!dataset.truth) throw std::invalid_argument("dataset has no truth vector");
  double total = 0.0;
  for (int i = 0; i < dataset.n(); ++i) {
    double diff = model.predict(dataset.features.row(i)) - (*dataset.truth)[i];
    total += diff * diff;
  }
  return total / dataset.n();
}

double cart_empirical_risk(const CartModel& model, const Dataset& dataset) {
  double total = 0.0;
  for (int i = 0; i < dataset.n(); ++i) {
    double diff = model.predict(dataset.features.row(i)) - dataset.labels[i];
    total += diff * diff;
  }
  return total / dataset.n();
}

}  // namespace segmerge
