#pragma once

#include <Eigen/Dense>

#include <vector>

#include "segmerge/types.hpp"

namespace segmerge {

// Greedy best-first regression tree with constant leaves; the comparator.
struct CartNode {
  int split_coord = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  double value = 0.0;  // leaf mean
  double sse = 0.0;
  int count = 0;
};

struct CartModel {
  std::vector<CartNode> nodes;  // nodes[0] is the root
  int d = 0;

  int leaf_count() const;
  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd predict_many(const Eigen::MatrixXd& X) const;
};

// Best-first growth: repeatedly split the leaf whose best split most
// reduces total sse, until max_leaves leaves or no improving split.
// allowed_coords = 0 permits every coordinate; c > 0 restricts splits to
// the first c coordinates. Ties: lowest coordinate, then lowest threshold,
// then earliest-created leaf.
CartModel cart_fit(const Dataset& dataset, int max_leaves, int allowed_coords = 0);

double cart_oracle_mse(const CartModel& model, const Dataset& dataset);
double cart_empirical_risk(const CartModel& model, const Dataset& dataset);

}  // namespace segmerge
