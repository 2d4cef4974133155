#include "segmerge/eval.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "segmerge/solver.hpp"

namespace segmerge {

namespace {

int chebyshev_distance(const RankRect& rect, const std::vector<int>& rank) {
  int dist = 0;
  for (int c = 0; c < rect.dims(); ++c) {
    int below = rect.lo[c] - rank[c];
    int above = rank[c] - (rect.hi[c] - 1);
    dist = std::max({dist, below, above, 0});
  }
  return dist;
}

const FittedPiece& locate_piece(const FittedModel& model, const std::vector<int>& rank) {
  for (const FittedPiece& piece : model.pieces)
    if (piece.rect.contains(rank)) return piece;

  // Empty-cell fallback: grow the dyadic ancestor of the query cell until
  // it holds pieces, then take the Chebyshev-nearest one.
  for (int level = 1; level <= model.grid.levels; ++level) {
    RankRect anc;
    anc.lo.resize(model.grid.d_prime);
    anc.hi.resize(model.grid.d_prime);
    for (int c = 0; c < model.grid.d_prime; ++c) {
      anc.lo[c] = (rank[c] >> level) << level;
      anc.hi[c] = anc.lo[c] + (1 << level);
    }
    const FittedPiece* best = nullptr;
    int best_dist = std::numeric_limits<int>::max();
    for (const FittedPiece& piece : model.pieces) {
      if (!anc.contains(piece.rect)) continue;
      int dist = chebyshev_distance(piece.rect, rank);
      if (dist < best_dist) {
        best_dist = dist;
        best = &piece;
      }
    }
    if (best) return *best;
  }
  throw std::logic_error("model has no pieces");
}

}  // namespace

double predict(const FittedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.d) throw std::invalid_argument("query dimension mismatch");
  std::vector<int> rank = rank_of(model.grid, x);
  const FittedPiece& piece = locate_piece(model, rank);
  return piece.theta.dot(apply_kernel(model.kernel, x));
}

Eigen::VectorXd predict_many(const FittedModel& model, const Eigen::MatrixXd& X) {
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = predict(model, X.row(i));
  return out;
}

double oracle_mse(const FittedModel& model, const Dataset& dataset) {
  if (!dataset.truth) throw std::invalid_argument("dataset has no truth vector");
  double total = 0.0;
  for (int i = 0; i < dataset.n(); ++i) {
    double diff = predict(model, dataset.features.row(i)) - (*dataset.truth)[i];
    total += diff * diff;
  }
  return total / dataset.n();
}

double empirical_risk(const FittedModel& model, const Dataset& dataset) {
  double total = 0.0;
  for (int i = 0; i < dataset.n(); ++i) {
    double diff = predict(model, dataset.features.row(i)) - dataset.labels[i];
    total += diff * diff;
  }
  return total / dataset.n();
}

double per_rect_err(const FittedModel& model, const Dataset& dataset, const RankRect& rect) {
  if (!dataset.truth) throw std::invalid_argument("dataset has no truth vector");
  double total = 0.0;
  for (int i = 0; i < dataset.n(); ++i) {
    std::vector<int> rank = rank_of(model.grid, dataset.features.row(i));
    if (!rect.contains(rank)) continue;
    double diff = predict(model, dataset.features.row(i)) - (*dataset.truth)[i];
    total += diff * diff;
  }
  return total;
}

}  // namespace segmerge
