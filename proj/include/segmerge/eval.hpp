#pragma once

#include <Eigen/Dense>

#include "segmerge/types.hpp"

namespace segmerge {

// Piecewise prediction. Queries landing in a rank cell covered by no piece
// (pruned empty region) fall back to the piece under the smallest dyadic
// ancestor that holds one, nearest in rank-space Chebyshev distance, ties
// to the lowest canonical index.
double predict(const FittedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

Eigen::VectorXd predict_many(const FittedModel& model, const Eigen::MatrixXd& X);

// Mean squared prediction error against the noiseless truth.
double oracle_mse(const FittedModel& model, const Dataset& dataset);

// Mean squared prediction error against the observed labels.
double empirical_risk(const FittedModel& model, const Dataset& dataset);

// Sum of squared prediction-truth gaps over the samples whose rank cell
// lies in rect.
double per_rect_err(const FittedModel& model, const Dataset& dataset, const RankRect& rect);

}  // namespace segmerge
