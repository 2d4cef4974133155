#include "segmerge/solver.hpp"

#include <stdexcept>

namespace segmerge {

Eigen::VectorXd apply_kernel(Kernel kernel, const Eigen::Ref<const Eigen::VectorXd>& x) {
  switch (kernel) {
    case Kernel::Constant:
      return Eigen::VectorXd::Ones(1);
    case Kernel::Identity:
      return x;
    case Kernel::Affine: {
      Eigen::VectorXd out(x.size() + 1);
      out.head(x.size()) = x;
      out[x.size()] = 1.0;
      return out;
    }
  }
  throw std::logic_error("unknown kernel");
}

Eigen::MatrixXd kernel_matrix(Kernel kernel, const Dataset& dataset,
                              const std::vector<int>& samples) {
  const int t = static_cast<int>(samples.size());
  const int d = dataset.dim();
  const int m = kernel_dim(kernel, d);
  Eigen::MatrixXd A(t, m);
  switch (kernel) {
    case Kernel::Constant:
      A.setOnes();
      break;
    case Kernel::Identity:
      for (int i = 0; i < t; ++i) A.row(i) = dataset.features.row(samples[i]);
      break;
    case Kernel::Affine:
      for (int i = 0; i < t; ++i) {
        A.block(i, 0, 1, d) = dataset.features.row(samples[i]);
        A(i, d) = 1.0;
      }
      break;
  }
  return A;
}

LsqResult least_squares(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels) {
  if (features.rows() != labels.size())
    throw std::invalid_argument("features/labels row mismatch");
  const auto m = features.cols();
  if (features.rows() == 0)
    return LsqResult{Eigen::VectorXd::Zero(m), 0.0, 0};

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(kRankRtol);
  cod.compute(features);
  LsqResult result;
  result.theta = cod.solve(labels);
  result.effective_rank = static_cast<int>(cod.rank());
  result.sse = (labels - features * result.theta).squaredNorm();
  return result;
}

FittedPiece fit_samples(const RankRect& rect, int level, const std::vector<int>& samples,
                        const Dataset& dataset, Kernel kernel) {
  FittedPiece piece;
  piece.rect = rect;
  piece.level = level;
  piece.count = static_cast<int>(samples.size());
  if (samples.empty()) {
    piece.theta = Eigen::VectorXd::Zero(kernel_dim(kernel, dataset.dim()));
    return piece;
  }
  if (kernel == Kernel::Constant) {
    // closed form: the least-squares constant is the mean
    double sum = 0;
    for (int s : samples) sum += dataset.labels[s];
    const double mean = sum / piece.count;
    double sse = 0;
    for (int s : samples) {
      const double r = dataset.labels[s] - mean;
      sse += r * r;
    }
    piece.theta = Eigen::VectorXd::Constant(1, mean);
    piece.sse = sse;
    piece.effective_rank = 1;
    return piece;
  }
  Eigen::MatrixXd A = kernel_matrix(kernel, dataset, samples);
  Eigen::VectorXd b(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) b[static_cast<int>(i)] = dataset.labels[samples[i]];
  LsqResult lsq = least_squares(A, b);
  piece.theta = std::move(lsq.theta);
  piece.sse = lsq.sse;
  piece.effective_rank = lsq.effective_rank;
  return piece;
}

FittedPiece fit_rectangle(const TreeNode& node, const Dataset& dataset, Kernel kernel) {
  return fit_samples(node.rect, node.level, node.samples, dataset, kernel);
}

}  // namespace segmerge
