#include "segmerge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "segmerge/eval.hpp"
#include "segmerge/solver.hpp"

namespace segmerge {

namespace {

// k^{1/d'} when k is a perfect d'-th power, else throws.
int grid_side(int k, int d_prime) {
  int side = static_cast<int>(std::llround(std::pow(double(k), 1.0 / d_prime)));
  for (int cand = std::max(1, side - 1); cand <= side + 1; ++cand) {
    long long p = 1;
    for (int c = 0; c < d_prime; ++c) p *= cand;
    if (p == k) return cand;
  }
  throw std::invalid_argument("k must be a perfect d_prime-th power");
}

// Recursive equal-count split: sort the index block by coordinate `coord`,
// cut into `per_axis` contiguous chunks (remainder to the lowest chunks),
// recurse on the next coordinate.
void assign_cells(const Eigen::MatrixXd& features, std::vector<int>& idx, int begin, int end,
                  int coord, int d_prime, int per_axis, int cell_base, int cell_stride,
                  std::vector<int>& cell) {
  std::sort(idx.begin() + begin, idx.begin() + end, [&](int a, int b) {
    double va = features(a, coord), vb = features(b, coord);
    return va < vb || (va == vb && a < b);
  });
  const int t = end - begin;
  int chunk = t / per_axis, rem = t % per_axis;
  int pos = begin;
  for (int j = 0; j < per_axis; ++j) {
    int size = chunk + (j < rem ? 1 : 0);
    int sub_begin = pos, sub_end = pos + size;
    pos = sub_end;
    int base = cell_base + j * cell_stride;
    if (coord + 1 < d_prime) {
      assign_cells(features, idx, sub_begin, sub_end, coord + 1, d_prime, per_axis, base,
                   cell_stride / per_axis, cell);
    } else {
      for (int i = sub_begin; i < sub_end; ++i) cell[idx[i]] = base;
    }
  }
}

}  // namespace

SyntheticData gen_synthetic(int n, int d, int d_prime, int k, const NoiseSpec& noise,
                            std::uint64_t seed, bool affine_truth) {
  if (n < 1 || d < d_prime || d_prime < 1 || k < 1)
    throw std::invalid_argument("bad synthetic parameters");
  const int per_axis = d_prime == 1 ? k : grid_side(k, d_prime);
  if (k > n) throw std::invalid_argument("k exceeds n");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SyntheticData out;
  out.k = k;
  out.dataset.d_prime = d_prime;
  out.dataset.features.resize(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out.dataset.features(i, j) = normal(rng);

  out.cell.assign(n, 0);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  int stride = 1;
  for (int c = 1; c < d_prime; ++c) stride *= per_axis;
  assign_cells(out.dataset.features, idx, 0, n, 0, d_prime, per_axis, 0, stride, out.cell);

  // Per-cell truth parameters, drawn in cell order.
  Eigen::VectorXd constants(k);
  Eigen::MatrixXd slopes;
  if (affine_truth) slopes.resize(k, d_prime);
  for (int c = 0; c < k; ++c) {
    constants[c] = unit(rng);
    if (affine_truth)
      for (int j = 0; j < d_prime; ++j) slopes(c, j) = 2.0 * unit(rng) - 1.0;
  }

  Eigen::VectorXd truth(n);
  for (int i = 0; i < n; ++i) {
    double v = constants[out.cell[i]];
    if (affine_truth)
      v += slopes.row(out.cell[i]).dot(out.dataset.features.row(i).head(d_prime));
    truth[i] = v;
  }

  std::mt19937_64 noise_rng(noise.seed);
  Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
  const double s = std::sqrt(noise.variance);
  if (noise.kind == NoiseKind::Gaussian) {
    std::normal_distribution<double> g(0.0, s);
    for (int i = 0; i < n; ++i) eps[i] = g(noise_rng);
  } else if (noise.kind == NoiseKind::Uniform) {
    const double half_width = std::sqrt(3.0 * noise.variance);
    std::uniform_real_distribution<double> u(-half_width, half_width);
    for (int i = 0; i < n; ++i) eps[i] = u(noise_rng);
  }

  out.dataset.labels = truth + eps;
  out.dataset.truth = std::move(truth);
  return out;
}

double true_fit_mse(const SyntheticData& data, Kernel kernel) {
  if (data.k < 1 || data.cell.size() != static_cast<size_t>(data.dataset.n()))
    throw std::invalid_argument("unknown cell assignment");
  const Dataset& ds = data.dataset;
  std::vector<std::vector<int>> members(data.k);
  for (int i = 0; i < ds.n(); ++i) members[data.cell[i]].push_back(i);

  double total = 0.0;
  for (int c = 0; c < data.k; ++c) {
    if (members[c].empty()) continue;
    Eigen::MatrixXd A = kernel_matrix(kernel, ds, members[c]);
    Eigen::VectorXd b(members[c].size());
    for (size_t i = 0; i < members[c].size(); ++i)
      b[static_cast<int>(i)] = ds.labels[members[c][i]];
    LsqResult lsq = least_squares(A, b);
    for (size_t i = 0; i < members[c].size(); ++i) {
      double pred = A.row(static_cast<int>(i)).dot(lsq.theta);
      double diff = pred - (*ds.truth)[members[c][i]];
      total += diff * diff;
    }
  }
  return total / ds.n();
}

}  // namespace segmerge
