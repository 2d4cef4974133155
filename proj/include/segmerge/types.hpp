#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace segmerge {

// Feature map applied before each per-piece linear fit.
enum class Kernel { Constant, Identity, Affine };

int kernel_dim(Kernel kernel, int d);
Kernel kernel_from_string(const std::string& name);
std::string to_string(Kernel kernel);

enum class NoiseKind { Gaussian, Uniform, None };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Gaussian;
  double variance_proxy = 1.0;  // sub-Gaussian proxy, >= variance
  double variance = 1.0;        // actual noise variance
  std::uint64_t seed = 0;

  static NoiseSpec gaussian(double s2, std::uint64_t seed);
  static NoiseSpec uniform(double s2, std::uint64_t seed);
  static NoiseSpec none();
};

struct Dataset {
  Eigen::MatrixXd features;  // n x d, row i is sample i
  Eigen::VectorXd labels;    // n
  int d_prime = 1;           // first d_prime coordinates locate the piece
  std::optional<Eigen::VectorXd> truth;  // noiseless values, when known

  int n() const { return static_cast<int>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }
  void validate() const;  // throws std::invalid_argument
};

// Axis-aligned box of half-open rank ranges [lo_c, hi_c). Sides are powers
// of two and lo_c is aligned to the side length in that coordinate. Tree
// rectangles additionally have equal sides in every coordinate.
struct RankRect {
  std::vector<int> lo, hi;

  int dims() const { return static_cast<int>(lo.size()); }
  int side(int c) const { return hi[c] - lo[c]; }
  bool contains(const std::vector<int>& rank) const;
  bool contains(const RankRect& other) const;
  long long cells() const;
  bool aligned() const;  // power-of-two sides, aligned offsets
  bool operator==(const RankRect& other) const = default;

  static RankRect cube(const std::vector<int>& lo, int side);
};

// Data-dependent grid: per-coordinate sorted sample values, padded to a
// power of two by repeating the maximum. sample_ranks holds each sample's
// tie-broken sorted position per coordinate (empty for loaded models).
struct Grid {
  int n_padded = 0;
  int levels = 0;  // log2(n_padded)
  int d_prime = 0;
  std::vector<std::vector<double>> boundaries;   // d_prime x n_padded
  std::vector<std::vector<int>> sample_ranks;    // n x d_prime
};

// Rank cell of a query point: per coordinate, the number of boundary values
// strictly below x_c, clamped to [0, n_padded - 1].
std::vector<int> rank_of(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& x);

struct FittedPiece {
  RankRect rect;
  int level = 0;
  Eigen::VectorXd theta;
  double sse = 0.0;
  int count = 0;
  int effective_rank = 0;
};

struct FittedModel {
  Grid grid;
  Kernel kernel = Kernel::Affine;
  int d = 0;  // feature count expected by predict
  std::vector<FittedPiece> pieces;  // canonical pre-order, pairwise disjoint
  std::string fallback = "chebyshev-nearest";
};

}  // namespace segmerge
