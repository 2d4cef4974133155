#include "segmerge/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace segmerge {

int kernel_dim(Kernel kernel, int d) {
  switch (kernel) {
    case Kernel::Constant: return 1;
    case Kernel::Identity: return d;
    case Kernel::Affine: return d + 1;
  }
  throw std::logic_error("unknown kernel");
}

Kernel kernel_from_string(const std::string& name) {
  if (name == "constant") return Kernel::Constant;
  if (name == "identity") return Kernel::Identity;
  if (name == "affine") return Kernel::Affine;
  throw std::invalid_argument("unknown kernel: " + name);
}

std::string to_string(Kernel kernel) {
  switch (kernel) {
    case Kernel::Constant: return "constant";
    case Kernel::Identity: return "identity";
    case Kernel::Affine: return "affine";
  }
  return "?";
}

NoiseSpec NoiseSpec::gaussian(double s2, std::uint64_t seed) {
  return NoiseSpec{NoiseKind::Gaussian, s2, s2, seed};
}

NoiseSpec NoiseSpec::uniform(double s2, std::uint64_t seed) {
  return NoiseSpec{NoiseKind::Uniform, s2, s2, seed};
}

NoiseSpec NoiseSpec::none() { return NoiseSpec{NoiseKind::None, 0.0, 0.0, 0}; }

void Dataset::validate() const {
  if (n() < 1) throw std::invalid_argument("dataset is empty");
  if (d_prime < 1 || d_prime > dim())
    throw std::invalid_argument("need 1 <= d_prime <= d");
  if (labels.size() != n()) throw std::invalid_argument("labels length != n");
  if (truth && truth->size() != n()) throw std::invalid_argument("truth length != n");
}

bool RankRect::contains(const std::vector<int>& rank) const {
  for (int c = 0; c < dims(); ++c)
    if (rank[c] < lo[c] || rank[c] >= hi[c]) return false;
  return true;
}

bool RankRect::contains(const RankRect& other) const {
  for (int c = 0; c < dims(); ++c)
    if (other.lo[c] < lo[c] || other.hi[c] > hi[c]) return false;
  return true;
}

long long RankRect::cells() const {
  long long total = 1;
  for (int c = 0; c < dims(); ++c) total *= side(c);
  return total;
}

bool RankRect::aligned() const {
  for (int c = 0; c < dims(); ++c) {
    int s = side(c);
    if (s <= 0 || (s & (s - 1)) != 0) return false;
    if (lo[c] % s != 0) return false;
  }
  return true;
}

RankRect RankRect::cube(const std::vector<int>& lo, int side) {
  RankRect r;
  r.lo = lo;
  r.hi = lo;
  for (auto& h : r.hi) h += side;
  return r;
}

std::vector<int> rank_of(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() < grid.d_prime) throw std::invalid_argument("query shorter than d_prime");
  std::vector<int> rank(grid.d_prime);
  for (int c = 0; c < grid.d_prime; ++c) {
    const auto& b = grid.boundaries[c];
    auto it = std::lower_bound(b.begin(), b.end(), x[c]);
    int r = static_cast<int>(it - b.begin());
    rank[c] = std::clamp(r, 0, grid.n_padded - 1);
  }
  return rank;
}

}  // namespace segmerge
