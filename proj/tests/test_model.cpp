#include <doctest.h>

#include "segmerge/grid.hpp"
#include "segmerge/types.hpp"
#include "support/helpers.hpp"

using namespace segmerge;
using testing::dataset_1d;

TEST_CASE("kernel names round-trip") {
  for (Kernel k : {Kernel::Constant, Kernel::Identity, Kernel::Affine})
    CHECK(kernel_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(kernel_from_string("cubic"), std::invalid_argument);
  CHECK(kernel_dim(Kernel::Constant, 7) == 1);
  CHECK(kernel_dim(Kernel::Identity, 7) == 7);
  CHECK(kernel_dim(Kernel::Affine, 7) == 8);
}

TEST_CASE("dataset validation") {
  Dataset ds = dataset_1d({0.1, 0.2}, {1.0, 2.0});
  CHECK_NOTHROW(ds.validate());
  ds.d_prime = 2;
  CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
  ds.d_prime = 1;
  ds.truth = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
}

TEST_CASE("rank_of counts boundary values strictly below, clamped") {
  Dataset ds = dataset_1d({0.1, 0.3, 0.5, 0.7}, {0, 0, 0, 0});
  Grid grid = build_grid(ds);
  Eigen::VectorXd x(1);
  x << 0.5;
  CHECK(rank_of(grid, x) == std::vector<int>{2});
  x << -1.0;
  CHECK(rank_of(grid, x) == std::vector<int>{0});
  x << 99.0;
  CHECK(rank_of(grid, x) == std::vector<int>{grid.n_padded - 1});
}

TEST_CASE("rank rect alignment and containment") {
  RankRect r = RankRect::cube({2, 4}, 2);
  CHECK(r.aligned());
  CHECK(r.cells() == 4);
  CHECK(r.contains(std::vector<int>{3, 5}));
  CHECK(!r.contains(std::vector<int>{1, 5}));
  RankRect bad;
  bad.lo = {1};
  bad.hi = {3};  // size 2 but offset 1: misaligned
  CHECK(!bad.aligned());
}
