#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "segmerge/eval.hpp"
#include "segmerge/merge.hpp"
#include "segmerge/synth.hpp"
#include "support/helpers.hpp"

using namespace segmerge;
using testing::dataset_1d;
using testing::fit_model;
using testing::random_dataset;

TEST_CASE("regularized_error") {
  FittedPiece p;
  p.sse = 0;
  p.count = 3;
  CHECK(regularized_error(p, 0.0) == 0.0);
  p.sse = 10;
  p.count = 4;
  CHECK(regularized_error(p, 1.0) == doctest::Approx(6.0));
  p.sse = 2;
  p.count = 8;
  CHECK(regularized_error(p, 1.0) == doctest::Approx(-6.0));
}

TEST_CASE("default_stop_count") {
  CHECK(default_stop_count(3, 8, 1) == 9);        // 3 * ceil(log2 8)^1
  CHECK(default_stop_count(2, 8000, 2) == 338);   // 2 * 13^2
}

TEST_CASE("sibling_groups") {
  SUBCASE("root leaf yields nothing") {
    TreeNode root;
    root.rect = RankRect::cube({0}, 1);
    CHECK(sibling_groups(root).empty());
  }
  SUBCASE("depth-1 binary tree yields one group") {
    Dataset ds = dataset_1d({0.0, 1.0}, {0.0, 1.0});
    Grid grid = build_grid(ds);
    auto root = build_tree(grid, ds);
    auto groups = sibling_groups(*root);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0] == root.get());
    CHECK(groups[0]->children.size() == 2);
  }
  SUBCASE("pruned fourth child leaves a group of three") {
    TreeNode root;
    root.rect = RankRect::cube({0, 0}, 2);
    root.level = 1;
    for (int lo0 : {0, 1})
      for (int lo1 : {0, 1}) {
        if (lo0 == 1 && lo1 == 1) continue;
        auto child = std::make_unique<TreeNode>();
        child->rect = RankRect::cube({lo0, lo1}, 1);
        child->level = 0;
        root.children.push_back(std::move(child));
      }
    auto groups = sibling_groups(root);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0]->children.size() == 3);
  }
  SUBCASE("canonical pre-order over a deeper tree") {
    Dataset ds = dataset_1d({0, 1, 2, 3, 4, 5, 6, 7}, {0, 0, 0, 0, 0, 0, 0, 0});
    Grid grid = build_grid(ds);
    auto root = build_tree(grid, ds);
    auto groups = sibling_groups(*root);
    REQUIRE(groups.size() == 4);
    for (size_t i = 0; i + 1 < groups.size(); ++i)
      CHECK(groups[i]->rect.lo[0] < groups[i + 1]->rect.lo[0]);
  }
}

TEST_CASE("greedy_merge: stop_count at least |S| merges nothing") {
  Dataset ds = dataset_1d({0.1, 0.2, 0.3, 0.4}, {5, 1, 9, 3});
  FittedModel m = fit_model(ds, Kernel::Constant, 0.0, 100);
  CHECK(m.pieces.size() == 4);  // initial singleton leaves survive
  for (const auto& p : m.pieces) CHECK(p.count == 1);
  CHECK(empirical_risk(m, ds) == doctest::Approx(0.0));
}

TEST_CASE("greedy_merge: two-constant hand trace, stop_count=1") {
  // Eight sorted samples, truth a,a,a,a,b,b,b,b, no noise. Within-side
  // merges are (numerically almost) free while the one cross-boundary
  // merge would cost n * (a-b)^2 / 4, so no output piece ever straddles
  // the jump and the fit is exact. The exact partition depends on how
  // sub-1e-28 rounding crumbs order the zero-error ties, so only the
  // stable facts are pinned here.
  const double a = 1.0, b = 5.0;
  Dataset ds = dataset_1d({0, 1, 2, 3, 4, 5, 6, 7}, {a, a, a, a, b, b, b, b});
  MergeTrace trace;
  FittedModel m = fit_model(ds, Kernel::Constant, 0.0, 1, &trace);

  CHECK(m.pieces.size() >= 2);
  CHECK(m.pieces.size() <= 4);
  CHECK(empirical_risk(m, ds) == doctest::Approx(0.0));
  for (const auto& p : m.pieces) {
    CHECK((p.rect.hi[0] <= 4 || p.rect.lo[0] >= 4));
    double want = p.rect.lo[0] < 4 ? a : b;
    CHECK(p.theta[0] == doctest::Approx(want));
  }

  // every candidate ever scored also stayed on one side of the jump
  for (const auto& round : trace)
    for (const auto& g : round) {
      CHECK((g.rect.hi[0] <= 4 || g.rect.lo[0] >= 4));
      CHECK(g.reg_err == doctest::Approx(0.0));
    }
  Grid grid = build_grid(ds);
  auto root = build_tree(grid, ds);
  FittedPiece cross = fit_rectangle(*root, ds, Kernel::Constant);
  CHECK(regularized_error(cross, 0.0) == doctest::Approx(8 * (a - b) * (a - b) / 4));
}

TEST_CASE("piece_count_bound formula and invariant") {
  CHECK(piece_count_bound(8, 1, 2) == 20);
  CHECK(piece_count_bound(2, 1, 1) == 6);

  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    for (int stop : {1, 2, 5}) {
      Dataset ds = random_dataset(64, 3, 2, seed);
      FittedModel m = fit_model(ds, Kernel::Affine, 1.0, stop);
      CHECK(static_cast<long long>(m.pieces.size()) <=
            piece_count_bound(m.grid.n_padded, 2, stop));
    }
  }
}

TEST_CASE("trace invariants: monotone leaf counts and fit refinement") {
  Dataset ds = random_dataset(200, 2, 1, 9);
  MergeTrace trace;
  FittedModel m = fit_model(ds, Kernel::Constant, 1.0, 3, &trace);
  REQUIRE(!trace.empty());
  size_t prev_groups = trace.front().size() + 1;
  for (const auto& round : trace) {
    CHECK(round.size() >= 3);  // loop guard: |S| >= stop_count
    CHECK(round.size() <= prev_groups);
    prev_groups = round.size();
    int retained = 0;
    for (const auto& g : round) {
      // merging coarsens: the union fit cannot beat its children combined
      CHECK(g.sse >= g.child_sse_sum - 1e-9 * (1.0 + g.sse));
      if (!g.merged) ++retained;
    }
    CHECK(retained == 3);
  }
  CHECK(static_cast<long long>(m.pieces.size()) <= piece_count_bound(256, 1, 3));
}

TEST_CASE("greedy_merge is deterministic") {
  Dataset ds = random_dataset(150, 4, 2, 77);
  FittedModel m1 = fit_model(ds, Kernel::Affine, 1.0, 4);
  FittedModel m2 = fit_model(ds, Kernel::Affine, 1.0, 4);
  REQUIRE(m1.pieces.size() == m2.pieces.size());
  for (size_t i = 0; i < m1.pieces.size(); ++i) {
    CHECK(m1.pieces[i].rect == m2.pieces[i].rect);
    CHECK(m1.pieces[i].theta == m2.pieces[i].theta);
    CHECK(m1.pieces[i].sse == m2.pieces[i].sse);
  }
}

TEST_CASE("pieces tile the occupied cells disjointly") {
  Dataset ds = random_dataset(100, 2, 2, 5);
  Grid grid = build_grid(ds);
  FittedModel m = fit_model(ds, Kernel::Constant, 1.0, 2);
  int covered = 0;
  for (const auto& p : m.pieces) {
    CHECK(p.rect.aligned());
    covered += p.count;
  }
  CHECK(covered == ds.n());
  for (size_t i = 0; i < m.pieces.size(); ++i)
    for (size_t j = i + 1; j < m.pieces.size(); ++j) {
      bool disjoint = false;
      for (int c = 0; c < 2; ++c)
        disjoint = disjoint || m.pieces[i].rect.hi[c] <= m.pieces[j].rect.lo[c] ||
                   m.pieces[j].rect.hi[c] <= m.pieces[i].rect.lo[c];
      CHECK(disjoint);
    }
  (void)grid;
}

TEST_CASE("estimate_sigma lands near the truth on noisy constants") {
  SyntheticData syn = gen_synthetic(2000, 2, 1, 4, NoiseSpec::gaussian(1.0, 11), 11, false);
  Grid grid = build_grid(syn.dataset);
  auto root = build_tree(grid, syn.dataset);
  double s = estimate_sigma(*root, syn.dataset, Kernel::Constant);
  CHECK(s > 0.25);
  CHECK(s < 2.5);
}
