#include <gtest/gtest.h>

#include "knotbound/alexander.hpp"
#include "knotbound/grid_homology.hpp"
#include "oracles.hpp"

using namespace knotbound;

namespace {

using Dims = std::map<Bigrading, long long>;

GridDiagram unknot2() { return GridDiagram::make({1, 0}, {0, 1}); }
GridDiagram unknot3() { return GridDiagram::make({0, 1, 2}, {1, 2, 0}); }
GridDiagram trefoil5() { return parse_grid("5\nX: 1 2 3 4 5\nO: 3 4 5 1 2\n"); }
GridDiagram figure8_6() { return parse_grid("6\nX: 5 6 4 3 1 2\nO: 1 3 2 5 4 6\n"); }

/// Product of two Poincare polynomials in (q, t) = (mu, A).
Dims times(const Dims& a, const Dims& b) {
  Dims out;
  for (const auto& [g, d] : a)
    for (const auto& [h, e] : b) out[{g.mu + h.mu, g.A + h.A}] += d * e;
  return out;
}

Dims blocked_factor(int copies) {
  Dims out{{{0, 0}, 1}};
  for (int i = 0; i < copies; ++i) out = times(out, Dims{{{0, 0}, 1}, {{-1, -1}, 1}});
  return out;
}

}  // namespace

TEST(GridHomology, UnknotTwo) {
  EXPECT_EQ(tilde_homology(unknot2()).dims, (Dims{{{0, 0}, 1}, {{-1, -1}, 1}}));
  EXPECT_EQ(grid_hfk_hat(unknot2()).cells(), (Dims{{{0, 0}, 1}}));
}

TEST(GridHomology, UnknotThree) {
  EXPECT_EQ(tilde_homology(unknot3()).dims, blocked_factor(2));
  EXPECT_EQ(tilde_homology(unknot3()).dims, oracle::tilde_homology(unknot3()));
}

TEST(GridHomology, FigureEightTilde) {
  const Dims hat{{{-1, -1}, 1}, {{0, 0}, 3}, {{1, 1}, 1}};
  TildeStats stats;
  const auto tilde = tilde_homology(figure8_6(), {}, &stats);
  EXPECT_EQ(stats.states, 720u);
  EXPECT_EQ(tilde.dims, times(hat, blocked_factor(5)));
  EXPECT_EQ(tilde.dims, oracle::tilde_homology(figure8_6()));
}

TEST(GridHomology, FigureEightHat) {
  EXPECT_EQ(grid_hfk_hat(figure8_6()).cells(),
            (Dims{{{-1, -1}, 1}, {{0, 0}, 3}, {{1, 1}, 1}}));
}

TEST(GridHomology, TrefoilAgainstOracle) {
  EXPECT_EQ(tilde_homology(trefoil5()).dims, oracle::tilde_homology(trefoil5()));
  const HfkTable hat = grid_hfk_hat(trefoil5());
  ASSERT_EQ(hat.total_dimension(), 3);
  std::set<int> diagonals;
  for (const auto& [g, d] : hat.cells()) {
    EXPECT_EQ(d, 1);
    diagonals.insert(g.mu - g.A);
  }
  EXPECT_EQ(diagonals.size(), 1u);
  const PDCode pd = parse_pd("X 6 3 1 4\nX 4 1 5 2\nX 2 5 3 6\n");
  EXPECT_EQ(euler_characteristic(hat), alexander_polynomial(pd));
}

TEST(GridHomology, AllSmallGridsAgreeWithOracle) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : oracle::all_knot_grids(n)) {
      ASSERT_EQ(tilde_homology(g).dims, oracle::tilde_homology(g)) << g.to_text();
    }
  }
}

TEST(GridHomology, ThreadCountDoesNotMatter) {
  const auto one = tilde_homology(figure8_6(), {.threads = 1});
  for (unsigned t : {2u, 4u, 0u}) {
    EXPECT_EQ(tilde_homology(figure8_6(), {.threads = t}).dims, one.dims) << t;
  }
}

TEST(GridHomology, TorusTranslationsGiveTheSameHat) {
  const GridDiagram g = figure8_6();
  const auto hat = grid_hfk_hat(g).cells();
  for (int s = 1; s < g.n; ++s) {
    EXPECT_EQ(grid_hfk_hat(g.rows_rotated(s)).cells(), hat);
    EXPECT_EQ(grid_hfk_hat(g.columns_rotated(s)).cells(), hat);
  }
}

TEST(GridHomology, OversizedGridHitsTheLimit) {
  EXPECT_THROW(tilde_homology(figure8_6(), {.max_grid = 5}), LimitError);
  std::vector<int> xs(13), os(13);
  for (int r = 0; r < 13; ++r) {
    xs[r] = r;
    os[r] = (r + 1) % 13;
  }
  EXPECT_THROW(tilde_homology(GridDiagram::make(xs, os), {.max_grid = 16}), LimitError);
}

TEST(GridHomology, IndivisibleDimensionsAreRejected) {
  BigradedDims bad;
  bad.n = 2;
  bad.dims = {{{0, 0}, 1}};
  EXPECT_THROW(tilde_to_hat(bad), NotDivisibleError);
  bad.dims = {{{0, 0}, 1}, {{-1, -1}, 2}};
  EXPECT_THROW(tilde_to_hat(bad), NotDivisibleError);
}
