#include <gtest/gtest.h>

#include <random>

#include "abdhom/solver.hpp"
#include "abdhom/tiling.hpp"

using namespace abdhom;

namespace {

TilingInstance positive() { return make_instance(1, 1, {{0, 0}, {1, 1}}, {{0, 1}}); }

std::set<std::string> letter_set(const Formula& f) {
  auto ls = letters(f);
  return {ls.begin(), ls.end()};
}

}  // namespace

TEST(Instance, Validation) {
  EXPECT_THROW(make_instance(1, 0, {}, {}), std::invalid_argument);
  EXPECT_THROW(make_instance(1, 1, {{0, 2}}, {}), std::invalid_argument);
  TilingInstance bad{1, 2, {}, {}};
  EXPECT_THROW(bad.check(), std::invalid_argument);
  EXPECT_THROW(generate_formula(bad), std::invalid_argument);
  EXPECT_EQ(make_instance(1, 3, {}, {}).C, 7u);
  EXPECT_EQ(make_instance(1, 3, {}, {}).bits(), 3u);
}

TEST(PointMap, Bijection) {
  TilingInstance t = make_instance(2, 2, {}, {});
  for (std::size_t n = 0; n < 40; ++n) {
    auto [x, y] = unmap_point(t, n);
    EXPECT_LT(y, t.C + 1);
    EXPECT_EQ(map_point(t, x, y), n);
  }
  EXPECT_EQ(map_point(t, 2, 3), 11u);
}

TEST(Generate, Alphabet) {
  EXPECT_EQ(letter_set(generate_formula(make_instance(0, 1, {{0, 0}}, {{0, 0}}))),
            (std::set<std::string>{"t0", "b1", prefix_letter()}));
  auto ls = letter_set(generate_formula(make_instance(1, 2, {{0, 0}}, {{0, 1}})));
  EXPECT_TRUE(ls.count("b1"));
  EXPECT_TRUE(ls.count("b2"));
  EXPECT_FALSE(ls.count("b3"));
}

TEST(Generate, SizeMonotone) {
  std::size_t last = 0;
  for (std::size_t tmax = 0; tmax <= 3; ++tmax) {
    std::size_t s = size_metric(generate_formula(make_instance(tmax, 1, {}, {})));
    EXPECT_GT(s, last);
    last = s;
  }
  last = 0;
  for (std::size_t c = 1; c <= 4; ++c) {
    std::size_t s = size_metric(generate_formula(make_instance(1, c, {}, {})));
    EXPECT_GT(s, last);
    last = s;
  }
}

TEST(Oracle, Examples) {
  auto g = solve_tiling(positive(), 3, 3);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->prefix, 0u);
  EXPECT_EQ(g->period, 1u);
  EXPECT_EQ(g->columns, (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}}));
  EXPECT_TRUE(grid_violations(positive(), *g).empty());
  EXPECT_FALSE(solve_tiling(make_instance(1, 1, {{0, 0}, {1, 1}}, {}), 3, 3));
  EXPECT_FALSE(solve_tiling(make_instance(1, 1, {}, {{0, 1}}), 3, 3));
}

TEST(Oracle, NeedsLongerPeriod) {
  // Middle rows swap 1 and 2 at every step, so no column equals its neighbour.
  TilingInstance t = make_instance(3, 2, {{0, 0}, {3, 3}, {1, 2}, {2, 1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {2, 1}, {1, 3}});
  auto g = solve_tiling(t, 3, 3);
  ASSERT_TRUE(g);
  EXPECT_TRUE(grid_violations(t, *g).empty());
  EXPECT_FALSE(solve_tiling(t, 3, 1));
  EXPECT_EQ(g->period, 2u);
}

TEST(GridViolations, Reports) {
  TileGrid g{{{0, 1}, {1, 1}}, 0, 1};
  auto v = grid_violations(positive(), g);
  EXPECT_FALSE(v.empty());
  TileGrid w{{{0, 1}}, 0, 1};
  EXPECT_FALSE(grid_violations(positive(), w).empty());
}

TEST(Encode, HandBuiltModelSatisfiesFormula) {
  TilingInstance t = positive();
  TileGrid g{{{0, 1}, {0, 1}}, 0, 1};
  HomModel m = encode_grid(t, g);
  EXPECT_EQ(m.n, 3u);
  EXPECT_EQ(m.points[0], (std::set<std::string>{"t0", prefix_letter()}));
  EXPECT_EQ(m.points[1], (std::set<std::string>{"t1", "b1", prefix_letter()}));
  EXPECT_EQ(m.points[3], (std::set<std::string>{"t1", "b1"}));
  EXPECT_TRUE(verify(m, generate_formula(t)));
  EXPECT_EQ(decode_model(m, t), g);
  // A grid breaking the vertical relation does not satisfy the formula.
  TilingInstance nov = make_instance(1, 1, {{0, 0}, {1, 1}}, {});
  EXPECT_FALSE(verify(m, generate_formula(nov)));
}

TEST(Decode, Errors) {
  TilingInstance t = positive();
  HomModel two(3, {{"t0", "t1"}, {"t1", "b1"}, {"t0"}, {"t1", "b1"}});
  EXPECT_THROW(decode_model(two, t), std::invalid_argument);
  HomModel row(3, {{"t0", "b1"}, {"t1", "b1"}, {"t0"}, {"t1", "b1"}});
  EXPECT_THROW(decode_model(row, t), std::invalid_argument);
  HomModel odd(2, {{"t0"}, {"t1", "b1"}, {"t0"}});
  EXPECT_THROW(decode_model(odd, t), std::invalid_argument);
  HomModel bit0(3, {{"t0"}, {"t1", "b1"}, {"t0"}, {"t1", "b1"}});
  EXPECT_EQ(decode_model(bit0, t).tile(0, 0), 0u);
}

TEST(Reduction, SolverModelsDecodeAndCountRows) {
  TilingInstance t = positive();
  SolveOptions opt;
  opt.cap = 12;
  SolveResult r = solve(generate_formula(t), opt);
  ASSERT_EQ(r.verdict, Verdict::Sat);
  EXPECT_EQ(r.model->n % (t.C + 1), t.C);
  TileGrid g = decode_model(*r.model, t);
  EXPECT_TRUE(grid_violations(t, g).empty());
  // Counter: row y+1 follows row y inside a column, 0 follows C.
  for (std::size_t n = 0; n < r.model->n; ++n) {
    std::size_t a = r.model->points[n].count("b1"), b = r.model->points[n + 1].count("b1");
    EXPECT_NE(a, b);
  }
}

TEST(Reduction, TinyFamilyAgreesWithOracle) {
  // T <= 2, c = 1: every instance over a few relation choices.
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    std::size_t tmax = rng() % 3;
    std::set<std::pair<std::size_t, std::size_t>> h, v;
    for (std::size_t i = 0; i <= tmax; ++i)
      for (std::size_t j = 0; j <= tmax; ++j) {
        if (rng() % 2) h.insert({i, j});
        if (rng() % 2) v.insert({i, j});
      }
    TilingInstance t = make_instance(tmax, 1, h, v);
    SolveOptions opt;
    opt.cap = 11;
    SolveResult r = solve(generate_formula(t), opt);
    ASSERT_NE(r.verdict, Verdict::Unknown);
    EXPECT_EQ(r.verdict == Verdict::Sat, solve_tiling(t, 0, 5).has_value());
    if (r.model) EXPECT_TRUE(grid_violations(t, decode_model(*r.model, t)).empty());
  }
}
