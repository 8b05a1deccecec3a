#include <gtest/gtest.h>

#include <random>

#include "abdhom/lemmas.hpp"
#include "abdhom/random.hpp"

using namespace abdhom;

namespace {

HomModel fig1() { return HomModel(7, {{"p"}, {"p", "q"}, {"p", "q"}, {}, {"p", "q"}, {"p", "q"}, {"p", "q"}, {"q"}}); }
Formula fig3_formula() { return dB(!prop("p")) | dD(!prop("q")); }

struct Sample {
  Formula phi;
  HomModel m;
};

std::vector<Sample> random_samples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  while (out.size() < count) {
    Formula phi = random_formula(rng, 1 + rng() % 7, {"p", "q"});
    HomModel m = random_model(rng, rng() % 7, {"p", "q"});
    if (verify(m, phi)) out.push_back({phi, m});
  }
  return out;
}

}  // namespace

TEST(Shading, SinglePoint) {
  AtomSpace sp(pi());
  Compass c = from_model(sp, HomModel(0, {{}}));
  CompassAnalysis an(sp, c);
  Shading s = an.shading(0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].row, 0u);
  EXPECT_EQ(s[0].atom, c.at(0, 0));
  EXPECT_EQ(an.row_blueprint(0).size(), 1u);
}

TEST(Shading, Fig3ColumnFour) {
  AtomSpace sp(fig3_formula());
  Compass c = from_model(sp, fig1());
  CompassAnalysis an(sp, c);
  Shading s = an.shading(4);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.front().row, 4u);
  EXPECT_EQ(s.front().atom, c.at(4, 4));
  for (std::size_t i = 1; i < s.size(); ++i) {
    EXPECT_LT(s[i - 1].row, s[i].row);
    EXPECT_GT(sp.delta_up(s[i - 1].atom), sp.delta_up(s[i].atom));
  }
  EXPECT_TRUE(is_minimal_b_sequence(sp, an.shading_b(4)));
  EXPECT_TRUE(lemmas::b_irreflexive_at_growth(sp, c).empty());
}

TEST(ColumnEquiv, SelfAndDifferent) {
  AtomSpace sp(fig3_formula());
  Compass c = from_model(sp, fig1());
  CompassAnalysis an(sp, c);
  for (std::size_t x = 0; x <= c.n(); ++x) {
    EXPECT_TRUE(an.column_equiv(x, x));
    EXPECT_TRUE(shading_leq(an.shading(x), an.shading(x)));
    EXPECT_FALSE(shading_less(an.shading(x), an.shading(x)));
  }
  // Column 3 ({}) and column 4 ({p,q}) start from different point atoms.
  EXPECT_FALSE(an.column_equiv(3, 4));
  EXPECT_THROW(shading_leq(an.shading(3), an.shading(4)), std::invalid_argument);
}

TEST(Fingerprint, RightmostBaseAndModA) {
  AtomSpace sp(fig3_formula() | dA(prop("q")));
  Compass c = from_model(sp, fig1());
  CompassAnalysis an(sp, c);
  for (std::size_t y = 0; y <= c.n(); ++y) {
    EXPECT_TRUE(an.fingerprint(y, y).right.empty());
    EXPECT_FALSE(an.covered(y, y));
    EXPECT_TRUE(sp.equiv_mod_A(c.at(0, y), c.at(0, y)));
  }
  for (std::size_t y = 0; y <= c.n(); ++y)
    for (std::size_t x = 0; x <= y; ++x)
      for (std::size_t x2 = 0; x2 <= y; ++x2) {
        bool same = an.fingerprint(x, y) == an.fingerprint(x2, y);
        EXPECT_EQ(same, an.same_fingerprint(x, x2, y));
      }
}

TEST(EquivModA, IgnoresExactlyARequests) {
  // No D-formulas here, so letters, B-requests and alpha decide.
  Formula phi = dA(prop("p")) | prop("q");
  AtomSpace sp(phi);
  auto atoms = sp.enumerate();
  for (const auto& a : atoms)
    for (const auto& b : atoms) {
      bool expect = a.alpha == b.alpha && sp.props(a) == sp.props(b) && sp.req(a, Rel::B) == sp.req(b, Rel::B);
      EXPECT_EQ(sp.equiv_mod_A(a, b), expect) << sp.describe(a) << " / " << sp.describe(b);
    }
}

TEST(Witnesses, BlueprintLengthBounded) {
  for (const auto& s : random_samples(80, 31)) {
    AtomSpace sp(s.phi);
    Compass c = from_model(sp, s.m);
    CompassAnalysis an(sp, c);
    for (std::size_t y = 0; y <= c.n(); ++y) {
      std::set<std::size_t> ids;
      std::vector<Fingerprint> fps;
      for (std::size_t x = 0; x <= y; ++x) {
        Fingerprint fp = an.fingerprint(x, y);
        if (std::find(fps.begin(), fps.end(), fp) == fps.end()) fps.push_back(fp);
      }
      EXPECT_LE(an.row_blueprint(y).size(), y + 1);
      EXPECT_EQ(an.row_blueprint(y).size(), an.witnesses(y).size());
      EXPECT_TRUE(std::find(an.witnesses(y).begin(), an.witnesses(y).end(), y) != an.witnesses(y).end());
      std::size_t covered = 0;
      for (std::size_t x = 0; x <= y; ++x) covered += an.covered(x, y);
      EXPECT_EQ(covered + an.witnesses(y).size(), y + 1);
    }
  }
}

TEST(Lemmas, HoldOnRandomCompasses) {
  for (const auto& s : random_samples(150, 77)) {
    AtomSpace sp(s.phi);
    Compass c = from_model(sp, s.m);
    for (const auto& r : lemmas::check_all(sp, c))
      EXPECT_TRUE(r.failures.empty()) << r.name << ": " << r.failures.front() << " for " << to_string(s.phi);
  }
}

TEST(Lemmas, DetectBrokenShadings) {
  // A hand-built column whose Delta-up goes back up is reported.
  AtomSpace sp(dB(prop("q")));
  Compass c = from_model(sp, HomModel(2, {{"q"}, {}, {}}));
  c.at(0, 2) = c.at(0, 0);
  CompassAnalysis an(sp, c);
  EXPECT_FALSE(lemmas::delta_non_increasing(an).empty());
}

TEST(Contract, Guards) {
  AtomSpace sp(global(prop("p")));
  Compass c = from_model(sp, HomModel(3, {{"p"}, {"p"}, {"p"}, {"p"}}));
  EXPECT_THROW(contract(sp, c, 1, 1), std::invalid_argument);
  EXPECT_THROW(contract(sp, c, 2, 1), std::invalid_argument);
  EXPECT_THROW(contract(sp, c, 1, 4), std::invalid_argument);
}

TEST(Contract, PaddedModelsShrinkAndValidate) {
  std::mt19937_64 rng(9);
  const std::vector<std::string> al{"p", "q"};
  std::size_t repetitions = 0;
  for (const char* text : {"[G] p", "<B> !p & <D> q", "[D] (p | q) & <A> !p", "<D> (p & <A> q)", "[B] (pi -> p) & <D> q"}) {
    Formula phi = parse(text);
    AtomSpace sp(phi);
    for (int it = 0; it < 60; ++it) {
      HomModel m = random_padded_model(rng, al, 3, 2, 6);
      if (!verify(m, phi)) continue;
      Compass c = from_model(sp, m);
      CompassAnalysis an(sp, c);
      for (auto [y, y2] : an.repetitions()) {
        ++repetitions;
        EXPECT_EQ(an.row_blueprint(y), an.row_blueprint(y2));
        Compass d = contract(sp, c, y, y2);
        EXPECT_EQ(d.n(), c.n() - (y2 - y));
        EXPECT_TRUE(validate(sp, d).empty()) << text << " rows " << y << "," << y2;
        EXPECT_TRUE(verify(to_model(sp, d, false), phi));
      }
    }
  }
  EXPECT_GE(repetitions, 20u);
}
