#include <gtest/gtest.h>

#include <random>

#include "abdhom/atoms.hpp"
#include "abdhom/random.hpp"

using namespace abdhom;

namespace {

HomModel fig1() { return HomModel(7, {{"p"}, {"p", "q"}, {"p", "q"}, {}, {"p", "q"}, {"p", "q"}, {"p", "q"}, {"q"}}); }
Formula fig3_formula() { return dB(!prop("p")) | dD(!prop("q")); }

bool contains(const std::vector<Formula>& fs, const Formula& f) { return std::find(fs.begin(), fs.end(), f) != fs.end(); }

}  // namespace

TEST(Enumerate, SingleLetterHasFourAtoms) {
  AtomSpace sp(prop("p"));
  auto atoms = sp.enumerate();
  EXPECT_EQ(atoms.size(), 4u);
  for (const auto& a : atoms) EXPECT_TRUE(sp.is_atom(a));
}

TEST(Enumerate, PendingInitialAtomsRequestA) {
  Formula phi = dA(prop("p"));
  AtomSpace sp(phi);
  std::size_t seen = 0;
  for (const auto& a : sp.enumerate()) {
    if (!sp.is_initial(a) || a.alpha[0] != AStatus::Pending) continue;
    ++seen;
    EXPECT_TRUE(sp.holds(a, phi));
    EXPECT_TRUE(sp.holds(a, !prop("p")));
  }
  EXPECT_GT(seen, 0u);
}

TEST(Enumerate, ExactlyTheAtoms) {
  // Compare constraint-driven enumeration with filtering every raw (F, alpha).
  std::mt19937_64 rng(2);
  for (int it = 0; it < 40; ++it) {
    Formula phi = random_formula(rng, 1 + rng() % 5, {"p", "q"});
    AtomSpace sp(phi);
    auto atoms = sp.enumerate();
    std::set<std::pair<std::vector<bool>, std::string>> listed;
    for (const auto& a : atoms) {
      ASSERT_TRUE(sp.is_atom(a)) << sp.describe(a);
      std::vector<bool> f;
      for (std::size_t i = 0; i < a.f.size(); ++i) f.push_back(a.f.test(i));
      listed.insert({f, sp.alpha_string(a)});
    }
    EXPECT_EQ(listed.size(), atoms.size());
    const std::size_t pairs = sp.closure().pair_count(), k = sp.tfa_size();
    if (pairs > 14) continue;
    std::size_t count = 0;
    std::size_t combos = 1;
    for (std::size_t j = 0; j < k; ++j) combos *= 3;
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask)
      for (std::size_t c = 0; c < combos; ++c) {
        Atom a{Bits(pairs), std::vector<AStatus>(k)};
        for (std::size_t i = 0; i < pairs; ++i) a.f.set(i, mask >> i & 1u);
        std::size_t v = c;
        for (std::size_t j = 0; j < k; ++j, v /= 3) a.alpha[j] = static_cast<AStatus>(v % 3);
        count += sp.is_atom(a);
      }
    EXPECT_EQ(count, atoms.size()) << to_string(phi);
    EXPECT_LE(atoms.size(), std::size_t{1} << (2 * size_metric(phi)));
  }
}

TEST(Requests, Fig3Cells) {
  AtomSpace sp(fig3_formula());
  HomModel m = fig1();
  Atom a03 = sp.atom_of(m, {0, 3});
  Formula p = prop("p"), q = prop("q");
  EXPECT_TRUE(sp.holds(a03, !p));
  EXPECT_TRUE(sp.holds(a03, !q));
  EXPECT_TRUE(sp.holds(a03, dB(top())));
  EXPECT_TRUE(sp.holds(a03, bB(p)));
  EXPECT_TRUE(sp.holds(a03, bD(q)));
  EXPECT_TRUE(contains(sp.box_formulas(a03, Rel::B), p));
  EXPECT_FALSE(sp.is_b_reflexive(a03));
  EXPECT_FALSE(sp.is_d_reflexive(a03));

  Atom a02 = sp.atom_of(m, {0, 2});
  EXPECT_TRUE(contains(sp.box_formulas(a02, Rel::B), p));
  EXPECT_TRUE(sp.is_b_reflexive(a02));
  EXPECT_FALSE(sp.is_d_reflexive(a02));

  Atom a46 = sp.atom_of(m, {4, 6});
  EXPECT_TRUE(sp.is_b_reflexive(a46));
  EXPECT_TRUE(sp.is_d_reflexive(a46));

  Atom a47 = sp.atom_of(m, {4, 7});
  EXPECT_FALSE(sp.is_b_reflexive(a47));
  EXPECT_TRUE(sp.is_d_reflexive(a47));
  EXPECT_TRUE(sp.b_step(a47, a46));

  EXPECT_TRUE(sp.d_step(a03, sp.atom_of(m, {1, 2})));
}

TEST(Requests, PartitionOfArguments) {
  AtomSpace sp(fig3_formula());
  for (const auto& a : sp.enumerate())
    for (Rel r : {Rel::A, Rel::B, Rel::D}) {
      Bits rq = sp.req(a, r), bx = sp.box(a, r);
      EXPECT_TRUE((rq & bx).none());
      EXPECT_EQ((rq | bx).count(), sp.arity(r));
    }
  AtomSpace nod(dB(prop("p")));
  for (const auto& a : nod.enumerate()) EXPECT_TRUE(nod.req(a, Rel::D).none());
}

TEST(BStep, Properties) {
  AtomSpace sp(fig3_formula());
  auto atoms = sp.enumerate();
  for (const auto& f : atoms)
    for (const auto& g : atoms) {
      if (sp.req(f, Rel::B).none() && sp.obs(g, Rel::B).any()) EXPECT_FALSE(sp.b_step(f, g));
      if (!sp.b_step(f, g)) continue;
      // Box_B(f) is contained in g.
      for (const Formula& neg : sp.box_formulas(f, Rel::B)) EXPECT_TRUE(sp.holds(g, neg));
    }
}

TEST(DStep, TransitiveAndReflexivity) {
  AtomSpace sp(dD(prop("p") | dD(!prop("q"))));
  auto atoms = sp.enumerate();
  for (const auto& a : atoms) {
    EXPECT_EQ(sp.d_step(a, a), sp.is_d_reflexive(a));
    for (const auto& b : atoms) {
      if (!sp.d_step(a, b)) continue;
      for (const auto& c : atoms)
        if (sp.d_step(b, c)) EXPECT_TRUE(sp.d_step(a, c));
    }
  }
  // An atom requesting every D-argument reaches everything whose requests and observations it covers.
  for (const auto& f : atoms) {
    if (sp.req(f, Rel::D).count() != sp.arity(Rel::D)) continue;
    for (const auto& g : atoms) EXPECT_TRUE(sp.d_step(f, g));
  }
}

TEST(Determinacy, RequestsAndLettersFixF) {
  AtomSpace sp(dA(prop("p")) & dB(!prop("q")) | dD(prop("p") & prop("q")));
  auto atoms = sp.enumerate();
  for (const auto& a : atoms)
    for (const auto& b : atoms) {
      bool same_requests = sp.props(a) == sp.props(b);
      for (Rel r : {Rel::A, Rel::B, Rel::D}) same_requests = same_requests && sp.req(a, r) == sp.req(b, r);
      EXPECT_EQ(a.f == b.f, same_requests);
    }
}

TEST(AtomOf, PointsColumnsAndTopRow) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 60; ++it) {
    Formula phi = random_formula(rng, 1 + rng() % 6, {"p", "q"});
    AtomSpace sp(phi);
    HomModel m = random_model(rng, rng() % 6, {"p", "q"});
    Evaluator ev(m, sp.closure());
    for (std::size_t x = 0; x <= m.n; ++x) {
      Atom pt = sp.atom_of(ev, x, x);
      EXPECT_TRUE(sp.is_initial(pt));
      EXPECT_TRUE(sp.req(pt, Rel::B).none());
      EXPECT_TRUE(sp.is_final(sp.atom_of(ev, x, m.n)));
      for (std::size_t y = x; y <= m.n; ++y) {
        Atom a = sp.atom_of(ev, x, y);
        EXPECT_TRUE(sp.is_atom(a)) << sp.describe(a);
        if (y < m.n) EXPECT_TRUE(sp.b_step(sp.atom_of(ev, x, y + 1), a));
      }
    }
  }
}

TEST(Predicates, Trivial) {
  AtomSpace sp(dA(prop("p")));
  for (const auto& a : sp.enumerate()) {
    if (a.alpha[0] == AStatus::Forbidden) EXPECT_TRUE(sp.is_final(a));
    if (!sp.holds(a, pi())) EXPECT_FALSE(sp.is_initial(a));
  }
}

TEST(DeltaUp, ZeroAtomAndPointsPositive) {
  Formula phi = dB(prop("p")) | dD(!prop("q")) | dA(prop("q"));
  AtomSpace sp(phi);
  bool found_zero = false;
  for (const auto& a : sp.enumerate()) {
    std::size_t d = sp.delta_up(a);
    EXPECT_LE(d, 5 * size_metric(phi));
    if (sp.is_initial(a)) EXPECT_GE(d, 1u);
    if (d == 0) {
      found_zero = true;
      EXPECT_TRUE(sp.props(a).none());
      EXPECT_TRUE(sp.is_final(a));
    }
  }
  EXPECT_TRUE(found_zero);
}

TEST(Violations, NamesConditions) {
  AtomSpace sp(dA(prop("p")));
  Atom a = sp.enumerate().front();
  Atom bad = a;
  bad.alpha.clear();
  EXPECT_EQ(sp.violations(bad), (std::vector<std::string>{"shape"}));
  for (Atom b : sp.enumerate()) {
    if (!sp.holds(b, prop("p"))) continue;
    b.alpha[0] = AStatus::Forbidden;
    auto v = sp.violations(b);
    EXPECT_NE(std::find(v.begin(), v.end(), "alpha-i"), v.end());
  }
}

TEST(DeltaUp, WorkedExample) {
  // One B-argument, no D-arguments, no A-requests, the single letter true throughout.
  EXPECT_EQ(delta_up_value({1, 0, 0, 0, 0, 1, 0}), 3u);
  EXPECT_EQ(delta_up_value({1, 0, 1, 0, 0, 1, 0}), 2u);
  EXPECT_EQ(delta_up_value({1, 1, 0, 0, 0, 1, 0}), 1u);
}

TEST(DeltaUp, DecreasesUpAColumn) {
  // Column 0 of a model for <B> q: the point, then q observed, then q requested.
  Formula phi = dB(prop("q"));
  AtomSpace sp(phi);
  HomModel m(2, {{"q"}, {}, {}});
  std::size_t d0 = sp.delta_up(sp.atom_of(m, {0, 0}));
  std::size_t d1 = sp.delta_up(sp.atom_of(m, {0, 1}));
  std::size_t d2 = sp.delta_up(sp.atom_of(m, {0, 2}));
  EXPECT_GT(d0, d1);
  EXPECT_EQ(d1, d2);
}
