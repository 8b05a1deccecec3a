#ifndef ABDHOM_LEMMAS_HPP
#define ABDHOM_LEMMAS_HPP

#include <string>
#include <vector>

#include "abdhom/analysis.hpp"

// Structural properties every compass structure must satisfy. Each check
// returns a list of human-readable failures (empty when the property holds).

namespace abdhom::lemmas {

inline std::string at(std::size_t x, std::size_t y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

// Strict growth of Req_B from (x,y) to (x,y+1) only happens above a B-irreflexive atom.
inline std::vector<std::string> b_irreflexive_at_growth(const AtomSpace& sp, const Compass& c) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x <= c.n(); ++x)
    for (std::size_t y = x; y < c.n(); ++y) {
      Bits lo = sp.req(c.at(x, y), Rel::B), hi = sp.req(c.at(x, y + 1), Rel::B);
      if (lo.subset_of(hi) && lo != hi && sp.is_b_reflexive(c.at(x, y)))
        out.push_back("B-reflexive atom below Req_B growth at " + at(x, y));
    }
  return out;
}

inline std::vector<std::string> delta_non_increasing(const CompassAnalysis& an) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x <= an.n(); ++x)
    for (std::size_t y = x; y < an.n(); ++y)
      if (an.delta(x, y + 1) > an.delta(x, y)) out.push_back("delta-up increases above " + at(x, y));
  return out;
}

inline std::vector<std::string> shadings_are_minimal(const AtomSpace& sp, const CompassAnalysis& an) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x <= an.n(); ++x)
    if (!is_minimal_b_sequence(sp, an.shading_b(x))) out.push_back("column " + std::to_string(x) + " shading is not a minimal B-sequence");
  return out;
}

inline std::vector<std::string> shading_order(const CompassAnalysis& an) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x <= an.n(); ++x)
    for (std::size_t x2 = x + 1; x2 <= an.n(); ++x2)
      if (an.column_equiv(x, x2) && !shading_less(an.shading(x), an.shading(x2)))
        out.push_back("equivalent columns " + std::to_string(x) + "," + std::to_string(x2) + " not strictly ordered");
  return out;
}

// Least row above y whose atom differs from L(x,y) modulo A-requests, or N.
inline std::size_t change_row(const AtomSpace& sp, const Compass& c, std::size_t x, std::size_t y) {
  for (std::size_t y2 = y + 1; y2 <= c.n(); ++y2)
    if (!sp.equiv_mod_A(c.at(x, y2), c.at(x, y))) return y2;
  return c.n();
}

inline std::vector<std::string> step_constraint(const AtomSpace& sp, const CompassAnalysis& an) {
  std::vector<std::string> out;
  const Compass& c = an.compass();
  for (std::size_t y = 0; y <= c.n(); ++y)
    for (std::size_t x = 0; x <= y; ++x)
      for (std::size_t x2 = x + 1; x2 <= y; ++x2) {
        if (!an.same_fingerprint(x, x2, y)) continue;
        std::size_t top = change_row(sp, c, x, y);
        for (std::size_t r = y; r <= top; ++r)
          if (!(c.at(x, r) == c.at(x2, r))) {
            out.push_back("columns " + std::to_string(x) + "," + std::to_string(x2) + " diverge at row " +
                          std::to_string(r) + " after equal fingerprints on row " + std::to_string(y));
            break;
          }
      }
  return out;
}

inline std::vector<std::string> inbetweeners(const AtomSpace& sp, const CompassAnalysis& an) {
  std::vector<std::string> out;
  const Compass& c = an.compass();
  for (std::size_t y = 0; y <= c.n(); ++y)
    for (std::size_t x = 0; x <= y; ++x)
      for (std::size_t x2 = x + 1; x2 <= y; ++x2) {
        if (!an.same_fingerprint(x, x2, y)) continue;
        std::size_t top = change_row(sp, c, x, y);
        for (std::size_t xb = x + 1; xb < x2; ++xb)
          for (std::size_t xb2 = x2 + 1; xb2 <= y; ++xb2) {
            if (!(c.at(xb, y) == c.at(xb2, y)) || !an.column_equiv(xb, xb2) || an.column_equiv(xb, x)) continue;
            for (std::size_t r = y; r <= top; ++r)
              if (!(c.at(xb, r) == c.at(xb2, r))) {
                out.push_back("in-between columns " + std::to_string(xb) + "," + std::to_string(xb2) +
                              " diverge at row " + std::to_string(r));
                break;
              }
          }
      }
  return out;
}

inline std::vector<std::string> covered_stability(const CompassAnalysis& an) {
  std::vector<std::string> out;
  const Compass& c = an.compass();
  for (std::size_t y = 0; y <= c.n(); ++y)
    for (std::size_t x = 0; x <= y; ++x) {
      if (!an.covered(x, y) || an.vacuously_covered(x, y)) continue;
      std::size_t x0 = an.cover_of(x, y);
      for (std::size_t r = y; r <= c.n(); ++r)
        if (!(c.at(x, r) == c.at(x0, r))) {
          out.push_back("covered point " + at(x, y) + " differs from its cover at row " + std::to_string(r));
          break;
        }
    }
  return out;
}

inline std::vector<std::string> covered_monotone(const CompassAnalysis& an) {
  std::vector<std::string> out;
  for (std::size_t y = 0; y < an.n(); ++y)
    for (std::size_t x = 0; x <= y; ++x)
      if (an.covered(x, y) && !an.covered(x, y + 1)) out.push_back("covered point " + at(x, y) + " uncovered above");
  return out;
}

struct LemmaResult {
  std::string name;
  std::vector<std::string> failures;
};

inline std::vector<LemmaResult> check_all(const AtomSpace& sp, const Compass& c) {
  CompassAnalysis an(sp, c);
  return {
      {"b-irreflexive-at-growth", b_irreflexive_at_growth(sp, c)},
      {"delta-non-increasing", delta_non_increasing(an)},
      {"shading-minimal-b-sequence", shadings_are_minimal(sp, an)},
      {"shading-order", shading_order(an)},
      {"step-constraint", step_constraint(sp, an)},
      {"inbetweeners", inbetweeners(sp, an)},
      {"covered-stability", covered_stability(an)},
      {"covered-monotone", covered_monotone(an)},
  };
}

}  // namespace abdhom::lemmas

#endif
