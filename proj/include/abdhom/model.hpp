#ifndef ABDHOM_MODEL_HPP
#define ABDHOM_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "abdhom/formula.hpp"

namespace abdhom {

struct Interval {
  std::size_t x = 0;
  std::size_t y = 0;
};

// Homogeneous model over points 0..n. Interval labels are intersections of
// the point labels and are never stored.
struct HomModel {
  std::size_t n = 0;
  std::vector<std::set<std::string>> points{{}};

  HomModel() = default;
  HomModel(std::size_t n_, std::vector<std::set<std::string>> pts) : n(n_), points(std::move(pts)) {
    if (points.size() != n + 1) throw std::invalid_argument("model needs n+1 point labels");
  }

  std::set<std::string> label(Interval iv) const {
    check(iv);
    std::set<std::string> out = points[iv.x];
    for (std::size_t z = iv.x + 1; z <= iv.y; ++z) {
      std::set<std::string> keep;
      std::set_intersection(out.begin(), out.end(), points[z].begin(), points[z].end(),
                            std::inserter(keep, keep.end()));
      out.swap(keep);
    }
    return out;
  }

  void check(Interval iv) const {
    if (iv.x > iv.y || iv.y > n) throw std::out_of_range("interval out of range");
  }

  friend bool operator==(const HomModel&, const HomModel&) = default;
};

/*
 * Direct semantics over the closure of a formula. Results are memoized per
 * (x, y, closure pair); each evaluator owns its table.
 */
class Evaluator {
public:
  Evaluator(const HomModel& m, const Closure& cl) : m_(m), cl_(cl), side_(m.n + 1) {
    memo_.assign(side_ * side_ * cl.pair_count(), kUnknown);
    missing_.resize(cl.pair_count());
    for (std::size_t i : cl.props()) {
      const std::string& name = cl.pair(i).formula.letter();
      auto& pre = missing_[i];
      pre.assign(side_ + 1, 0);
      for (std::size_t z = 0; z < side_; ++z) pre[z + 1] = pre[z] + (m.points[z].count(name) ? 0 : 1);
    }
  }

  std::size_t n() const { return m_.n; }

  bool holds(Lit l, std::size_t x, std::size_t y) {
    if (l == kLitTrue) return true;
    if (l == kLitFalse) return false;
    bool v = pair_holds(l / 2, x, y);
    return (l & 1u) ? !v : v;
  }

  bool holds(const Formula& f, Interval iv) {
    m_.check(iv);
    return holds(cl_.lit_of(f), iv.x, iv.y);
  }

private:
  static constexpr std::uint8_t kUnknown = 2;

  bool pair_holds(std::size_t i, std::size_t x, std::size_t y) {
    std::uint8_t& slot = memo_[(x * side_ + y) * cl_.pair_count() + i];
    if (slot != kUnknown) return slot != 0;
    const Closure::Pair& p = cl_.pair(i);
    bool v = false;
    switch (p.formula.op()) {
      case Op::Prop: v = missing_[i][y + 1] == missing_[i][x]; break;
      case Op::Or: v = holds(p.lhs, x, y) || holds(p.rhs, x, y); break;
      case Op::DiamondA:
        for (std::size_t y2 = y; y2 <= m_.n && !v; ++y2) v = holds(p.lhs, y, y2);
        break;
      case Op::DiamondB:
        for (std::size_t y2 = x; y2 < y && !v; ++y2) v = holds(p.lhs, x, y2);
        break;
      case Op::DiamondD:
        for (std::size_t x2 = x + 1; x2 < y && !v; ++x2)
          for (std::size_t y2 = x2; y2 < y && !v; ++y2) v = holds(p.lhs, x2, y2);
        break;
      default: throw std::logic_error("unexpected closure pair");
    }
    slot = v ? 1 : 0;
    return v;
  }

  const HomModel& m_;
  const Closure& cl_;
  std::size_t side_;
  std::vector<std::uint8_t> memo_;
  std::vector<std::vector<std::size_t>> missing_;
};

inline bool evaluate(const HomModel& m, Interval iv, const Formula& phi) {
  Closure cl(phi);
  Evaluator ev(m, cl);
  return ev.holds(phi, iv);
}

inline bool verify(const HomModel& m, const Formula& phi) { return evaluate(m, {0, m.n}, phi); }

// Non-standard satisfaction: phi holds on some interval, not necessarily [0,N].
inline bool verify_somewhere(const HomModel& m, const Formula& phi) {
  Closure cl(phi);
  Evaluator ev(m, cl);
  Lit root = cl.root();
  for (std::size_t x = 0; x <= m.n; ++x)
    for (std::size_t y = x; y <= m.n; ++y)
      if (ev.holds(root, x, y)) return true;
  return false;
}

/*
 * Least model with N <= n_max: N ascending, then assignments in counter
 * order where bit i*L+j means point i carries the j-th letter (letters sorted).
 */
inline std::optional<HomModel> brute_force_sat(const Formula& phi, std::size_t n_max,
                                               std::vector<std::string> alphabet = {},
                                               bool anywhere = false) {
  for (const auto& l : letters(phi))
    if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end()) alphabet.push_back(l);
  std::sort(alphabet.begin(), alphabet.end());
  std::size_t L = alphabet.size();
  Closure cl(phi);
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::size_t bits = (n + 1) * L;
    if (bits >= 63) throw std::length_error("brute force search space too large");
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << bits); ++k) {
      std::vector<std::set<std::string>> pts(n + 1);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j < L; ++j)
          if (k >> (i * L + j) & 1u) pts[i].insert(alphabet[j]);
      HomModel m(n, std::move(pts));
      Evaluator ev(m, cl);
      bool ok = false;
      if (anywhere) {
        for (std::size_t x = 0; x <= n && !ok; ++x)
          for (std::size_t y = x; y <= n && !ok; ++y) ok = ev.holds(cl.root(), x, y);
      } else {
        ok = ev.holds(cl.root(), 0, n);
      }
      if (ok) return m;
    }
  }
  return std::nullopt;
}

}  // namespace abdhom

#endif
