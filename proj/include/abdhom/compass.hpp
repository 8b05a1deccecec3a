#ifndef ABDHOM_COMPASS_HPP
#define ABDHOM_COMPASS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abdhom/atoms.hpp"
#include "abdhom/model.hpp"

namespace abdhom {

using Cell = std::pair<std::size_t, std::size_t>;

// Dense labelling of G_N = {(x,y) : 0 <= x <= y <= N}.
class Compass {
public:
  Compass() = default;
  explicit Compass(std::size_t n) : n_(n), cells_((n + 1) * (n + 1)) {}

  std::size_t n() const { return n_; }
  Atom& at(std::size_t x, std::size_t y) { return cells_[index(x, y)]; }
  const Atom& at(std::size_t x, std::size_t y) const { return cells_[index(x, y)]; }

  friend bool operator==(const Compass&, const Compass&) = default;

private:
  std::size_t index(std::size_t x, std::size_t y) const {
    if (x > y || y > n_) throw std::out_of_range("cell outside the compass");
    return x * (n_ + 1) + y;
  }

  std::size_t n_ = 0;
  std::vector<Atom> cells_;
};

struct Violation {
  std::string condition;
  std::vector<Cell> cells;
  std::string formula;
};

using ViolationReport = std::vector<Violation>;

inline bool has_condition(const ViolationReport& r, const std::string& name) {
  for (const auto& v : r)
    if (v.condition == name) return true;
  return false;
}

inline Compass from_model(const AtomSpace& sp, const HomModel& m, bool require_phi = true) {
  Evaluator ev(m, sp.closure());
  if (require_phi && !ev.holds(sp.closure().root(), 0, m.n))
    throw std::invalid_argument("model does not satisfy the formula on [0,N]");
  Compass c(m.n);
  for (std::size_t x = 0; x <= m.n; ++x)
    for (std::size_t y = x; y <= m.n; ++y) c.at(x, y) = sp.atom_of(ev, x, y);
  return c;
}

namespace detail {

inline std::string first_formula(const AtomSpace& sp, const Bits& b, Rel r, bool negate = false) {
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!b.test(j)) continue;
    Formula g = sp.closure().formula_of(sp.arg_lit(r, j));
    return to_string(negate ? !g : g);
  }
  return {};
}

}  // namespace detail

/*
 * Checks every compass condition plus homogeneity and atom legality.
 * D-consistency is checked pairwise when `exhaustive_d` is set; otherwise
 * through the exact recurrence over inner cells.
 */
inline ViolationReport validate(const AtomSpace& sp, const Compass& c, bool exhaustive_d = false) {
  ViolationReport rep;
  const std::size_t n = c.n();
  const Closure& cl = sp.closure();

  for (std::size_t x = 0; x <= n; ++x)
    for (std::size_t y = x; y <= n; ++y)
      for (const auto& v : sp.violations(c.at(x, y))) rep.push_back({"atom", {{x, y}}, v});
  if (!rep.empty()) return rep;

  if (!sp.holds(c.at(0, n), cl.root())) rep.push_back({"initial-formula", {{0, n}}, to_string(cl.phi())});

  for (std::size_t x = 0; x <= n; ++x)
    for (std::size_t y = x; y <= n; ++y) {
      Bits a = sp.req(c.at(x, y), Rel::A), b = sp.req(c.at(y, y), Rel::A);
      if (a != b) rep.push_back({"A-consistency", {{x, y}, {y, y}}, detail::first_formula(sp, (a - b) | (b - a), Rel::A)});
    }

  for (std::size_t x = 0; x <= n; ++x) {
    Bits rb = sp.req(c.at(x, x), Rel::B);
    if (rb.any()) rep.push_back({"B-consistency", {{x, x}}, detail::first_formula(sp, rb, Rel::B)});
    for (std::size_t y = x; y < n; ++y)
      if (!sp.b_step(c.at(x, y + 1), c.at(x, y))) rep.push_back({"B-consistency", {{x, y + 1}, {x, y}}, ""});
  }

  // inner_ro(x,y): union of Req_D | Obs_D over the strict inner cells; inner_o: Obs_D only.
  const std::size_t nd = sp.arity(Rel::D);
  std::vector<Bits> inner_ro((n + 1) * (n + 1), Bits(nd)), inner_o((n + 1) * (n + 1), Bits(nd));
  auto id = [n](std::size_t x, std::size_t y) { return x * (n + 1) + y; };
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t x = 0; x + len <= n; ++x) {
      std::size_t y = x + len;
      const Atom& mid = c.at(x + 1, y - 1);
      Bits ro = sp.req(mid, Rel::D) | sp.obs(mid, Rel::D);
      Bits o = sp.obs(mid, Rel::D);
      if (len > 2) {
        ro |= inner_ro[id(x + 1, y)];
        ro |= inner_ro[id(x, y - 1)];
        o |= inner_o[id(x + 1, y)];
        o |= inner_o[id(x, y - 1)];
      }
      inner_ro[id(x, y)] = ro;
      inner_o[id(x, y)] = o;
    }

  for (std::size_t x = 0; x <= n; ++x)
    for (std::size_t y = x; y <= n; ++y) {
      Bits rd = sp.req(c.at(x, y), Rel::D);
      if (exhaustive_d) {
        for (std::size_t x2 = x + 1; x2 < y; ++x2)
          for (std::size_t y2 = x2; y2 < y; ++y2)
            if (!sp.d_step(c.at(x, y), c.at(x2, y2))) rep.push_back({"D-consistency", {{x, y}, {x2, y2}}, ""});
      } else if (Bits miss = inner_ro[id(x, y)] - rd; miss.any()) {
        rep.push_back({"D-consistency", {{x, y}}, detail::first_formula(sp, miss, Rel::D)});
      }
      if (Bits miss = rd - inner_o[id(x, y)]; miss.any())
        rep.push_back({"D-fulfilment", {{x, y}}, detail::first_formula(sp, miss, Rel::D)});
    }

  for (std::size_t x = 0; x <= n; ++x)
    if (!sp.is_final(c.at(x, n))) rep.push_back({"A-fulfilment", {{x, n}}, ""});

  for (std::size_t x = 0; x <= n; ++x) {
    Bits p = sp.props(c.at(x, x));
    for (std::size_t y = x; y <= n; ++y) {
      if (y > x) p &= sp.props(c.at(y, y));
      Bits q = sp.props(c.at(x, y));
      if (p != q) {
        Bits diff = (p - q) | (q - p);
        std::string name;
        for (std::size_t k = 0; k < diff.size(); ++k)
          if (diff.test(k)) {
            name = cl.pair(cl.props()[k]).formula.letter();
            break;
          }
        rep.push_back({"homogeneity", {{x, y}}, name});
      }
    }
  }
  return rep;
}

inline HomModel to_model(const AtomSpace& sp, const Compass& c, bool check = true) {
  if (check && !validate(sp, c).empty()) throw std::invalid_argument("compass is not a valid compass structure");
  const Closure& cl = sp.closure();
  std::vector<std::set<std::string>> pts(c.n() + 1);
  for (std::size_t x = 0; x <= c.n(); ++x)
    for (std::size_t i : cl.props())
      if (c.at(x, x).f.test(i)) pts[x].insert(cl.pair(i).formula.letter());
  return HomModel(c.n(), std::move(pts));
}

}  // namespace abdhom

#endif
