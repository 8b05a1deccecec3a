#ifndef ABDHOM_TILING_HPP
#define ABDHOM_TILING_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abdhom/formula.hpp"
#include "abdhom/model.hpp"

namespace abdhom {

// Exponential-corridor tiling instance: tiles 0..t_max, corridor rows 0..C.
struct TilingInstance {
  std::size_t t_max = 0;
  std::size_t C = 1;
  std::set<std::pair<std::size_t, std::size_t>> horiz;
  std::set<std::pair<std::size_t, std::size_t>> vert;

  // c with C = 2^c - 1.
  std::size_t bits() const {
    std::size_t c = 0;
    while ((std::size_t{1} << c) < C + 1) ++c;
    return c;
  }

  void check() const {
    if (C == 0 || ((C + 1) & C) != 0) throw std::invalid_argument("C+1 must be a power of two greater than 1");
    for (const auto* rel : {&horiz, &vert})
      for (auto [i, j] : *rel)
        if (i > t_max || j > t_max) throw std::invalid_argument("tile pair out of range");
  }
};

inline TilingInstance make_instance(std::size_t t_max, std::size_t c, std::set<std::pair<std::size_t, std::size_t>> horiz,
                                    std::set<std::pair<std::size_t, std::size_t>> vert) {
  if (c == 0 || c > 16) throw std::invalid_argument("number of bits must be in 1..16");
  TilingInstance t{t_max, (std::size_t{1} << c) - 1, std::move(horiz), std::move(vert)};
  t.check();
  return t;
}

// Columns 0..M of a corridor tiling; column `prefix` repeats as column prefix+period = M.
struct TileGrid {
  std::vector<std::vector<std::size_t>> columns;  // columns[x][y]
  std::size_t prefix = 0;
  std::size_t period = 1;

  std::size_t width() const { return columns.size(); }
  std::size_t tile(std::size_t x, std::size_t y) const { return columns.at(x).at(y); }
  friend bool operator==(const TileGrid&, const TileGrid&) = default;
};

inline std::size_t map_point(const TilingInstance& t, std::size_t x, std::size_t y) { return x * (t.C + 1) + y; }
inline std::pair<std::size_t, std::size_t> unmap_point(const TilingInstance& t, std::size_t n) {
  return {n / (t.C + 1), n % (t.C + 1)};
}

inline std::string tile_letter(std::size_t i) { return "t" + std::to_string(i); }
inline std::string bit_letter(std::size_t i) { return "b" + std::to_string(i); }
// Marker letter of the repeated column; the double underscore keeps it apart from tile and bit letters.
inline const std::string& prefix_letter() {
  static const std::string name = "__p";
  return name;
}

namespace detail {

struct TilingFormulas {
  const TilingInstance& t;
  std::size_t c;

  Formula tl(std::size_t i) const { return prop(tile_letter(i)); }
  Formula b(std::size_t i) const { return prop(bit_letter(i)); }

  // Bits in increment order, least significant (b_c) first.
  std::size_t inc_bit(std::size_t k) const { return c + 1 - k; }

  // Endpoints of a non-point interval agree on the bits handled from step k on.
  Formula eq(std::size_t k) const {
    std::vector<Formula> parts{!pi()};
    for (std::size_t j = k; j <= c; ++j) {
      Formula bj = b(inc_bit(j));
      parts.push_back(iff(dB(pi() & bj), dA(pi() & bj)));
    }
    return conj_all(parts);
  }

  Formula plus(std::size_t k) const {
    Formula bi = b(inc_bit(k));
    if (k == c) return Formula::neg(dB(bi)) & dA(bi);
    return implies(dB(bi), dA(pi() & !bi) & plus(k + 1)) & implies(dB(!bi), dA(bi) & eq(k + 1));
  }

  Formula all_bits(bool value) const {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i <= c; ++i) parts.push_back(value ? b(i) : !b(i));
    return conj_all(parts);
  }

  Formula pairs(const std::set<std::pair<std::size_t, std::size_t>>& rel) const {
    std::vector<Formula> parts;
    for (auto [i, j] : rel) parts.push_back(dB(tl(i)) & dA(tl(j)));
    return disj_all(parts);
  }

  Formula exists() const {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i <= t.t_max; ++i) parts.push_back(tl(i));
    return global(implies(pi(), disj_all(parts)));
  }

  Formula unique() const {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i <= t.t_max; ++i) {
      std::vector<Formula> others;
      for (std::size_t j = 0; j <= t.t_max; ++j)
        if (j != i) others.push_back(!tl(j));
      parts.push_back(implies(tl(i) & pi(), conj_all(others)));
    }
    return global(conj_all(parts));
  }

  Formula boundaries() const { return dB(pi() & all_bits(false)) & bA(all_bits(true)); }

  Formula up() const {
    std::vector<Formula> high, wrap;
    for (std::size_t i = 1; i <= c; ++i) {
      high.push_back(dB(b(i)));
      wrap.push_back(dA(pi() & !b(i)));
    }
    Formula overflow = conj_all(high) & conj_all(wrap);
    return global(implies(bB(pi()) & !pi(), overflow | plus(1)));
  }

  Formula bottom_top() const {
    return global(implies(pi() & all_bits(false), tl(0)) & implies(pi() & all_bits(true), tl(t.t_max)));
  }

  Formula horizontal() const {
    Formula min_eq = eq(1) & bB(!eq(1));
    return global(implies(pi() & dA(eq(1)), dA(min_eq & pairs(t.horiz))));
  }

  Formula vertical() const {
    std::vector<Formula> not_top;
    for (std::size_t i = 1; i <= c; ++i) not_top.push_back(dB(!b(i)));
    return global(implies(bB(pi()) & !pi() & disj_all(not_top), pairs(t.vert)));
  }

  Formula prefix() const {
    Formula p = prop(prefix_letter());
    std::vector<Formula> column;
    for (std::size_t i = 1; i <= c; ++i) column.push_back(dB(pi() & !b(i)) & dA(b(i)));
    std::vector<Formula> same;
    for (std::size_t i = 0; i <= t.t_max; ++i) same.push_back(iff(dB(tl(i)), dA(tl(i))));
    return dB(dA(p & conj_all(column))) &
           global(implies(p & pi(), dA(eq(1) & bA(!eq(1)) & conj_all(same))));
  }
};

}  // namespace detail

/*
 * phi_T = tiles exist and are unique, bit counter from 0 to C along the
 * points with wrap-around, bottom/top tiles, horizontal neighbours one
 * column apart, vertical neighbours on consecutive points, and a marked
 * column that repeats as the last one.
 */
inline Formula generate_formula(const TilingInstance& t) {
  t.check();
  detail::TilingFormulas g{t, t.bits()};
  return conj_all({g.exists(), g.unique(), g.boundaries(), g.up(), g.bottom_top(), g.horizontal(), g.vertical(),
                   g.prefix()});
}

// Conditions of the finite corridor problem on a grid; empty when valid.
inline std::vector<std::string> grid_violations(const TilingInstance& t, const TileGrid& g) {
  std::vector<std::string> out;
  if (g.period == 0 || g.width() != g.prefix + g.period + 1) {
    out.push_back("width must be prefix+period+1 with period > 0");
    return out;
  }
  for (std::size_t x = 0; x < g.width(); ++x) {
    if (g.columns[x].size() != t.C + 1) {
      out.push_back("column " + std::to_string(x) + " has wrong height");
      return out;
    }
    for (std::size_t y = 0; y <= t.C; ++y)
      if (g.tile(x, y) > t.t_max) out.push_back("tile out of range");
    if (g.tile(x, 0) != 0) out.push_back("bottom tile of column " + std::to_string(x));
    if (g.tile(x, t.C) != t.t_max) out.push_back("top tile of column " + std::to_string(x));
    for (std::size_t y = 0; y < t.C; ++y)
      if (!t.vert.count({g.tile(x, y), g.tile(x, y + 1)})) out.push_back("vertical pair in column " + std::to_string(x));
    if (x + 1 < g.width())
      for (std::size_t y = 0; y <= t.C; ++y)
        if (!t.horiz.count({g.tile(x, y), g.tile(x + 1, y)}))
          out.push_back("horizontal pair between columns " + std::to_string(x) + "," + std::to_string(x + 1));
  }
  if (g.columns[g.prefix] != g.columns.back()) out.push_back("column prefix differs from column prefix+period");
  return out;
}

// Exhaustive search over prefix <= prefix_max, period <= period_max, in that order.
inline std::optional<TileGrid> solve_tiling(const TilingInstance& t, std::size_t prefix_max, std::size_t period_max) {
  t.check();
  std::vector<std::vector<std::size_t>> cols;
  std::vector<std::size_t> cur(t.C + 1, 0);
  auto valid_column = [&t](const std::vector<std::size_t>& col) {
    if (col[0] != 0 || col[t.C] != t.t_max) return false;
    for (std::size_t y = 0; y < t.C; ++y)
      if (!t.vert.count({col[y], col[y + 1]})) return false;
    return true;
  };
  for (;;) {
    if (valid_column(cur)) cols.push_back(cur);
    std::size_t y = 0;
    while (y <= t.C && ++cur[y] > t.t_max) cur[y++] = 0;
    if (y > t.C) break;
  }
  auto compatible = [&t](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    for (std::size_t y = 0; y <= t.C; ++y)
      if (!t.horiz.count({a[y], b[y]})) return false;
    return true;
  };
  for (std::size_t prefix = 0; prefix <= prefix_max; ++prefix)
    for (std::size_t period = 1; period <= period_max; ++period) {
      std::size_t width = prefix + period + 1;
      std::vector<std::size_t> pick;
      // Depth-first over column indices.
      auto dfs = [&](auto&& self) -> bool {
        if (pick.size() == width) return pick[prefix] == pick.back();
        for (std::size_t k = 0; k < cols.size(); ++k) {
          if (!pick.empty() && !compatible(cols[pick.back()], cols[k])) continue;
          if (pick.size() == width - 1 && k != pick[prefix]) continue;
          pick.push_back(k);
          if (self(self)) return true;
          pick.pop_back();
        }
        return false;
      };
      if (dfs(dfs)) {
        TileGrid g;
        for (std::size_t k : pick) g.columns.push_back(cols[k]);
        g.prefix = prefix;
        g.period = period;
        return g;
      }
    }
  return std::nullopt;
}

// Model of phi_T for a grid: point map(x,y) carries t_tile, the bits of y, and
// the marker on column `prefix`.
inline HomModel encode_grid(const TilingInstance& t, const TileGrid& g) {
  const std::size_t c = t.bits();
  std::vector<std::set<std::string>> pts(g.width() * (t.C + 1));
  for (std::size_t x = 0; x < g.width(); ++x)
    for (std::size_t y = 0; y <= t.C; ++y) {
      auto& p = pts[map_point(t, x, y)];
      p.insert(tile_letter(g.tile(x, y)));
      for (std::size_t i = 1; i <= c; ++i)
        if (y >> (c - i) & 1u) p.insert(bit_letter(i));
      if (x == g.prefix) p.insert(prefix_letter());
    }
  const std::size_t n = pts.size() - 1;
  return HomModel(n, std::move(pts));
}

// Reads the grid back from a model of phi_T.
inline TileGrid decode_model(const HomModel& m, const TilingInstance& t) {
  t.check();
  const std::size_t c = t.bits();
  if ((m.n + 1) % (t.C + 1) != 0) throw std::invalid_argument("model size is not a whole number of columns");
  TileGrid g;
  g.columns.assign((m.n + 1) / (t.C + 1), std::vector<std::size_t>(t.C + 1));
  for (std::size_t n = 0; n <= m.n; ++n) {
    std::optional<std::size_t> tile;
    for (std::size_t i = 0; i <= t.t_max; ++i)
      if (m.points[n].count(tile_letter(i))) {
        if (tile) throw std::invalid_argument("point " + std::to_string(n) + " carries two tiles");
        tile = i;
      }
    if (!tile) throw std::invalid_argument("point " + std::to_string(n) + " carries no tile");
    std::size_t yb = 0;
    for (std::size_t i = 1; i <= c; ++i) yb = yb << 1 | (m.points[n].count(bit_letter(i)) ? 1u : 0u);
    auto [x, y] = unmap_point(t, n);
    if (yb != y) throw std::invalid_argument("point " + std::to_string(n) + " encodes row " + std::to_string(yb));
    g.columns[x][y] = *tile;
  }
  if (g.columns.size() < 2) throw std::invalid_argument("model has a single column");
  for (std::size_t x = 0; x + 1 < g.columns.size(); ++x)
    if (g.columns[x] == g.columns.back()) {
      g.prefix = x;
      g.period = g.columns.size() - 1 - x;
      return g;
    }
  throw std::invalid_argument("no column repeats the last one");
}

}  // namespace abdhom

#endif
