#ifndef ABDHOM_ANALYSIS_HPP
#define ABDHOM_ANALYSIS_HPP

#include <algorithm>
#include <map>
#include <tuple>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "abdhom/compass.hpp"

namespace abdhom {

struct ShadingEntry {
  Atom atom;
  std::size_t row;
  friend bool operator==(const ShadingEntry&, const ShadingEntry&) = default;
};
using Shading = std::vector<ShadingEntry>;
using BSequence = std::vector<Atom>;

inline BSequence project_atoms(const Shading& s) {
  BSequence out;
  for (const auto& e : s) out.push_back(e.atom);
  return out;
}

// Row-wise comparison of two shadings with equal atom projections.
inline bool shading_leq(const Shading& a, const Shading& b) {
  if (project_atoms(a) != project_atoms(b)) throw std::invalid_argument("shadings of non-equivalent columns");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].row > b[i].row) return false;
  return true;
}
inline bool shading_less(const Shading& a, const Shading& b) { return shading_leq(a, b) && a != b; }

struct Fingerprint {
  BSequence shading;
  Atom current;
  std::vector<std::pair<BSequence, Atom>> right;  // canonical: sorted by interned ids
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct BlueprintEntry {
  BSequence shading;
  Atom atom;
  friend bool operator==(const BlueprintEntry&, const BlueprintEntry&) = default;
};
using RowBlueprint = std::vector<BlueprintEntry>;

inline bool is_b_sequence(const AtomSpace& sp, const BSequence& s) {
  if (s.empty() || !sp.is_initial(s.front()) || !sp.is_final(s.back())) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!sp.b_step(s[i], s[i - 1])) return false;
    if (!sp.req(s[i - 1], Rel::D).subset_of(sp.req(s[i], Rel::D))) return false;
    if (!sp.props(s[i]).subset_of(sp.props(s[i - 1]))) return false;
  }
  return true;
}

inline bool is_minimal_b_sequence(const AtomSpace& sp, const BSequence& s) {
  if (!is_b_sequence(sp, s)) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (sp.delta_up(s[i - 1]) <= sp.delta_up(s[i])) return false;
  return true;
}

/*
 * Shadings, fingerprints, covered points and row blueprints of one compass.
 * Atoms, shading projections and right-sets are interned so that
 * fingerprint comparison is on ids of canonical encodings.
 */
class CompassAnalysis {
public:
  CompassAnalysis(const AtomSpace& sp, const Compass& c) : sp_(sp), c_(c), n_(c.n()) {
    const std::size_t side = n_ + 1;
    atom_id_.assign(side * side, 0);
    delta_.assign(side * side, 0);
    for (std::size_t x = 0; x <= n_; ++x)
      for (std::size_t y = x; y <= n_; ++y) {
        const Atom& a = c.at(x, y);
        auto [it, fresh] = atom_ids_.try_emplace(a, atom_ids_.size());
        atom_id_[id(x, y)] = it->second;
        delta_[id(x, y)] = sp.delta_up(a);
      }

    shading_rows_.resize(side);
    std::map<std::vector<std::size_t>, std::size_t> sh_ids;
    sh_id_.resize(side);
    for (std::size_t x = 0; x <= n_; ++x) {
      std::vector<std::size_t> seen_delta, key;
      for (std::size_t y = x; y <= n_; ++y) {
        std::size_t d = delta_[id(x, y)];
        if (std::find(seen_delta.begin(), seen_delta.end(), d) != seen_delta.end()) continue;
        seen_delta.push_back(d);
        shading_rows_[x].push_back(y);
        key.push_back(atom_id_[id(x, y)]);
      }
      sh_id_[x] = sh_ids.try_emplace(key, sh_ids.size()).first->second;
    }

    // right_id(x,y) interns S_->(x,y) = {(Sh_B(x'), L(x',y)) : x < x' <= y}.
    right_id_.assign(side * side, 0);
    fp_id_.assign(side * side, 0);
    std::map<std::vector<std::pair<std::size_t, std::size_t>>, std::size_t> right_ids;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> fp_ids;
    for (std::size_t y = 0; y <= n_; ++y) {
      std::vector<std::pair<std::size_t, std::size_t>> acc;
      for (std::size_t x = y + 1; x-- > 0;) {
        right_id_[id(x, y)] = right_ids.try_emplace(acc, right_ids.size()).first->second;
        auto key = std::make_tuple(sh_id_[x], atom_id_[id(x, y)], right_id_[id(x, y)]);
        fp_id_[id(x, y)] = fp_ids.try_emplace(key, fp_ids.size()).first->second;
        std::pair<std::size_t, std::size_t> mine{sh_id_[x], atom_id_[id(x, y)]};
        auto pos = std::lower_bound(acc.begin(), acc.end(), mine);
        if (pos == acc.end() || *pos != mine) acc.insert(pos, mine);
      }
    }

    covered_.assign(side * side, 0);
    cover_next_.assign(side * side, 0);
    for (std::size_t y = 0; y <= n_; ++y)
      for (std::size_t x = 0; x <= y; ++x) {
        std::size_t need = delta_[id(x, y)];
        std::size_t found = 0, first = x;
        for (std::size_t x2 = x + 1; x2 <= y && found < need; ++x2)
          if (fp_id_[id(x2, y)] == fp_id_[id(x, y)]) {
            if (found++ == 0) first = x2;
          }
        if (found >= need) {
          covered_[id(x, y)] = 1;
          cover_next_[id(x, y)] = first;
        }
      }
  }

  const Compass& compass() const { return c_; }
  std::size_t n() const { return n_; }

  std::size_t delta(std::size_t x, std::size_t y) const { return delta_[checked(x, y)]; }

  Shading shading(std::size_t x) const {
    Shading s;
    for (std::size_t y : shading_rows_.at(x)) s.push_back({c_.at(x, y), y});
    return s;
  }
  const std::vector<std::size_t>& shading_rows(std::size_t x) const { return shading_rows_.at(x); }
  BSequence shading_b(std::size_t x) const { return project_atoms(shading(x)); }
  std::size_t shading_id(std::size_t x) const { return sh_id_.at(x); }

  bool column_equiv(std::size_t x, std::size_t x2) const { return sh_id_.at(x) == sh_id_.at(x2); }

  Fingerprint fingerprint(std::size_t x, std::size_t y) const {
    Fingerprint fp{shading_b(x), c_.at(x, y), {}};
    std::vector<std::pair<std::size_t, std::size_t>> keys;
    for (std::size_t x2 = x + 1; x2 <= y; ++x2) keys.emplace_back(sh_id_[x2], x2);
    std::sort(keys.begin(), keys.end(), [&](auto a, auto b) {
      return std::pair(a.first, atom_id_[id(a.second, y)]) < std::pair(b.first, atom_id_[id(b.second, y)]);
    });
    for (auto [sh, x2] : keys) {
      std::pair<BSequence, Atom> e{shading_b(x2), c_.at(x2, y)};
      if (fp.right.empty() || fp.right.back() != e) fp.right.push_back(std::move(e));
    }
    return fp;
  }
  bool same_fingerprint(std::size_t x, std::size_t x2, std::size_t y) const {
    return fp_id_[checked(x, y)] == fp_id_[checked(x2, y)];
  }

  // Covered needs Delta-up(L(x,y)) matching columns strictly to the right;
  // with Delta-up 0 the cover is empty and the point is covered outright.
  bool covered(std::size_t x, std::size_t y) const { return covered_[checked(x, y)] != 0; }
  bool vacuously_covered(std::size_t x, std::size_t y) const { return covered(x, y) && delta_[id(x, y)] == 0; }

  // Leftmost column of the cover of (x,y); x itself for an empty cover.
  std::size_t cover_of(std::size_t x, std::size_t y) const {
    if (!covered(x, y)) throw std::logic_error("point is not covered");
    return cover_next_[id(x, y)];
  }

  // Follows covers to the right until an uncovered or vacuously covered column.
  std::size_t witness_of(std::size_t x, std::size_t y) const {
    while (covered(x, y) && cover_next_[id(x, y)] != x) x = cover_next_[id(x, y)];
    return x;
  }

  std::vector<std::size_t> witnesses(std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x <= y; ++x)
      if (!covered(x, y)) out.push_back(x);
    return out;
  }

  RowBlueprint row_blueprint(std::size_t y) const {
    RowBlueprint bp;
    for (std::size_t x : witnesses(y)) bp.push_back({shading_b(x), c_.at(x, y)});
    return bp;
  }

  // Cheap blueprint key: ids of (shading, atom) for the witnesses.
  std::vector<std::pair<std::size_t, std::size_t>> blueprint_key(std::size_t y) const {
    std::vector<std::pair<std::size_t, std::size_t>> k;
    for (std::size_t x : witnesses(y)) k.emplace_back(sh_id_[x], atom_id_[id(x, y)]);
    return k;
  }

  // All row pairs y < y2 with equal blueprints.
  std::vector<std::pair<std::size_t, std::size_t>> repetitions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> keys;
    for (std::size_t y = 0; y <= n_; ++y) keys.push_back(blueprint_key(y));
    for (std::size_t y = 0; y <= n_; ++y)
      for (std::size_t y2 = y + 1; y2 <= n_; ++y2)
        if (keys[y] == keys[y2]) out.emplace_back(y, y2);
    return out;
  }

private:
  std::size_t id(std::size_t x, std::size_t y) const { return x * (n_ + 1) + y; }
  std::size_t checked(std::size_t x, std::size_t y) const {
    if (x > y || y > n_) throw std::out_of_range("cell outside the compass");
    return id(x, y);
  }

  const AtomSpace& sp_;
  const Compass& c_;
  std::size_t n_;
  std::unordered_map<Atom, std::size_t, AtomHash> atom_ids_;
  std::vector<std::size_t> atom_id_, delta_, sh_id_, right_id_, fp_id_, cover_next_;
  std::vector<std::vector<std::size_t>> shading_rows_;
  std::vector<char> covered_;
};

/*
 * Removes rows y+1..y2 when both rows have the same blueprint. Points above
 * y are the old points above y2 shifted down; each column x <= y continues
 * with the upper part of the witness column matched to the witness that
 * x follows on row y. A column whose cover chain ends in an empty cover
 * keeps the shifted upper part of that column.
 */
inline Compass contract(const AtomSpace& sp, const Compass& c, std::size_t y, std::size_t y2) {
  if (y >= y2 || y2 > c.n()) throw std::invalid_argument("contraction needs rows y < y' <= N");
  CompassAnalysis an(sp, c);
  if (an.blueprint_key(y) != an.blueprint_key(y2)) throw std::invalid_argument("rows have different blueprints");
  const std::size_t d = y2 - y;
  const std::size_t n2 = c.n() - d;
  std::vector<std::size_t> wit_lo = an.witnesses(y), wit_hi = an.witnesses(y2);
  Compass out(n2);
  for (std::size_t x = 0; x <= n2; ++x)
    for (std::size_t r = x; r <= n2; ++r) {
      if (r <= y) {
        out.at(x, r) = c.at(x, r);
      } else if (x > y) {
        out.at(x, r) = c.at(x + d, r + d);
      } else {
        std::size_t w = an.witness_of(x, y);
        if (an.covered(w, y)) {
          out.at(x, r) = c.at(w, r + d);
          continue;
        }
        std::size_t k = static_cast<std::size_t>(std::lower_bound(wit_lo.begin(), wit_lo.end(), w) - wit_lo.begin());
        out.at(x, r) = c.at(wit_hi[k], r + d);
      }
    }
  return out;
}

}  // namespace abdhom

#endif
