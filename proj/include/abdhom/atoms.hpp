#ifndef ABDHOM_ATOMS_HPP
#define ABDHOM_ATOMS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "abdhom/bits.hpp"
#include "abdhom/formula.hpp"
#include "abdhom/model.hpp"

namespace abdhom {

enum class AStatus : std::uint8_t { Pending = 0, Satisfied = 1, Forbidden = 2 };

inline char status_char(AStatus s) { return s == AStatus::Pending ? 'P' : s == AStatus::Satisfied ? 'S' : 'F'; }

inline AStatus status_from_char(char c) {
  switch (c) {
    case 'P': return AStatus::Pending;
    case 'S': return AStatus::Satisfied;
    case 'F': return AStatus::Forbidden;
    default: throw std::invalid_argument(std::string("bad status character '") + c + "'");
  }
}

// F is a membership vector over the closure pairs (bit i set iff the
// positive formula of pair i is in F); alpha is indexed like TF_A.
struct Atom {
  Bits f;
  std::vector<AStatus> alpha;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const {
    std::size_t h = a.f.hash();
    for (AStatus s : a.alpha) hash_mix(h, static_cast<std::size_t>(s));
    return h;
  }
};

// Counts entering Delta-up; `true_letters` is the number of letters p with p in F.
struct DeltaTerms {
  std::size_t b_args, req_b, obs_only_b, d_args, req_d, true_letters, pending;
};

inline std::size_t delta_up_value(const DeltaTerms& t) {
  return (2 * t.b_args - 2 * t.req_b - t.obs_only_b) + (t.d_args - t.req_d) + t.true_letters + t.pending;
}

/*
 * Atom operations for a fixed closure. Request/observable/box sets are
 * returned as bitsets over the list of R-diamonds of the closure: bit j
 * refers to the j-th <R>psi and stands for psi (req, obs) or !psi (box).
 */
class AtomSpace {
public:
  explicit AtomSpace(const Formula& phi) : cl_(phi) {
    for (std::size_t i = 0; i < cl_.pair_count(); ++i) {
      Op op = cl_.pair(i).formula.op();
      if (op == Op::Prop || cl_.pair(i).formula.is_diamond()) free_.push_back(i);
    }
  }

  const Closure& closure() const { return cl_; }
  std::size_t arity(Rel r) const { return cl_.diamonds(r).size(); }
  std::size_t tfa_size() const { return arity(Rel::A); }

  bool holds(const Atom& a, Lit l) const { return holds(a.f, l); }
  static bool holds(const Bits& f, Lit l) {
    if (l == kLitTrue) return true;
    if (l == kLitFalse) return false;
    return f.test(l / 2) != ((l & 1u) != 0);
  }
  bool holds(const Atom& a, const Formula& g) const { return holds(a, cl_.lit_of(g)); }

  Lit diamond_lit(Rel r, std::size_t j) const { return static_cast<Lit>(2 * cl_.diamonds(r)[j]); }
  Lit arg_lit(Rel r, std::size_t j) const { return cl_.pair(cl_.diamonds(r)[j]).lhs; }

  bool is_initial(const Atom& a) const { return holds(a, cl_.pi_lit()); }

  Bits req(const Atom& a, Rel r) const {
    Bits out(arity(r));
    for (std::size_t j = 0; j < arity(r); ++j) out.set(j, holds(a, diamond_lit(r, j)));
    return out;
  }
  Bits obs(const Atom& a, Rel r) const {
    Bits out(arity(r));
    for (std::size_t j = 0; j < arity(r); ++j) out.set(j, holds(a, arg_lit(r, j)));
    return out;
  }
  Bits box(const Atom& a, Rel r) const {
    Bits out(arity(r));
    for (std::size_t j = 0; j < arity(r); ++j) out.set(j, !holds(a, diamond_lit(r, j)));
    return out;
  }

  // Formula-level views of the same sets.
  std::vector<Formula> req_formulas(const Atom& a, Rel r) const { return pick(req(a, r), r, false); }
  std::vector<Formula> obs_formulas(const Atom& a, Rel r) const { return pick(obs(a, r), r, false); }
  std::vector<Formula> box_formulas(const Atom& a, Rel r) const { return pick(box(a, r), r, true); }

  Bits props(const Atom& a) const {
    Bits out(cl_.props().size());
    for (std::size_t k = 0; k < cl_.props().size(); ++k) out.set(k, a.f.test(cl_.props()[k]));
    return out;
  }

  bool b_step(const Atom& f, const Atom& g) const {
    if (req(f, Rel::B) != (req(g, Rel::B) | obs(g, Rel::B))) return false;
    for (std::size_t j = 0; j < tfa_size(); ++j) {
      AStatus b = g.alpha[j];
      bool psi_in_f = holds(f, arg_lit(Rel::A, j));
      if ((b != AStatus::Pending || !psi_in_f) && f.alpha[j] != b) return false;
    }
    return true;
  }

  bool d_step(const Atom& f, const Atom& g) const {
    return (req(g, Rel::D) | obs(g, Rel::D)).subset_of(req(f, Rel::D));
  }

  bool is_final(const Atom& a) const {
    for (AStatus s : a.alpha)
      if (s == AStatus::Pending) return false;
    return true;
  }
  bool is_b_reflexive(const Atom& a) const { return b_step(a, a); }
  bool is_d_reflexive(const Atom& a) const { return d_step(a, a); }

  // Same alpha and same F up to <A>-requests: letters, B- and D-requests fix the rest of F.
  bool equiv_mod_A(const Atom& a, const Atom& b) const {
    return a.alpha == b.alpha && props(a) == props(b) && req(a, Rel::B) == req(b, Rel::B) &&
           req(a, Rel::D) == req(b, Rel::D);
  }

  std::size_t delta_up(const Atom& a) const {
    Bits rb = req(a, Rel::B);
    Bits ob = obs(a, Rel::B);
    std::size_t pending = 0;
    for (AStatus s : a.alpha) pending += s == AStatus::Pending;
    return delta_up_value({arity(Rel::B), rb.count(), (ob - rb).count(), arity(Rel::D), req(a, Rel::D).count(),
                           props(a).count(), pending});
  }

  // Names of the atom conditions violated by (a.f, a.alpha); empty iff a is an atom.
  std::vector<std::string> violations(const Atom& a) const {
    std::vector<std::string> out;
    if (a.f.size() != cl_.pair_count() || a.alpha.size() != tfa_size()) {
      out.push_back("shape");
      return out;
    }
    for (std::size_t i : cl_.ors()) {
      const auto& p = cl_.pair(i);
      if (a.f.test(i) != (holds(a, p.lhs) || holds(a, p.rhs))) out.push_back("F-ii");
    }
    bool pi_in = is_initial(a);
    for (std::size_t j = 0; j < tfa_size(); ++j) {
      bool psi = holds(a, arg_lit(Rel::A, j));
      bool dia = holds(a, diamond_lit(Rel::A, j));
      AStatus s = a.alpha[j];
      if (pi_in && !dia && psi) out.push_back("F-iii");
      if (s == AStatus::Forbidden && psi) out.push_back("alpha-i");
      if (psi && s != AStatus::Satisfied) out.push_back("alpha-ii");
      if (pi_in && s == AStatus::Pending && !(dia && !psi)) out.push_back("alpha-iii");
      if (pi_in && s == AStatus::Satisfied && !psi) out.push_back("alpha-iv");
      if (pi_in && dia && !psi && s != AStatus::Pending) out.push_back("alpha-v");
    }
    return out;
  }
  bool is_atom(const Atom& a) const { return violations(a).empty(); }

  // Completes F from the letters and diamonds given in `free_bits`.
  Bits complete(const Bits& free_bits) const {
    Bits f(cl_.pair_count());
    for (std::size_t k = 0; k < free_.size(); ++k) f.set(free_[k], free_bits.test(k));
    for (std::size_t i : cl_.ors()) f.set(i, holds(f, cl_.pair(i).lhs) || holds(f, cl_.pair(i).rhs));
    return f;
  }

  // Statuses allowed for TF_A element j given F.
  std::vector<AStatus> allowed_status(const Bits& f, std::size_t j) const {
    bool psi = holds(f, arg_lit(Rel::A, j));
    if (psi) return {AStatus::Satisfied};
    if (!holds(f, cl_.pi_lit())) return {AStatus::Pending, AStatus::Satisfied, AStatus::Forbidden};
    if (holds(f, diamond_lit(Rel::A, j))) return {AStatus::Pending};
    return {AStatus::Forbidden};
  }

  std::size_t free_count() const { return free_.size(); }

  std::vector<Atom> enumerate(std::size_t max_free = 24) const {
    if (free_.size() > max_free) throw std::length_error("atom universe too large to enumerate");
    std::vector<Atom> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_.size()); ++mask) {
      Bits fb(free_.size());
      for (std::size_t k = 0; k < free_.size(); ++k) fb.set(k, mask >> k & 1u);
      Bits f = complete(fb);
      bool ok = true;
      if (holds(f, cl_.pi_lit()))
        for (std::size_t j = 0; j < tfa_size() && ok; ++j)
          ok = holds(f, diamond_lit(Rel::A, j)) || !holds(f, arg_lit(Rel::A, j));
      if (!ok) continue;
      std::vector<std::vector<AStatus>> choices;
      for (std::size_t j = 0; j < tfa_size(); ++j) choices.push_back(allowed_status(f, j));
      std::vector<std::size_t> pos(tfa_size(), 0);
      for (;;) {
        Atom a{f, std::vector<AStatus>(tfa_size())};
        for (std::size_t j = 0; j < tfa_size(); ++j) a.alpha[j] = choices[j][pos[j]];
        out.push_back(std::move(a));
        std::size_t j = 0;
        while (j < tfa_size() && ++pos[j] == choices[j].size()) pos[j++] = 0;
        if (j == tfa_size()) break;
      }
    }
    return out;
  }

  // Atom labelling interval [x,y] of a model; alpha follows the history of column x.
  Atom atom_of(Evaluator& ev, std::size_t x, std::size_t y) const {
    Atom a{Bits(cl_.pair_count()), std::vector<AStatus>(tfa_size(), AStatus::Forbidden)};
    for (std::size_t i = 0; i < cl_.pair_count(); ++i) a.f.set(i, ev.holds(static_cast<Lit>(2 * i), x, y));
    for (std::size_t j = 0; j < tfa_size(); ++j) {
      Lit psi = arg_lit(Rel::A, j);
      for (std::size_t y2 = x; y2 <= ev.n(); ++y2) {
        if (ev.holds(psi, x, y2)) {
          a.alpha[j] = y2 <= y ? AStatus::Satisfied : AStatus::Pending;
          break;
        }
      }
    }
    return a;
  }

  Atom atom_of(const HomModel& m, Interval iv) const {
    m.check(iv);
    Evaluator ev(m, cl_);
    return atom_of(ev, iv.x, iv.y);
  }

  std::vector<std::string> members(const Atom& a) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < cl_.pair_count(); ++i) out.push_back(to_string(a.f.test(i) ? cl_.at(2 * i) : cl_.at(2 * i + 1)));
    return out;
  }

  std::string alpha_string(const Atom& a) const {
    std::string s;
    for (AStatus st : a.alpha) s += status_char(st);
    return s;
  }

  std::string describe(const Atom& a) const {
    std::string s = "{";
    auto m = members(a);
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ", " : "") + m[i];
    s += "}";
    if (tfa_size()) s += " alpha=" + alpha_string(a);
    return s;
  }

private:
  std::vector<Formula> pick(const Bits& b, Rel r, bool negate) const {
    std::vector<Formula> out;
    for (std::size_t j = 0; j < arity(r); ++j) {
      if (!b.test(j)) continue;
      Formula g = cl_.formula_of(arg_lit(r, j));
      out.push_back(negate ? !g : g);
    }
    return out;
  }

  Closure cl_;
  std::vector<std::size_t> free_;
};

}  // namespace abdhom

#endif
