#ifndef ABDHOM_SOLVER_HPP
#define ABDHOM_SOLVER_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "abdhom/analysis.hpp"

namespace abdhom {

enum class Verdict { Sat, UnsatWithinBound, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::UnsatWithinBound: return "UNSAT_WITHIN_BOUND";
    default: return "UNKNOWN";
  }
}

struct SolveOptions {
  std::size_t cap = 64;
  std::size_t max_states = 4'000'000;
  // Memory guard: columns stored across one level (each state keeps one per point placed).
  std::size_t max_cells = 8'000'000;
  unsigned jobs = 1;
  bool all_intervals = false;
};

struct SolveResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<HomModel> model;
  std::optional<Compass> compass;
  // True when the search ran out of extendable suffixes: no model of any size.
  bool refuted = false;
  std::size_t states = 0;
  std::size_t levels = 0;
  std::size_t blueprint_repetitions = 0;
};

// log2(log2(bound)) for the small-model bound on N: the bound is 2^(2^value).
inline double small_model_bound_loglog(std::size_t size) {
  double s = static_cast<double>(size);
  return std::log2(5 * s) + (10 * s * s + 4 * s) * std::log2(6.0) + (10 * s + 4) * std::log2(2.0 / 3.0);
}

inline std::string small_model_bound_text(std::size_t size) {
  std::ostringstream os;
  os << "2^(5*" << size << " * 6^(10*" << size << "^2+4*" << size << ") * (2/3)^(10*" << size
     << "+4)) = 2^2^" << small_model_bound_loglog(size);
  return os.str();
}

namespace detail {

// Formulas that must hold on fixed families of intervals of every model,
// read off the top-level conjunction.
struct Obligations {
  std::vector<Lit> all;      // every interval
  std::vector<Lit> below_n;  // every interval starting before N
  std::vector<Lit> at_n;     // the point interval [N,N]
  std::vector<Lit> inner;    // strict sub-intervals of [0,N] other than prefixes
};

inline void split_conj(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::Not && f.child().op() == Op::Or) {
    split_conj(!f.child().left(), out);
    split_conj(!f.child().right(), out);
  } else if (f.op() != Op::True) {
    out.push_back(f);
  }
}

inline std::optional<Formula> box_arg(const Formula& f, Op diamond) {
  if (f.op() == Op::Not && f.child().op() == diamond) return !f.child().child();
  return std::nullopt;
}

inline Obligations obligations(const Closure& cl) {
  auto closed = [](std::vector<Formula> seed, Op via) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < seed.size(); ++i) {
      if (std::find(out.begin(), out.end(), seed[i]) != out.end()) continue;
      out.push_back(seed[i]);
      if (auto a = box_arg(seed[i], via)) split_conj(*a, seed);
    }
    return out;
  };
  auto args = [](const std::vector<Formula>& fs, Op via) {
    std::vector<Formula> out;
    for (const auto& f : fs)
      if (auto a = box_arg(f, via)) split_conj(*a, out);
    return out;
  };
  std::vector<Formula> top;
  split_conj(cl.phi(), top);
  std::vector<Formula> prefix = closed(args(top, Op::DiamondB), Op::DiamondB);
  std::vector<Formula> below = closed(args(prefix, Op::DiamondA), Op::DiamondA);
  std::vector<Formula> all = closed(args(below, Op::DiamondA), Op::DiamondA);
  std::vector<Formula> at_n = closed(args(top, Op::DiamondA), Op::DiamondA);
  std::vector<Formula> inner = args(top, Op::DiamondD);
  auto lits = [&cl](const std::vector<Formula>& fs) {
    std::vector<Lit> out;
    for (const auto& f : fs) out.push_back(cl.lit_of(f));
    return out;
  };
  return {lits(all), lits(below), lits(at_n), lits(inner)};
}

}  // namespace detail

/*
 * Bounded search for a model, placing points from right to left. After
 * points x..N are fixed every interval inside [x,N] has a determined atom,
 * and the next column only depends on a per-row summary:
 *   p[t]  letters true on all of x..t,
 *   a[t]  the <A>-formulas true on [t,t],
 *   o[t]  the <D>-arguments true on some interval inside [x,t].
 * Levels are searched in order of size, so the first model found is of
 * least N. Suffixes with equal summaries are merged.
 */
class Solver {
public:
  explicit Solver(const Formula& phi) : sp_(phi), cl_(sp_.closure()) {
    alphabet_ = letters(phi);
    std::sort(alphabet_.begin(), alphabet_.end());
    if (alphabet_.size() > 16) throw std::length_error("too many proposition letters for the solver");
    for (std::size_t i = 0; i < cl_.pair_count(); ++i) {
      const Formula& f = cl_.pair(i).formula;
      if (f.op() == Op::Prop)
        prop_bit_.push_back(static_cast<std::size_t>(
            std::lower_bound(alphabet_.begin(), alphabet_.end(), f.letter()) - alphabet_.begin()));
      else
        prop_bit_.push_back(0);
      rel_index_.push_back(0);
    }
    for (Rel r : {Rel::A, Rel::B, Rel::D})
      for (std::size_t j = 0; j < cl_.diamonds(r).size(); ++j) rel_index_[cl_.diamonds(r)[j]] = j;
    ob_ = detail::obligations(cl_);
  }

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  const AtomSpace& space() const { return sp_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  SolveResult solve(const SolveOptions& opt) const {
    SolveResult res;
    std::vector<std::vector<Node>> history;
    std::vector<State> level;
    level.push_back(State{});  // empty suffix, expanded into level 1
    for (std::size_t k = 1; k <= opt.cap + 1; ++k) {
      const std::size_t room = opt.max_states > res.states ? opt.max_states - res.states : 0;
      std::optional<std::vector<State>> expanded = expand(level, k == 1, opt, std::min(room, opt.max_cells / k));
      if (!expanded) {
        res.verdict = Verdict::Unknown;
        return res;
      }
      std::vector<State> next = std::move(*expanded);
      res.states += next.size();
      res.levels = k;
      for (const auto& s : next)
        if (s.accepting) {
          finish(res, history, s, opt);
          return res;
        }
      next.erase(std::remove_if(next.begin(), next.end(), [](const State& s) { return !s.extendable; }), next.end());
      if (next.empty()) {
        res.verdict = Verdict::UnsatWithinBound;
        res.refuted = true;
        return res;
      }
      history.emplace_back();
      for (const auto& s : next) history.back().push_back({s.label, s.parent});
      level = std::move(next);
    }
    res.verdict = Verdict::UnsatWithinBound;
    return res;
  }

private:
  struct State {
    std::vector<std::uint32_t> p;
    std::vector<Bits> a;
    std::vector<Bits> o;
    bool inner_ok = true;  // obligations on strict sub-intervals hold on the leftmost column
    // bookkeeping, not part of the identity
    std::uint32_t label = 0;
    std::size_t parent = 0;
    bool accepting = false;
    bool extendable = true;

    bool same(const State& s) const { return inner_ok == s.inner_ok && p == s.p && a == s.a && o == s.o; }
  };
  struct Node {
    std::uint32_t label;
    std::size_t parent;
  };
  struct StateHash {
    std::size_t operator()(const State* s) const {
      std::size_t h = s->inner_ok;
      for (auto v : s->p) hash_mix(h, v);
      for (const auto& b : s->a) hash_mix(h, b.hash());
      for (const auto& b : s->o) hash_mix(h, b.hash());
      return h;
    }
  };
  struct StateEq {
    bool operator()(const State* a, const State* b) const { return a->same(*b); }
  };

  static bool lit_true(const Bits& f, Lit l) { return AtomSpace::holds(f, l); }

  // Builds column x' = x-1 for `label` on top of suffix `s` (length len).
  State extend(const State& s, std::uint32_t label, bool first, const SolveOptions& opt) const {
    const std::size_t len = s.p.size();
    const std::size_t pairs = cl_.pair_count();
    std::vector<std::uint32_t> p(len + 1);
    p[0] = label;
    for (std::size_t j = 1; j <= len; ++j) p[j] = label & s.p[j - 1];
    std::vector<Bits> col(len + 1, Bits(pairs));
    for (std::size_t i = 0; i < pairs; ++i) {
      const Closure::Pair& pr = cl_.pair(i);
      switch (pr.formula.op()) {
        case Op::Prop:
          for (std::size_t j = 0; j <= len; ++j) col[j].set(i, p[j] >> prop_bit_[i] & 1u);
          break;
        case Op::Or:
          for (std::size_t j = 0; j <= len; ++j) col[j].set(i, lit_true(col[j], pr.lhs) || lit_true(col[j], pr.rhs));
          break;
        case Op::DiamondA: {
          bool any = false;
          for (std::size_t j = 0; j <= len && !any; ++j) any = lit_true(col[j], pr.lhs);
          col[0].set(i, any);
          for (std::size_t j = 1; j <= len; ++j) col[j].set(i, s.a[j - 1].test(rel_index_[i]));
          break;
        }
        case Op::DiamondB: {
          bool seen = false;
          for (std::size_t j = 0; j <= len; ++j) {
            col[j].set(i, seen);
            seen = seen || lit_true(col[j], pr.lhs);
          }
          break;
        }
        case Op::DiamondD:
          for (std::size_t j = 2; j <= len; ++j) col[j].set(i, s.o[j - 2].test(rel_index_[i]));
          break;
        default: break;
      }
    }

    State out;
    out.p = std::move(p);
    out.a.reserve(len + 1);
    out.o.reserve(len + 1);
    const auto& adia = cl_.diamonds(Rel::A);
    Bits a0(adia.size());
    for (std::size_t k = 0; k < adia.size(); ++k) a0.set(k, col[0].test(adia[k]));
    out.a.push_back(std::move(a0));
    for (const auto& b : s.a) out.a.push_back(b);
    const auto& ddia = cl_.diamonds(Rel::D);
    for (std::size_t j = 0; j <= len; ++j) {
      Bits ob(ddia.size());
      for (std::size_t k = 0; k < ddia.size(); ++k) ob.set(k, lit_true(col[j], cl_.pair(ddia[k]).lhs));
      if (j > 0) {
        ob |= out.o[j - 1];
        ob |= s.o[j - 1];
      }
      out.o.push_back(std::move(ob));
    }

    out.label = label;
    if (opt.all_intervals) {
      for (std::size_t j = 0; j <= len && !out.accepting; ++j) out.accepting = lit_true(col[j], cl_.root());
      return out;
    }
    out.accepting = lit_true(col[len], cl_.root());
    auto all_hold = [&](const std::vector<Lit>& ls, std::size_t j) {
      for (Lit l : ls)
        if (!lit_true(col[j], l)) return false;
      return true;
    };
    bool ok = true;
    if (first) {
      ok = all_hold(ob_.all, 0) && all_hold(ob_.at_n, 0);
    } else {
      for (std::size_t j = 0; j <= len && ok; ++j) ok = all_hold(ob_.all, j) && all_hold(ob_.below_n, j);
    }
    out.extendable = ok;
    for (std::size_t j = 0; j < len && out.inner_ok; ++j) out.inner_ok = all_hold(ob_.inner, j);
    return out;
  }

  // Next level, or nullopt once more than `budget` states survive a chunk's deduplication.
  std::optional<std::vector<State>> expand(const std::vector<State>& level, bool first, const SolveOptions& opt,
                                           std::size_t budget) const {
    const std::uint32_t choices = 1u << alphabet_.size();
    std::atomic<bool> over{false};
    auto work = [&](std::size_t lo, std::size_t hi, std::vector<State>& out) {
      std::unordered_set<const State*, StateHash, StateEq> local;
      for (std::size_t i = lo; i < hi && !over; ++i) {
        if (!first && !level[i].inner_ok) continue;
        for (std::uint32_t lab = 0; lab < choices; ++lab) {
          State s = extend(level[i], lab, first, opt);
          s.parent = i;
          if (!s.accepting && !s.extendable) continue;
          if (!s.accepting && local.count(&s)) continue;
          if (out.size() == out.capacity()) {
            // Pointers into `out` are about to be invalidated.
            out.reserve(std::max<std::size_t>(64, 2 * out.size()));
            local.clear();
            for (const auto& t : out)
              if (!t.accepting) local.insert(&t);
          }
          out.push_back(std::move(s));
          if (!out.back().accepting) local.insert(&out.back());
          if (out.size() > budget) {
            over = true;
            return;
          }
        }
      }
    };
    std::vector<std::vector<State>> parts(std::max(1u, opt.jobs));
    if (parts.size() == 1 || level.size() < 2 * parts.size()) {
      work(0, level.size(), parts[0]);
    } else {
      std::vector<std::thread> ts;
      std::size_t chunk = (level.size() + parts.size() - 1) / parts.size();
      for (std::size_t t = 0; t < parts.size(); ++t) {
        std::size_t lo = std::min(level.size(), t * chunk), hi = std::min(level.size(), lo + chunk);
        ts.emplace_back([&, lo, hi, t] { work(lo, hi, parts[t]); });
      }
      for (auto& t : ts) t.join();
    }
    if (over) return std::nullopt;
    std::vector<State> next;
    std::unordered_set<const State*, StateHash, StateEq> seen;
    for (auto& part : parts)
      for (auto& s : part) next.push_back(std::move(s));
    std::vector<State> uniq;
    uniq.reserve(next.size());
    for (auto& s : next) {
      if (s.accepting) {
        uniq.push_back(std::move(s));
        continue;
      }
      if (seen.count(&s)) continue;
      uniq.push_back(std::move(s));
      seen.insert(&uniq.back());
    }
    if (uniq.size() > budget) return std::nullopt;
    return uniq;
  }

  void finish(SolveResult& res, const std::vector<std::vector<Node>>& history, const State& last,
              const SolveOptions& opt) const {
    std::vector<std::set<std::string>> pts;
    auto push = [&](std::uint32_t label) {
      std::set<std::string> lab;
      for (std::size_t b = 0; b < alphabet_.size(); ++b)
        if (label >> b & 1u) lab.insert(alphabet_[b]);
      pts.push_back(std::move(lab));
    };
    push(last.label);
    std::size_t idx = last.parent;
    for (std::size_t lvl = history.size(); lvl > 0; --lvl) {
      const Node& nd = history[lvl - 1][idx];
      push(nd.label);
      idx = nd.parent;
    }
    const std::size_t n = pts.size() - 1;
    HomModel m(n, std::move(pts));
    bool ok = opt.all_intervals ? verify_somewhere(m, cl_.phi()) : verify(m, cl_.phi());
    if (!ok) throw std::logic_error("solver produced a model that does not verify");
    res.verdict = Verdict::Sat;
    if (!opt.all_intervals) {
      Compass c = from_model(sp_, m);
      if (!validate(sp_, c).empty()) throw std::logic_error("solver produced an invalid compass");
      res.blueprint_repetitions = CompassAnalysis(sp_, c).repetitions().size();
      res.compass = std::move(c);
    }
    res.model = std::move(m);
  }

  AtomSpace sp_;
  const Closure& cl_;
  std::vector<std::string> alphabet_;
  std::vector<std::size_t> prop_bit_;
  std::vector<std::size_t> rel_index_;
  detail::Obligations ob_;
};

inline SolveResult solve(const Formula& phi, const SolveOptions& opt) { return Solver(phi).solve(opt); }

inline std::optional<Compass> solve(const Formula& phi, std::size_t n_cap) {
  SolveOptions opt;
  opt.cap = n_cap;
  return solve(phi, opt).compass;
}

}  // namespace abdhom

#endif
