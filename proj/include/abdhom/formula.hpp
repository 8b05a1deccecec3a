#ifndef ABDHOM_FORMULA_HPP
#define ABDHOM_FORMULA_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace abdhom {

enum class Op : std::uint8_t { True, Prop, Not, Or, DiamondA, DiamondB, DiamondD };
enum class Rel : std::uint8_t { A, B, D };

inline char rel_char(Rel r) { return r == Rel::A ? 'A' : r == Rel::B ? 'B' : 'D'; }

/*
 * Immutable formula over the primitive connectives. `True` is kept as a
 * nullary node so that pi (= [B] false) and the constants need no reserved
 * letter; it never enters the closure.
 */
class Formula {
  struct Node {
    Op op;
    std::string letter;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash;
    std::size_t occ;
  };
  std::shared_ptr<const Node> node_;

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula make(Op op, std::string letter, const Formula* a, const Formula* b) {
    std::size_t h = std::hash<std::string>{}(letter) ^ (static_cast<std::size_t>(op) * 0x9e3779b97f4a7c15ULL);
    std::size_t occ = op == Op::True ? 0 : 1;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    if (a) { mix(a->hash()); occ += a->node_->occ; }
    if (b) { mix(b->hash()); occ += b->node_->occ; }
    return Formula(std::make_shared<const Node>(Node{op, std::move(letter), a ? a->node_ : nullptr,
                                                     b ? b->node_ : nullptr, h, occ}));
  }

public:
  Formula() : Formula(top()) {}

  static Formula top() { return make(Op::True, {}, nullptr, nullptr); }
  static Formula prop(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty proposition letter");
    return make(Op::Prop, std::move(name), nullptr, nullptr);
  }
  static Formula neg(const Formula& f) {
    if (f.op() == Op::Not) return f.child();
    return make(Op::Not, {}, &f, nullptr);
  }
  static Formula disj(const Formula& a, const Formula& b) { return make(Op::Or, {}, &a, &b); }
  static Formula diamond(Rel r, const Formula& f) {
    Op op = r == Rel::A ? Op::DiamondA : r == Rel::B ? Op::DiamondB : Op::DiamondD;
    return make(op, {}, &f, nullptr);
  }

  Op op() const { return node_->op; }
  const std::string& letter() const { return node_->letter; }
  Formula child() const { return Formula(node_->lhs); }
  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }
  std::size_t hash() const { return node_->hash; }
  // Number of AST nodes, not counting `true` leaves.
  std::size_t occurrences() const { return node_->occ; }

  bool is_diamond() const { return op() == Op::DiamondA || op() == Op::DiamondB || op() == Op::DiamondD; }
  Rel rel() const {
    if (!is_diamond()) throw std::logic_error("not a diamond");
    return op() == Op::DiamondA ? Rel::A : op() == Op::DiamondB ? Rel::B : Rel::D;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.op() != b.op() || a.letter() != b.letter()) return false;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.lhs && !(Formula(x.lhs) == Formula(y.lhs))) return false;
    if (x.rhs && !(Formula(x.rhs) == Formula(y.rhs))) return false;
    return true;
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---------------------------------------------------------------------------
// Derived forms
// ---------------------------------------------------------------------------

inline Formula top() { return Formula::top(); }
inline Formula bottom() { return Formula::neg(Formula::top()); }
inline Formula prop(std::string name) { return Formula::prop(std::move(name)); }
inline Formula operator!(const Formula& f) { return Formula::neg(f); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disj(a, b); }
inline Formula operator&(const Formula& a, const Formula& b) { return Formula::neg(Formula::disj(Formula::neg(a), Formula::neg(b))); }
inline Formula implies(const Formula& a, const Formula& b) { return Formula::disj(Formula::neg(a), b); }
inline Formula iff(const Formula& a, const Formula& b) { return implies(a, b) & implies(b, a); }
inline Formula diamond(Rel r, const Formula& f) { return Formula::diamond(r, f); }
inline Formula box(Rel r, const Formula& f) { return !Formula::diamond(r, !f); }
inline Formula dA(const Formula& f) { return diamond(Rel::A, f); }
inline Formula dB(const Formula& f) { return diamond(Rel::B, f); }
inline Formula dD(const Formula& f) { return diamond(Rel::D, f); }
inline Formula bA(const Formula& f) { return box(Rel::A, f); }
inline Formula bB(const Formula& f) { return box(Rel::B, f); }
inline Formula bD(const Formula& f) { return box(Rel::D, f); }
inline Formula pi() { return box(Rel::B, bottom()); }
inline Formula global(const Formula& f) { return f & bA(f) & bB(f) & bB(bA(f)); }

inline Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = r & fs[i];
  return r;
}

inline Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = r | fs[i];
  return r;
}

inline bool is_pi(const Formula& f) {
  return f.op() == Op::Not && f.child().op() == Op::DiamondB && f.child().child().op() == Op::True;
}

// Collects proposition letters in first-occurrence order.
inline void collect_letters(const Formula& f, std::vector<std::string>& out) {
  switch (f.op()) {
    case Op::True: return;
    case Op::Prop:
      for (const auto& s : out)
        if (s == f.letter()) return;
      out.push_back(f.letter());
      return;
    case Op::Or:
      collect_letters(f.left(), out);
      collect_letters(f.right(), out);
      return;
    default: collect_letters(f.child(), out);
  }
}

inline std::vector<std::string> letters(const Formula& f) {
  std::vector<std::string> out;
  collect_letters(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

inline std::string to_string(const Formula& f) {
  switch (f.op()) {
    case Op::True: return "true";
    case Op::Prop: return f.letter();
    case Op::Or: return "(" + to_string(f.left()) + " | " + to_string(f.right()) + ")";
    case Op::DiamondA:
    case Op::DiamondB:
    case Op::DiamondD: return std::string("<") + rel_char(f.rel()) + "> " + to_string(f.child());
    case Op::Not: break;
  }
  Formula g = f.child();
  if (g.op() == Op::True) return "false";
  if (is_pi(f)) return "pi";
  if (g.is_diamond()) return std::string("[") + rel_char(g.rel()) + "] " + to_string(!g.child());
  if (g.op() == Op::Or && g.left().op() == Op::Not && g.right().op() == Op::Not)
    return "(" + to_string(g.left().child()) + " & " + to_string(g.right().child()) + ")";
  return "!" + to_string(g);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

enum class Tok { Ident, Not, And, Or, Imp, Iff, DiaA, DiaB, DiaD, BoxA, BoxB, BoxD, BoxG, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      std::size_t l = line_, c = col_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = s_[i_];
      if (is_ident_start(ch)) {
        std::size_t j = i_;
        while (j < s_.size() && is_ident_char(s_[j])) ++j;
        out.push_back({Tok::Ident, std::string(s_.substr(i_, j - i_)), l, c});
        advance(j - i_);
        continue;
      }
      auto emit = [&](Tok k, std::size_t n) {
        out.push_back({k, std::string(s_.substr(i_, n)), l, c});
        advance(n);
      };
      if (ch == '!') emit(Tok::Not, 1);
      else if (ch == '&') emit(Tok::And, 1);
      else if (ch == '|') emit(Tok::Or, 1);
      else if (ch == '(') emit(Tok::LParen, 1);
      else if (ch == ')') emit(Tok::RParen, 1);
      else if (starts("->")) emit(Tok::Imp, 2);
      else if (starts("<->")) emit(Tok::Iff, 3);
      else if (starts("<A>")) emit(Tok::DiaA, 3);
      else if (starts("<B>")) emit(Tok::DiaB, 3);
      else if (starts("<D>")) emit(Tok::DiaD, 3);
      else if (starts("[A]")) emit(Tok::BoxA, 3);
      else if (starts("[B]")) emit(Tok::BoxB, 3);
      else if (starts("[D]")) emit(Tok::BoxD, 3);
      else if (starts("[G]")) emit(Tok::BoxG, 3);
      else {
        std::size_t j = i_ + 1;
        while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && !is_ident_char(s_[j]) &&
               s_[j] != '(' && s_[j] != ')')
          ++j;
        throw ParseError("unknown operator token '" + std::string(s_.substr(i_, j - i_)) + "'", l, c);
      }
    }
  }

private:
  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  bool starts(std::string_view p) const { return s_.substr(i_, p.size()) == p; }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
  }

  void skip_space() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance(1);
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return t_[k_]; }
  const Token& take() { return t_[k_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (peek().kind == Tok::Iff) {
      take();
      f = iff(f, parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (peek().kind == Tok::Imp) {
      take();
      return implies(f, parse_imp());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      take();
      f = f | parse_and();
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::And) {
      take();
      f = f & parse_unary();
    }
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return !parse_unary();
      case Tok::DiaA: take(); return dA(parse_unary());
      case Tok::DiaB: take(); return dB(parse_unary());
      case Tok::DiaD: take(); return dD(parse_unary());
      case Tok::BoxA: take(); return bA(parse_unary());
      case Tok::BoxB: take(); return bB(parse_unary());
      case Tok::BoxD: take(); return bD(parse_unary());
      case Tok::BoxG: take(); return global(parse_unary());
      default: return parse_atom();
    }
  }

  Formula parse_atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::Ident) {
      take();
      if (tok.text == "true") return top();
      if (tok.text == "false") return bottom();
      if (tok.text == "pi") return pi();
      return prop(tok.text);
    }
    if (tok.kind == Tok::LParen) {
      take();
      Formula f = parse_iff();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      take();
      return f;
    }
    if (tok.kind == Tok::End) fail("unexpected end of input");
    fail("unexpected '" + tok.text + "'");
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

/*
 * Literal encoding: 2*i is the positive formula of pair i, 2*i+1 its
 * negation. The constants true/false get two sentinel literals.
 */
using Lit = std::uint32_t;
inline constexpr Lit kLitTrue = 0xfffffffeu;
inline constexpr Lit kLitFalse = 0xffffffffu;
inline Lit lit_neg(Lit l) {
  if (l == kLitTrue) return kLitFalse;
  if (l == kLitFalse) return kLitTrue;
  return l ^ 1u;
}

class Closure {
public:
  struct Pair {
    Formula formula;  // positive member: Prop, Or or a diamond
    Lit lhs = kLitTrue;
    Lit rhs = kLitTrue;
  };

  explicit Closure(const Formula& phi) : phi_(phi) {
    root_ = visit(phi);
    Formula db_top = dB(top());
    if (!lookup_.count(db_top)) add_pair(db_top, kLitTrue, kLitTrue);
    pi_ = lit_of(pi());
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const Formula& f = pairs_[i].formula;
      if (f.op() == Op::Prop) props_.push_back(i);
      if (f.op() == Op::Or) ors_.push_back(i);
      if (f.is_diamond()) diamonds_[static_cast<int>(f.rel())].push_back(i);
    }
  }

  const Formula& phi() const { return phi_; }
  Lit root() const { return root_; }
  Lit pi_lit() const { return pi_; }

  // Number of formulas (positive and negated).
  std::size_t size() const { return 2 * pairs_.size(); }
  std::size_t pair_count() const { return pairs_.size(); }
  const Pair& pair(std::size_t i) const { return pairs_[i]; }

  // Formula at closure position (2*pair + negated).
  Formula at(std::size_t idx) const {
    const Formula& f = pairs_[idx / 2].formula;
    return idx % 2 ? !f : f;
  }
  std::vector<Formula> formulas() const {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
  }

  std::optional<std::size_t> index_of(const Formula& f) const {
    bool negated = f.op() == Op::Not;
    auto it = lookup_.find(negated ? f.child() : f);
    if (it == lookup_.end()) return std::nullopt;
    return 2 * it->second + (negated ? 1 : 0);
  }
  bool contains(const Formula& f) const { return index_of(f).has_value(); }

  // Literal for any subformula, including the constants.
  Lit lit_of(const Formula& f) const {
    if (f.op() == Op::True) return kLitTrue;
    if (f.op() == Op::Not && f.child().op() == Op::True) return kLitFalse;
    auto idx = index_of(f);
    if (!idx) throw std::out_of_range("formula not in closure: " + to_string(f));
    return static_cast<Lit>(*idx);
  }

  Formula formula_of(Lit l) const {
    if (l == kLitTrue) return top();
    if (l == kLitFalse) return bottom();
    return at(l);
  }

  const std::vector<std::size_t>& props() const { return props_; }
  const std::vector<std::size_t>& ors() const { return ors_; }
  const std::vector<std::size_t>& diamonds(Rel r) const { return diamonds_[static_cast<int>(r)]; }

  // TF_A: arguments of the <A>-formulas, in closure order.
  std::vector<Formula> a_requests() const {
    std::vector<Formula> out;
    for (std::size_t i : diamonds(Rel::A)) out.push_back(pairs_[i].formula.child());
    return out;
  }

private:
  Lit visit(const Formula& f) {
    if (f.op() == Op::True) return kLitTrue;
    if (f.op() == Op::Not) return lit_neg(visit(f.child()));
    if (auto it = lookup_.find(f); it != lookup_.end()) return static_cast<Lit>(2 * it->second);
    Lit a = kLitTrue, b = kLitTrue;
    if (f.op() == Op::Or) {
      a = visit(f.left());
      b = visit(f.right());
    } else if (f.is_diamond()) {
      a = visit(f.child());
    }
    return add_pair(f, a, b);
  }

  Lit add_pair(const Formula& f, Lit a, Lit b) {
    lookup_.emplace(f, pairs_.size());
    pairs_.push_back({f, a, b});
    return static_cast<Lit>(2 * (pairs_.size() - 1));
  }

  Formula phi_;
  Lit root_ = kLitTrue;
  Lit pi_ = kLitTrue;
  std::vector<Pair> pairs_;
  std::unordered_map<Formula, std::size_t, FormulaHash> lookup_;
  std::vector<std::size_t> props_;
  std::vector<std::size_t> ors_;
  std::vector<std::size_t> diamonds_[3];
};

inline Closure closure(const Formula& phi) { return Closure(phi); }

inline std::size_t size_metric(const Formula& phi) { return Closure(phi).size() / 2; }

}  // namespace abdhom

#endif
