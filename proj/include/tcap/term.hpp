#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcap/type.hpp"

namespace tcap {

/// The combinator basis of a typed combinatory algebra with sums, unit,
/// empty type and primitive recursion.
enum class Comb { K, S, Pair, Fst, Snd, Inl, Inr, Case, Zero, Succ, Rec, Exf, Unit };

inline constexpr Comb kAllCombs[] = {Comb::K,   Comb::S,    Comb::Pair, Comb::Fst,  Comb::Snd, Comb::Inl, Comb::Inr,
                                     Comb::Case, Comb::Zero, Comb::Succ, Comb::Rec, Comb::Exf, Comb::Unit};

inline std::string_view comb_name(Comb c) {
  switch (c) {
    case Comb::K: return "K";
    case Comb::S: return "S";
    case Comb::Pair: return "pair";
    case Comb::Fst: return "fst";
    case Comb::Snd: return "snd";
    case Comb::Inl: return "inl";
    case Comb::Inr: return "inr";
    case Comb::Case: return "case";
    case Comb::Zero: return "zero";
    case Comb::Succ: return "succ";
    case Comb::Rec: return "rec";
    case Comb::Exf: return "exf";
    case Comb::Unit: return "unit";
  }
  return "?";
}

inline std::optional<Comb> comb_from_name(std::string_view s) {
  for (Comb c : kAllCombs)
    if (comb_name(c) == s) return c;
  return std::nullopt;
}

enum class TermKind { Const, App, Var, Lam };

struct TermNode;

/// Immutable applicative term. `Lam` nodes only exist before bracket
/// abstraction; the normalizer eliminates them first.
class Term {
 public:
  Term() = default;

  static Term constant(Comb c, std::optional<Type> annot = std::nullopt);
  static Term app(const Term& f, const Term& a);
  static Term var(std::string name, Type type);
  static Term lam(std::string name, Type type, const Term& body);

  explicit operator bool() const { return node_ != nullptr; }

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }
  Comb comb() const;
  /// The instantiated type of a constant, when known.
  const std::optional<Type>& annotation() const;
  const std::string& name() const;
  const Type& var_type() const;
  const Term& fun() const;
  const Term& arg() const;
  const Term& body() const;

  bool is_const(Comb c) const { return is(TermKind::Const) && comb() == c; }

  /// Head of the application spine and its arguments in order.
  Term head() const {
    Term t = *this;
    while (t.is(TermKind::App)) t = t.fun();
    return t;
  }
  std::vector<Term> spine_args() const {
    std::vector<Term> out;
    Term t = *this;
    while (t.is(TermKind::App)) {
      out.push_back(t.arg());
      t = t.fun();
    }
    return {out.rbegin(), out.rend()};
  }

  /// Some(n) when the term is syntactically succ^n zero.
  std::optional<std::uint64_t> as_numeral() const;

  std::set<std::string> free_vars() const;
  bool has_lambda() const;
  std::size_t size() const;

  std::string str() const;

  const TermNode* raw() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind = TermKind::Const;
  Comb comb = Comb::Zero;
  std::optional<Type> annot;
  std::string name;
  Type type;
  Term a;  // fun / body
  Term b;  // arg
};

inline Term Term::constant(Comb c, std::optional<Type> annot) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Const;
  n->comb = c;
  n->annot = std::move(annot);
  return Term(std::move(n));
}

inline Term Term::app(const Term& f, const Term& a) {
  if (!f || !a) throw std::invalid_argument("application of an empty term");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::App;
  n->a = f;
  n->b = a;
  return Term(std::move(n));
}

inline Term Term::var(std::string name, Type type) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  n->type = std::move(type);
  return Term(std::move(n));
}

inline Term Term::lam(std::string name, Type type, const Term& body) {
  if (!body) throw std::invalid_argument("lambda with an empty body");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Lam;
  n->name = std::move(name);
  n->type = std::move(type);
  n->a = body;
  return Term(std::move(n));
}

inline TermKind Term::kind() const { return node_->kind; }
inline Comb Term::comb() const { return node_->comb; }
inline const std::optional<Type>& Term::annotation() const { return node_->annot; }
inline const std::string& Term::name() const { return node_->name; }
inline const Type& Term::var_type() const { return node_->type; }
inline const Term& Term::fun() const { return node_->a; }
inline const Term& Term::arg() const { return node_->b; }
inline const Term& Term::body() const { return node_->a; }

inline std::optional<std::uint64_t> Term::as_numeral() const {
  std::uint64_t n = 0;
  const TermNode* t = node_.get();
  while (t->kind == TermKind::App && t->a.node_->kind == TermKind::Const && t->a.node_->comb == Comb::Succ) {
    ++n;
    t = t->b.node_.get();
  }
  if (t->kind == TermKind::Const && t->comb == Comb::Zero) return n;
  return std::nullopt;
}

inline std::set<std::string> Term::free_vars() const {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    std::vector<std::string> bound;
    void operator()(const Term& t) {
      switch (t.kind()) {
        case TermKind::Const: return;
        case TermKind::Var:
          for (auto it = bound.rbegin(); it != bound.rend(); ++it)
            if (*it == t.name()) return;
          out.insert(t.name());
          return;
        case TermKind::App:
          (*this)(t.fun());
          (*this)(t.arg());
          return;
        case TermKind::Lam:
          bound.push_back(t.name());
          (*this)(t.body());
          bound.pop_back();
          return;
      }
    }
  };
  Walk{out, {}}(*this);
  return out;
}

inline bool Term::has_lambda() const {
  switch (kind()) {
    case TermKind::Lam: return true;
    case TermKind::App: return fun().has_lambda() || arg().has_lambda();
    default: return false;
  }
}

inline std::size_t Term::size() const {
  switch (kind()) {
    case TermKind::App: return 1 + fun().size() + arg().size();
    case TermKind::Lam: return 1 + body().size();
    default: return 1;
  }
}

namespace detail {

inline void render_term(const Term& t, std::string& out, int ctx);

// ctx: 0 = top, 1 = function position, 2 = argument position
inline void render_term(const Term& t, std::string& out, int ctx) {
  if (auto n = t.as_numeral()) {
    out += std::to_string(*n);
    return;
  }
  switch (t.kind()) {
    case TermKind::Const: out += comb_name(t.comb()); return;
    case TermKind::Var: out += t.name(); return;
    case TermKind::App:
      if (ctx == 2) out += '(';
      render_term(t.fun(), out, 1);
      out += ' ';
      render_term(t.arg(), out, 2);
      if (ctx == 2) out += ')';
      return;
    case TermKind::Lam:
      if (ctx != 0) out += '(';
      out += "fn " + t.name() + ":" + t.var_type().str() + ". ";
      render_term(t.body(), out, 0);
      if (ctx != 0) out += ')';
      return;
  }
}

}  // namespace detail

/// Surface syntax; numerals print as decimal literals. Constant type
/// annotations are not printed, so the output is also a key for the
/// untyped skeleton of the term.
inline std::string Term::str() const {
  std::string out;
  detail::render_term(*this, out, 0);
  return out;
}

/// Equality of untyped skeletons: constant annotations are ignored.
inline bool same_skeleton(const Term& a, const Term& b) {
  if (a.raw() == b.raw()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Const: return a.comb() == b.comb();
    case TermKind::Var: return a.name() == b.name();
    case TermKind::App: return same_skeleton(a.fun(), b.fun()) && same_skeleton(a.arg(), b.arg());
    case TermKind::Lam: return a.name() == b.name() && a.var_type() == b.var_type() && same_skeleton(a.body(), b.body());
  }
  return false;
}

/// Small construction vocabulary used throughout the library.
namespace build {

inline Term c(Comb k) { return Term::constant(k); }
inline Term K() { return c(Comb::K); }
inline Term S() { return c(Comb::S); }
inline Term pair() { return c(Comb::Pair); }
inline Term fst() { return c(Comb::Fst); }
inline Term snd() { return c(Comb::Snd); }
inline Term inl() { return c(Comb::Inl); }
inline Term inr() { return c(Comb::Inr); }
inline Term case_() { return c(Comb::Case); }
inline Term zero() { return c(Comb::Zero); }
inline Term succ() { return c(Comb::Succ); }
inline Term rec() { return c(Comb::Rec); }
inline Term exf() { return c(Comb::Exf); }
inline Term unit() { return c(Comb::Unit); }

inline Term app(const Term& f) { return f; }
template <class... Rest>
Term app(const Term& f, const Term& a, const Rest&... rest) {
  return app(Term::app(f, a), rest...);
}

inline Term var(const std::string& name, const Type& t) { return Term::var(name, t); }
inline Term lam(const std::string& name, const Type& t, const Term& body) { return Term::lam(name, t, body); }

inline Term pair(const Term& a, const Term& b) { return app(pair(), a, b); }
inline Term fst(const Term& a) { return app(fst(), a); }
inline Term snd(const Term& a) { return app(snd(), a); }
inline Term inl(const Term& a) { return app(inl(), a); }
inline Term inr(const Term& a) { return app(inr(), a); }
inline Term succ(const Term& a) { return app(succ(), a); }

inline Term nat(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
  return t;
}

}  // namespace build

}  // namespace tcap
