#pragma once

#include <string>
#include <utility>

#include "tcap/error.hpp"
#include "tcap/term.hpp"
#include "tcap/typecheck.hpp"

namespace tcap {

namespace detail {

/// Type of a lambda-free or lambda-containing term whose constants are all
/// annotated.
inline Type synth_type(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      if (!t.annotation()) throw TypeError("unannotated constant `" + t.str() + "`");
      return *t.annotation();
    case TermKind::Var: return t.var_type();
    case TermKind::Lam: return Type::arrow(t.var_type(), synth_type(t.body()));
    case TermKind::App: {
      Type f = synth_type(t.fun());
      if (!f.is(TypeKind::Arrow)) throw TypeError("non-function in application `" + t.str() + "`");
      return f.cod();
    }
  }
  throw TypeError("malformed term");
}

inline bool mentions(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x;
    case TermKind::App: return mentions(t.fun(), x) || mentions(t.arg(), x);
    case TermKind::Lam: return t.name() != x && mentions(t.body(), x);
    default: return false;
  }
}

inline Term K_at(const Type& a, const Type& b) {
  return Term::constant(Comb::K, Type::arrow(a, Type::arrow(b, a)));
}

inline Term S_at(const Type& a, const Type& b, const Type& c) {
  auto ar = [](const Type& x, const Type& y) { return Type::arrow(x, y); };
  return Term::constant(Comb::S, ar(ar(a, ar(b, c)), ar(ar(a, b), ar(a, c))));
}

inline Term inl_at(const Type& a, const Type& b) { return Term::constant(Comb::Inl, Type::arrow(a, Type::sum(a, b))); }
inline Term inr_at(const Type& a, const Type& b) { return Term::constant(Comb::Inr, Type::arrow(b, Type::sum(a, b))); }

/// A fixed closed inhabitant of `t` (Empty excluded).
inline Term canonical(const Type& t) {
  using namespace build;
  switch (t.kind()) {
    case TypeKind::Nat: return zero();
    case TypeKind::Unit: return unit();
    case TypeKind::Prod: return pair(canonical(t.left()), canonical(t.right()));
    case TypeKind::Sum: return app(inl_at(t.left(), t.right()), canonical(t.left()));
    case TypeKind::Arrow: return app(K_at(t.cod(), t.dom()), canonical(t.cod()));
    default: break;
  }
  throw TypeError("no canonical inhabitant of " + t.str());
}

/// I := S K K at type a -> a.
inline Term I_at(const Type& a) {
  Type b = Type::arrow(a, a);
  return Term::app(Term::app(S_at(a, b, a), K_at(a, b)), K_at(a, a));
}

// [x:a] m, for lambda-free annotated m.
inline Term abstract_annotated(const std::string& x, const Type& a, const Term& m) {
  if (!mentions(m, x)) return Term::app(K_at(synth_type(m), a), m);
  if (m.is(TermKind::Var)) return I_at(a);
  // m is an application mentioning x
  Type arg_t = synth_type(m.arg());
  Type res_t = synth_type(m);
  Term lf = abstract_annotated(x, a, m.fun());
  Term la = abstract_annotated(x, a, m.arg());
  return Term::app(Term::app(S_at(a, arg_t, res_t), lf), la);
}

}  // namespace detail

/// Replaces every binder of an annotated term by S/K combinators, innermost
/// first: [x]x = S K K, [x]m = K m when x is not free in m, and
/// [x](m n) = S ([x]m) ([x]n). No eta step.
inline Term eliminate_lambdas(const Term& annotated) {
  switch (annotated.kind()) {
    case TermKind::Const:
    case TermKind::Var: return annotated;
    case TermKind::App: return Term::app(eliminate_lambdas(annotated.fun()), eliminate_lambdas(annotated.arg()));
    case TermKind::Lam: {
      Term body = eliminate_lambdas(annotated.body());
      return detail::abstract_annotated(annotated.name(), annotated.var_type(), body);
    }
  }
  return annotated;
}

/// Elaborates `t` and removes all binders. The result is annotated and
/// lambda-free; it has the same type as `t`.
inline Elaborated compile(const Term& t) {
  Elaborated e = elaborate(t);
  if (e.term.has_lambda()) e.term = eliminate_lambdas(e.term);
  return e;
}

/// Like `compile`, but checks `t` against `expected`; the expected type also
/// fixes instances the term alone leaves open (`inl 0` at N + Unit).
inline Term compile_at(const Term& t, const Type& expected) {
  TypeChecker tc;
  auto [annotated, ty] = tc.infer(t);
  tc.unify(ty, expected, t);
  Term out = tc.finish(annotated);
  return out.has_lambda() ? eliminate_lambdas(out) : out;
}

/// Bracket abstraction of the variable `v` (a `Var` term) over `body`.
/// Other free variables of `body` stay free in the result.
inline Term bracket_abstract(const Term& v, const Term& body) {
  if (!v || !v.is(TermKind::Var)) throw TypeError("bracket abstraction needs a typed variable");
  return compile(Term::lam(v.name(), v.var_type(), body)).term;
}

}  // namespace tcap
