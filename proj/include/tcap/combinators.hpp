#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tcap/abstraction.hpp"
#include "tcap/error.hpp"
#include "tcap/normalize.hpp"
#include "tcap/term.hpp"
#include "tcap/type.hpp"

namespace tcap {

/// The numeral succ^n zero.
inline Term numeral(std::uint64_t n) { return build::nat(n); }

/// Normal form of `f a` for closed, compiled f and a.
inline Term apply_nf(const Term& f, const Term& a) { return normalize_compiled(Term::app(f, a)); }

/// Value of a term whose normal form is a numeral.
inline std::uint64_t nat_value(const Term& t) {
  Term nf = normalize(t);
  if (auto n = nf.as_numeral()) return *n;
  throw TypeError("normal form `" + nf.str() + "` is not a numeral");
}

namespace derived {

using namespace build;

inline const Type kN = Type::nat();

/// if c then a else b, for c in {0, 1} (any non-zero counts as true):
/// rec b (fn _ _. a) c.
inline Term ite(const Type& t, const Term& c, const Term& a, const Term& b) {
  Term step = lam("_ite_n", kN, lam("_ite_r", t, a));
  return app(rec(), b, step, c);
}

/// iszero n = 1 if n = 0 else 0.
inline Term iszero() {
  return compile(app(rec(), nat(1), lam("n", kN, lam("r", kN, nat(0))))).term;
}

/// pred 0 = 0, pred (n+1) = n.
inline Term pred() {
  return compile(app(rec(), nat(0), lam("n", kN, lam("r", kN, var("n", kN))))).term;
}

/// add a b by recursion on b.
inline Term add() {
  Term body = app(rec(), var("a", kN), lam("n", kN, lam("r", kN, succ(var("r", kN)))), var("b", kN));
  return compile(lam("a", kN, lam("b", kN, body))).term;
}

/// The discriminator case (fn x. 0) (fn x. 1) : A + B -> N.
inline Term discriminator(const Type& a, const Type& b) {
  return compile(app(case_(), lam("x", a, nat(0)), lam("x", b, nat(1)))).term;
}

}  // namespace derived

/// A closed d : N -> N -> N with d a b = 1 if a = b and 0 otherwise.
///
/// Recursion on the first argument produces a test function; the step
/// peels one successor off the second argument with an inner recursion:
///   d 0       = iszero
///   d (a + 1) = fn b. rec 0 (fn m _. d a m) b
inline Term build_d() {
  using namespace build;
  static const Term d = [] {
    const Type N = Type::nat();
    const Type NN = Type::arrow(N, N);
    Term step = lam("a", N, lam("r", NN, app(rec(), nat(0), lam("m", N, lam("s", N, app(var("r", NN), var("m", N)))))));
    return compile(app(rec(), derived::iszero(), step)).term;
  }();
  return d;
}

/// The one-line candidate R_{N->N} (R_N (succ 0) k) (fn x y. R_N 0 y) for
/// d, transcribed literally with x : N and y : N -> N. It does not
/// type-check; kept so the tests can record that.
inline Term transcribed_d_candidate() {
  using namespace build;
  const Type N = Type::nat();
  const Type NN = Type::arrow(N, N);
  Term base = app(rec(), succ(zero()), K());
  Term step = lam("x", N, lam("y", NN, app(rec(), zero(), var("y", NN))));
  return app(rec(), base, step);
}

/// Least k <= bound with p k = 1, or bound + 1 when there is none.
///
/// Built as g (bound + 1) where g 0 = 0 and
///   g (n + 1) = if g n = n then (if p n = 1 then n else n + 1) else g n.
/// `p` and `bound` may mention free variables; the result is then open too.
inline Term bounded_min_term(const Term& p, const Term& bound) {
  using namespace build;
  using derived::ite;
  const Type N = Type::nat();
  Term n = var("_bm_n", N), r = var("_bm_r", N);
  Term d = build_d();
  Term hit = app(d, app(p, n), nat(1));
  Term inner = ite(N, hit, n, succ(n));
  Term step_body = ite(N, app(d, r, n), inner, r);
  Term step = lam("_bm_n", N, lam("_bm_r", N, step_body));
  return app(rec(), zero(), step, succ(bound));
}

/// A finite lookup table as a term of type N -> T: the first matching key
/// wins; anything else maps to `fallback`. Keys are compared with d.
inline Term table_term(const Type& value_type, const std::vector<std::pair<std::uint64_t, Term>>& entries,
                       const Term& fallback) {
  using namespace build;
  Term x = var("_tbl_x", Type::nat());
  Term body = fallback;
  Term d = build_d();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    body = derived::ite(value_type, app(d, x, nat(it->first)), it->second, body);
  return lam("_tbl_x", Type::nat(), body);
}

/// Decidable equality eq : T -> T -> N for first-order T (N, Unit and
/// products and sums of those): 1 on equal values, 0 otherwise.
inline Term eq_term(const Type& t) {
  using namespace build;
  using derived::ite;
  const Type N = Type::nat();
  Term x = var("x", t), y = var("y", t);
  Term body;
  switch (t.kind()) {
    case TypeKind::Nat: return build_d();
    case TypeKind::Unit: body = nat(1); break;
    case TypeKind::Prod:
      body = ite(N, app(eq_term(t.left()), fst(x), fst(y)), app(eq_term(t.right()), snd(x), snd(y)), nat(0));
      break;
    case TypeKind::Sum: {
      const Type a = t.left(), b = t.right();
      Term ua = var("u", a), va = var("v", a), ub = var("u", b), vb = var("v", b);
      Term on_l = lam("u", a, app(case_(), lam("v", a, app(eq_term(a), ua, va)), lam("v", b, nat(0)), y));
      Term on_r = lam("u", b, app(case_(), lam("v", a, nat(0)), lam("v", b, app(eq_term(b), ub, vb)), y));
      body = app(case_(), on_l, on_r, x);
      break;
    }
    default: throw TypeError("no decidable equality at type " + t.str());
  }
  return compile_at(lam("x", t, lam("y", t, body)), Type::arrow(t, Type::arrow(t, N)));
}

/// A finite function dom -> cod given by a lookup table over a first-order
/// domain; the first matching key wins and anything else maps to `fallback`.
inline Term finite_function_term(const Type& dom, const Type& cod, const std::vector<std::pair<Term, Term>>& entries,
                                 const Term& fallback) {
  using namespace build;
  Term x = var("_ff_x", dom);
  Term eq = eq_term(dom);
  Term body = fallback;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    body = derived::ite(cod, app(eq, x, it->first), it->second, body);
  return compile_at(lam("_ff_x", dom, body), Type::arrow(dom, cod));
}

}  // namespace tcap
