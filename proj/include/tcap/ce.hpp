#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcap/abstraction.hpp"
#include "tcap/apartness.hpp"
#include "tcap/combinators.hpp"
#include "tcap/error.hpp"
#include "tcap/normalize.hpp"

namespace tcap::ce {

using Nat = std::uint64_t;
using Sequence = std::vector<Nat>;

/// A type-1 function given by a finite table and a default value.
struct Fn1 {
  std::map<Nat, Nat> table;
  Nat fallback = 0;

  Nat operator()(Nat n) const {
    auto it = table.find(n);
    return it == table.end() ? fallback : it->second;
  }

  /// Past this point the function is constant.
  Nat horizon() const { return table.empty() ? 0 : table.rbegin()->first + 1; }
};

/// Extensional equality of two table functions.
inline bool same_function(const Fn1& a, const Fn1& b) {
  Nat h = std::max(a.horizon(), b.horizon());
  for (Nat n = 0; n <= h; ++n)
    if (a(n) != b(n)) return false;
  return true;
}

/// s*(n) = s(n) for n < length, 0 otherwise.
inline Fn1 pad_sequence(const Sequence& s) {
  Fn1 f;
  for (std::size_t i = 0; i < s.size(); ++i) f.table[i] = s[i];
  return f;
}

/// The first n values of f.
inline Sequence truncate(const Fn1& f, Nat n) {
  Sequence s;
  for (Nat i = 0; i < n; ++i) s.push_back(f(i));
  return s;
}

/// A type-2 program reading its argument at finitely many probes.
enum class Op { Eval, Sum, Branch };

struct Program {
  Op op = Op::Eval;
  std::vector<Nat> probes;

  Nat apply(const std::function<Nat(Nat)>& f) const {
    switch (op) {
      case Op::Eval: return f(probes.at(0));
      case Op::Sum: {
        Nat s = 0;
        for (Nat p : probes) s += f(p);
        return s;
      }
      case Op::Branch: return f(probes.at(0)) == 0 ? f(probes.at(1)) : f(probes.at(2));
    }
    return 0;
  }

  /// The program as a term of type N, for fv : N -> N.
  Term term(const Term& fv) const {
    using namespace build;
    switch (op) {
      case Op::Eval: return app(fv, nat(probes.at(0)));
      case Op::Sum: {
        Term s = nat(0);
        for (Nat p : probes) s = app(derived::add(), s, app(fv, nat(p)));
        return s;
      }
      case Op::Branch:
        return derived::ite(Type::nat(), app(fv, nat(probes.at(0))), app(fv, nat(probes.at(2))),
                            app(fv, nat(probes.at(1))));
    }
    throw PreconditionError("unknown program");
  }

  void validate() const {
    std::size_t need = op == Op::Branch ? 3 : 1;
    if (probes.size() < need) throw PreconditionError("program has too few probes");
  }
};

/// Reflector of a type-2 fixture: a fixed point, or the first probe (in the
/// given order) where the arguments differ.
struct Reflect2 {
  enum class Kind { Point, FirstDiff };
  Kind kind = Kind::Point;
  std::vector<Nat> order;  // one entry for Point

  Nat apply(const std::function<Nat(Nat)>& f, const std::function<Nat(Nat)>& g) const {
    if (order.empty()) throw PreconditionError("empty reflector");
    if (kind == Kind::Point) return order[0];
    for (Nat p : order)
      if (f(p) != g(p)) return p;
    return order[0];
  }

  Term term(const Term& fv, const Term& gv) const {
    using namespace build;
    if (order.empty()) throw PreconditionError("empty reflector");
    if (kind == Kind::Point) return nat(order[0]);
    Term t = nat(order[0]);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      t = derived::ite(Type::nat(), app(build_d(), app(fv, nat(*it)), app(gv, nat(*it))), t, nat(*it));
    return t;
  }
};

/// A type-2 functional with an optional reflector and modulus.
struct Fn2 {
  Program program;
  std::optional<Reflect2> reflect;
  std::optional<Nat> modulus;

  Nat operator()(const Fn1& f) const {
    return program.apply([&](Nat n) { return f(n); });
  }
};

/// A type-3 functional Phi(F) = F(probe1); its reflector returns the first
/// candidate b (probe1 when none are given) with F(b) != G(b).
struct Fn3 {
  Fn1 probe1;
  std::vector<Fn1> candidates;

  Nat operator()(const Fn2& f) const { return f(probe1); }

  Fn1 reflect(const Fn2& f, const Fn2& g) const {
    if (candidates.empty()) return probe1;
    for (const Fn1& b : candidates)
      if (f(b) != g(b)) return b;
    return candidates[0];
  }
};

/// The least x <= bound with f(x) != g(x), if any.
inline std::optional<Nat> least_difference(const Fn1& f, const Fn1& g, Nat bound) {
  for (Nat x = 0; x <= bound; ++x)
    if (f(x) != g(x)) return x;
  return std::nullopt;
}

/// 0 when Phi(f) = Phi(g); otherwise the least x with f(x) != g(x), found
/// below the bound supplied by Phi's reflector.
inline Nat ce0_witness(const Fn2& phi, const Fn1& f, const Fn1& g) {
  phi.program.validate();
  if (phi(f) == phi(g)) return 0;
  if (!phi.reflect) throw PreconditionError("the functional has no reflector");
  Nat y = phi.reflect->apply([&](Nat n) { return f(n); }, [&](Nat n) { return g(n); });
  if (f(y) == g(y))
    throw PreconditionError("invalid reflector: it returned " + std::to_string(y) + " where f and g agree");
  return *least_difference(f, g, y);
}

namespace detail {

inline Type f1_plus() { return plus_type(Type::arrow(Type::nat(), Type::nat())); }
inline Type t2() { return Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat()); }

/// X(phi, f, g) on open terms phi : 2+, f, g : 1+.
inline Term x_value(const Term& phi, const Term& f, const Term& g) {
  using namespace build;
  const Type N = Type::nat();
  Term d = build_d();
  Term fv = fst(f), gv = fst(g);
  Term x = var("_cx", N);
  Term differ = lam("_cx", N, app(derived::iszero(), app(d, app(fv, x), app(gv, x))));
  Term bound = fst(app(snd(phi), f, g, zero()));
  return derived::ite(N, app(d, app(fst(phi), f), app(fst(phi), g)), zero(), bounded_min_term(differ, bound));
}

/// A point where u and v differ, given that X(phi, ., w) separates them:
/// phi's reflector when phi separates u and v, otherwise the smaller of the
/// two answers.
inline Term separating_point(const Term& phi, const Term& u, const Term& v, const Term& x0, const Term& x1) {
  using namespace build;
  const Type N = Type::nat();
  Term d = build_d();
  Term smaller = derived::ite(N, app(d, app(fst(u), x0), app(fst(v), x0)), x1, x0);
  return derived::ite(N, app(d, app(fst(phi), u), app(fst(phi), v)), smaller, fst(app(snd(phi), u, v, zero())));
}

inline std::vector<Term> take(const std::vector<Term>& v, std::size_t n) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

}  // namespace detail

/// Encoding of a table function as an element of 1+: the graph and the
/// reflector fn x y w. w.
inline Term encode_fn1(const Fn1& f) {
  using namespace build;
  const Type N = Type::nat();
  std::vector<std::pair<Nat, Term>> entries;
  for (auto [k, v] : f.table) entries.emplace_back(k, nat(v));
  Term graph = table_term(N, entries, nat(f.fallback));
  Term refl = lam("x", N, lam("y", N, lam("w", N, var("w", N))));
  return compile_at(pair(graph, refl), detail::f1_plus());
}

/// Encoding of a type-2 fixture with reflector as an element of 2+.
inline Term encode_fn2(const Fn2& phi) {
  using namespace build;
  if (!phi.reflect) throw PreconditionError("the functional has no reflector");
  phi.program.validate();
  const Type N = Type::nat(), F1 = detail::f1_plus();
  Term F = var("F", F1), G = var("G", F1);
  Term graph = lam("F", F1, phi.program.term(fst(F)));
  Term point = phi.reflect->term(fst(F), fst(G));
  Term refl = lam("F", F1, lam("G", F1, lam("w", N, pair(point, var("w", N)))));
  return compile_at(pair(graph, refl), plus_type(detail::t2()));
}

/// (Phi, f, g) as an element of 2+ * (1+ * 1+).
inline Term encode_triple(const Fn2& phi, const Fn1& f, const Fn1& g) {
  return build::pair(encode_fn2(phi), build::pair(encode_fn1(f), encode_fn1(g)));
}

inline Type ce0_input_type() {
  Type one = Type::arrow(Type::nat(), Type::nat());
  return Type::prod(detail::t2(), Type::prod(one, one));
}

/// The closed term fn t. X (fst t) (fst (snd t)) (snd (snd t)) of type
/// 2+ * 1+ * 1+ -> N.
inline Term ce0_term() {
  using namespace build;
  Type in = plus_type(ce0_input_type());
  Term t = var("t", in);
  Term body = detail::x_value(fst(t), fst(snd(t)), snd(snd(t)));
  return compile_at(lam("t", in, body), Type::arrow(in, Type::nat()));
}

/// Normal form of ce0_term applied to the encoded triple.
inline Nat ce0_by_term(const Fn2& phi, const Fn1& f, const Fn1& g) {
  static const Term x = ce0_term();
  Term r = normalize_compiled(Term::app(x, compile_at(encode_triple(phi, f, g), plus_type(ce0_input_type()))));
  auto n = r.as_numeral();
  if (!n) throw TypeError("ce0 term did not reach a numeral: " + r.str());
  return *n;
}

/// sigma = 2 -> 1 -> 1 -> 0.
inline Type ce0_sigma() {
  Type one = Type::arrow(Type::nat(), Type::nat());
  return Type::arrow(detail::t2(), Type::arrow(one, Type::arrow(one, Type::nat())));
}

/// X as an element of sigma+, with reflectors at every level.
inline Term ce0_x_element() {
  using namespace build;
  const Type N = Type::nat(), F1 = detail::f1_plus(), P2 = plus_type(detail::t2());
  const Type one = Type::arrow(N, N);
  const Type rho = Type::arrow(one, N), tau = Type::arrow(one, rho);
  Term phi = var("phi", P2), f = var("f", F1), g = var("g", F1);

  // 1 -> 0 level: X phi f
  Term g0 = var("g0", F1), g1 = var("g1", F1), w0 = var("w0", N);
  Term rho_refl = lam("g0", F1, lam("g1", F1, lam("w0", N,
      pair(detail::separating_point(phi, g0, g1, detail::x_value(phi, f, g0), detail::x_value(phi, f, g1)), w0))));
  Term rho_el = pair(lam("g", F1, detail::x_value(phi, f, g)), rho_refl);

  // 1 -> 1 -> 0 level: X phi
  Type rho_m = minus_type(rho);
  Term f0 = var("f0", F1), f1 = var("f1", F1), w1 = var("w1", rho_m);
  Term gw = fst(w1);
  Term tau_refl = lam("f0", F1, lam("f1", F1, lam("w1", rho_m,
      pair(detail::separating_point(phi, f0, f1, detail::x_value(phi, f0, gw), detail::x_value(phi, f1, gw)), snd(w1)))));
  Term tau_el = pair(lam("f", F1, rho_el), tau_refl);

  // sigma level: X
  Type tau_m = minus_type(tau);
  Term p0 = var("p0", P2), p1 = var("p1", P2), w2 = var("w2", tau_m);
  Term fw = fst(w2), gw2 = fst(snd(w2));
  Term at = derived::ite(F1, app(build_d(), app(fst(p0), fw), app(fst(p1), fw)), gw2, fw);
  Term sigma_refl = lam("p0", P2, lam("p1", P2, lam("w2", tau_m, pair(at, snd(snd(w2))))));
  return compile_at(pair(lam("phi", P2, tau_el), sigma_refl), plus_type(ce0_sigma()));
}

/// Source and target of the premorphism F: 2 x 1 x 1 and
/// (R -> R) x R with R = 2 x 1 x 1 x sigma.
inline Type ce0_extended_type() {
  Type one = Type::arrow(Type::nat(), Type::nat());
  return Type::prod(detail::t2(), Type::prod(one, Type::prod(one, ce0_sigma())));
}

/// F(phi, f, g) = (id, (phi, f, g, X)); the reflector passes component
/// witnesses back and answers anything else canonically.
inline Premorphism ce0_premorphism() {
  using namespace build;
  Type in = ce0_input_type(), r = ce0_extended_type();
  Type out = Type::prod(Type::arrow(r, r), r);
  TranslatedType ti = translate_type(in), tr = translate_type(r), to = translate_type(out);
  Term i = var("i", ti.plus);
  Term id = pair(lam("r", tr.plus, var("r", tr.plus)),
                 lam("r", tr.plus, lam("s", tr.plus, lam("w", tr.minus, var("w", tr.minus)))));
  Term ext = pair(fst(i), pair(fst(snd(i)), pair(snd(snd(i)), ce0_x_element())));
  Term forward = lam("i", ti.plus, pair(id, ext));

  // in- = 2- + (1- + 1-), r- = 2- + (1- + (1- + sigma-))
  Type m2 = minus_type(detail::t2()), m1 = minus_type(Type::arrow(Type::nat(), Type::nat()));
  Type ms = minus_type(ce0_sigma());
  Type tail_in = Type::sum(m1, m1);
  Term can = tcap::detail::canonical(ti.minus);
  Term on_sigma = lam("_s", ms, can);
  Term third = app(case_(), lam("c", m1, app(tcap::detail::inr_at(m2, tail_in), app(tcap::detail::inr_at(m1, m1), var("c", m1)))), on_sigma);
  Term second = app(case_(), lam("b", m1, app(tcap::detail::inr_at(m2, tail_in), app(tcap::detail::inl_at(m1, m1), var("b", m1)))), third);
  Term on_r = app(case_(), lam("a", m2, app(tcap::detail::inl_at(m2, tail_in), var("a", m2))), second);
  Type id_minus = minus_type(Type::arrow(r, r));
  Term reflect = lam("i0", ti.plus, lam("i1", ti.plus, lam("m", to.minus,
      app(case_(), lam("_e", id_minus, can), on_r, var("m", to.minus)))));
  Type refl_type = Type::arrow(ti.plus, Type::arrow(ti.plus, Type::arrow(to.minus, ti.minus)));
  return Premorphism{in, out, compile_at(forward, Type::arrow(ti.plus, to.plus)), compile_at(reflect, refl_type)};
}

/// Outcome of the reflection check for F.
struct ReflectionReport {
  Verdict verdict = Verdict::holds();
  std::size_t apart_outputs = 0;  // witness cases where the outputs were apart
  std::size_t cases = 0;
};

/// For every pair of encoded inputs and every output witness built from
/// the pool's witnesses, whenever the witness separates the outputs the
/// reflector's answer separates the inputs. Output apartness is the
/// pointwise clause; input apartness is the full app check.
inline ReflectionReport check_ce0_reflection(ApartnessChecker& c, const Premorphism& F, const std::vector<Term>& inputs) {
  using namespace build;
  Type r = ce0_extended_type();
  TranslatedType tr = translate_type(r), to = translate_type(F.to);
  Type m2 = minus_type(detail::t2()), m1 = minus_type(Type::arrow(Type::nat(), Type::nat()));
  Type ms = minus_type(ce0_sigma());
  Type id_minus = minus_type(Type::arrow(r, r));
  auto into_r = [&](int slot, const Term& w) {
    Type t3 = Type::sum(m1, ms), t2 = Type::sum(m1, t3);
    switch (slot) {
      case 0: return app(tcap::detail::inl_at(m2, t2), w);
      case 1: return app(tcap::detail::inr_at(m2, t2), app(tcap::detail::inl_at(m1, t3), w));
      case 2: return app(tcap::detail::inr_at(m2, t2), app(tcap::detail::inr_at(m1, t3), app(tcap::detail::inl_at(m1, ms), w)));
      default: return app(tcap::detail::inr_at(m2, t2), app(tcap::detail::inr_at(m1, t3), app(tcap::detail::inr_at(m1, ms), w)));
    }
  };
  std::vector<Term> rs;
  for (const Term& w : detail::take(c.pool().witnesses(detail::t2()), 4)) rs.push_back(into_r(0, w));
  for (const Term& w : detail::take(c.pool().witnesses(Type::arrow(Type::nat(), Type::nat())), 4)) {
    rs.push_back(into_r(1, w));
    rs.push_back(into_r(2, w));
  }
  for (const Term& w : detail::take(c.pool().witnesses(ce0_sigma()), 2)) rs.push_back(into_r(3, w));

  Term fwd = tcap::detail::closed_nf(F.forward, Type::arrow(plus_type(F.from), to.plus));
  Term refl = tcap::detail::closed_nf(F.reflect, Type::arrow(plus_type(F.from), Type::arrow(plus_type(F.from), Type::arrow(to.minus, minus_type(F.from)))));
  std::vector<Term> ins;
  for (const Term& i : inputs) ins.push_back(tcap::detail::closed_nf(i, plus_type(F.from)));
  ReflectionReport rep;
  for (std::size_t a = 0; a < ins.size(); ++a)
    for (std::size_t b = 0; b < ins.size(); ++b) {
      if (a == b) continue;
      Term o0 = ApartnessChecker::apply(fwd, ins[a]), o1 = ApartnessChecker::apply(fwd, ins[b]);
      std::vector<Term> ws;
      for (const Term& w : rs) ws.push_back(app(tcap::detail::inr_at(id_minus, tr.minus), w));
      for (const Term& w : detail::take(rs, 2))
        ws.push_back(app(tcap::detail::inl_at(id_minus, tr.minus), pair(ApartnessChecker::second(o0), w)));
      for (const Term& w0 : ws) {
        ++rep.cases;
        Term w = tcap::detail::closed_nf(w0, to.minus);
        if (!c.app_pointwise_nf(F.to, o0, o1, w).passes()) continue;
        ++rep.apart_outputs;
        Term back = ApartnessChecker::apply(refl, ins[a], ins[b], w);
        Verdict v = c.app_nf(F.from, ins[a], ins[b], back);
        if (v.is_fails()) {
          rep.verdict = Verdict::fails("F- does not reflect apartness: " + v.detail, {ins[a], ins[b], w, back});
          return rep;
        }
        rep.verdict = rep.verdict && v;
      }
    }
  return rep;
}

/// Cantor pairing <a, b> = (a + b)(a + b + 1) / 2 + b.
inline Nat cantor_pair(Nat a, Nat b) { return (a + b) * (a + b + 1) / 2 + b; }

inline std::pair<Nat, Nat> cantor_unpair(Nat n) {
  Nat w = 0;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  Nat b = n - w * (w + 1) / 2;
  return {w - b, b};
}

/// h(0) = <>, h(n + 1) = a :: h(b) where (a, b) unpairs n.
inline Sequence h_decode(Nat n) {
  Sequence s;
  while (n > 0) {
    auto [a, b] = cantor_unpair(n - 1);
    s.push_back(a);
    n = b;
  }
  return s;
}

inline Nat h_encode(const Sequence& s) {
  Nat n = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) n = 1 + cantor_pair(*it, n);
  return n;
}

/// Modulus oracle: M(F, x) bounds the prefix of x that F reads.
using Modulus = std::function<Nat(const Fn2&, const Fn1&)>;

/// The declared modulus of each fixture.
inline Nat declared_modulus(const Fn2& f, const Fn1&) {
  if (!f.modulus) throw PreconditionError("fixture has no modulus");
  return *f.modulus;
}

/// The empty sequence when Phi(f) = Phi(g); otherwise the first sequence s
/// in h-order with f(s*) != g(s*). The reflector and modulus only certify
/// that the search ends: b = Phi-(f, g) truncated to max(M f b, M g b) is a
/// hit.
inline Sequence ce1_search(const Fn3& phi, const Fn2& f, const Fn2& g, const Modulus& m = declared_modulus) {
  if (phi(f) == phi(g)) return {};
  Fn1 b = phi.reflect(f, g);
  if (f(b) == g(b)) throw PreconditionError("invalid reflector: f and g agree on its answer");
  Nat len = std::max(m(f, b), m(g, b));
  Sequence cert = truncate(b, len);
  Fn1 padded = pad_sequence(cert);
  if (f(padded) != f(b) || g(padded) != g(b))
    throw PreconditionError("invalid modulus: the truncation to " + std::to_string(len) + " changes the value");
  Nat limit = h_encode(cert);
  for (Nat n = 0; n <= limit; ++n) {
    Sequence s = h_decode(n);
    Fn1 p = pad_sequence(s);
    if (f(p) != g(p)) return s;
  }
  return cert;
}

/// The constant-0 function, or the padded first hit.
inline Fn1 ce1_witness(const Fn3& phi, const Fn2& f, const Fn2& g, const Modulus& m = declared_modulus) {
  return pad_sequence(ce1_search(phi, f, g, m));
}

}  // namespace tcap::ce
