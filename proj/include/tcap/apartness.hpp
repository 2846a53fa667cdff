#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcap/abstraction.hpp"
#include "tcap/combinators.hpp"
#include "tcap/error.hpp"
#include "tcap/normalize.hpp"
#include "tcap/term.hpp"
#include "tcap/type.hpp"

namespace tcap {

/// sigma together with its carrier type sigma+ and witness type sigma-.
struct TranslatedType {
  Type source;
  Type plus;
  Type minus;
};

/// N => (N, N); Unit => (Unit, Unit) with no apartness;
/// s*t => (s+ * t+, s- + t-); s+t => (s+ + t+, s- * t-);
/// s->t => ((s+ -> t+) * (s+ -> s+ -> t- -> s-), s+ * t-).
inline TranslatedType translate_type(const Type& s) {
  switch (s.kind()) {
    case TypeKind::Nat: return {s, s, s};
    case TypeKind::Unit: return {s, s, s};
    case TypeKind::Prod: {
      auto a = translate_type(s.left()), b = translate_type(s.right());
      return {s, Type::prod(a.plus, b.plus), Type::sum(a.minus, b.minus)};
    }
    case TypeKind::Sum: {
      auto a = translate_type(s.left()), b = translate_type(s.right());
      return {s, Type::sum(a.plus, b.plus), Type::prod(a.minus, b.minus)};
    }
    case TypeKind::Arrow: {
      auto a = translate_type(s.dom()), b = translate_type(s.cod());
      Type reflect = Type::arrow(a.plus, Type::arrow(a.plus, Type::arrow(b.minus, a.minus)));
      return {s, Type::prod(Type::arrow(a.plus, b.plus), reflect), Type::prod(a.plus, b.minus)};
    }
    case TypeKind::Empty: throw TypeError("Empty has no apartness translation");
    case TypeKind::Meta: break;
  }
  throw TypeError("cannot translate type " + s.str());
}

inline Type plus_type(const Type& s) { return translate_type(s).plus; }
inline Type minus_type(const Type& s) { return translate_type(s).minus; }

enum class Outcome { Holds, Fails, Unknown };

/// Three-valued result of a semi-decision. Unknown means every sample
/// passed but a genuine universal quantifier was only sampled.
struct Verdict {
  Outcome outcome = Outcome::Holds;
  std::string detail;
  std::vector<Term> counterexample;

  static Verdict holds() { return {}; }
  static Verdict fails(std::string why, std::vector<Term> cex = {}) {
    return {Outcome::Fails, std::move(why), std::move(cex)};
  }
  static Verdict unknown(std::string why) { return {Outcome::Unknown, std::move(why), {}}; }

  bool is_holds() const { return outcome == Outcome::Holds; }
  bool is_fails() const { return outcome == Outcome::Fails; }
  bool is_unknown() const { return outcome == Outcome::Unknown; }
  /// Not refuted by any sample.
  bool passes() const { return !is_fails(); }

  std::string str() const {
    switch (outcome) {
      case Outcome::Holds: return "holds";
      case Outcome::Unknown: return "unknown (" + detail + ")";
      case Outcome::Fails: {
        std::string s = "fails: " + detail;
        for (const Term& t : counterexample) s += "\n  at " + t.str();
        return s;
      }
    }
    return "?";
  }
};

/// Kleene conjunction; the first failure wins.
inline Verdict operator&&(const Verdict& a, const Verdict& b) {
  if (a.is_fails()) return a;
  if (b.is_fails()) return b;
  if (a.is_unknown()) return a;
  return b;
}

namespace detail {

/// Compiles and normalizes a closed term of the given type.
inline Term closed_nf(const Term& t, const Type& expected) { return normalize_compiled(compile_at(t, expected)); }

/// Tag of a normal form of sum type: +1 for inl, -1 for inr, 0 otherwise.
inline int sum_tag(const Term& nf) {
  if (!nf.is(TermKind::App)) return 0;
  if (nf.fun().is_const(Comb::Inl)) return 1;
  if (nf.fun().is_const(Comb::Inr)) return -1;
  return 0;
}

}  // namespace detail

/// Samples for the universal clauses at arrow types. Every source type gets
/// an automatic pool of carrier members (numerals, pairs, injections and a
/// few canonical premorphisms) and witnesses; caller terms are filed by
/// their representation type and join every pool of that type.
class SamplePool {
 public:
  /// `nat_range` numerals 0 .. nat_range-1 sample N at the top level.
  explicit SamplePool(std::uint64_t nat_range = 9) : nat_range_(nat_range) {}

  /// Adds a closed term; its inferred type decides which pools it joins.
  void add(const Term& t) {
    Elaborated e = compile(t);
    extra_[e.type].push_back(normalize_compiled(e.term));
  }

  /// Adds a closed term at an explicit representation type.
  void add(const Term& t, const Type& representation) {
    extra_[representation].push_back(detail::closed_nf(t, representation));
  }

  /// Members of sigma+ (automatic first, then caller terms).
  const std::vector<Term>& members(const Type& s) {
    if (auto it = full_members_.find(s); it != full_members_.end()) return it->second;
    std::vector<Term> out = auto_members(s, 0);
    if (auto it = extra_.find(plus_type(s)); it != extra_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    return full_members_[s] = std::move(out);
  }

  /// Members of sigma- (automatic first, then caller terms).
  const std::vector<Term>& witnesses(const Type& s) {
    if (auto it = full_witnesses_.find(s); it != full_witnesses_.end()) return it->second;
    std::vector<Term> out = auto_witnesses(s, 0);
    if (auto it = extra_.find(minus_type(s)); it != extra_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    return full_witnesses_[s] = std::move(out);
  }

 private:
  static std::vector<Term> first(const std::vector<Term>& v, std::size_t n) {
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
  }

  const std::vector<Term>& auto_members(const Type& s, int level) {
    auto key = std::make_pair(s, level);
    if (auto it = members_.find(key); it != members_.end()) return it->second;
    using namespace build;
    std::vector<Term> out;
    TranslatedType tr = translate_type(s);
    auto add_nf = [&](const Term& t) { out.push_back(detail::closed_nf(t, tr.plus)); };
    switch (s.kind()) {
      case TypeKind::Nat:
        for (std::uint64_t n = 0; n < (level == 0 ? nat_range_ : 3); ++n) out.push_back(numeral(n));
        break;
      case TypeKind::Unit: out.push_back(unit()); break;
      case TypeKind::Prod:
        for (const Term& a : first(auto_members(s.left(), level + 1), 3))
          for (const Term& b : first(auto_members(s.right(), level + 1), 3)) add_nf(pair(a, b));
        break;
      case TypeKind::Sum: {
        Type lp = plus_type(s.left()), rp = plus_type(s.right());
        for (const Term& a : first(auto_members(s.left(), level + 1), 3)) add_nf(app(detail::inl_at(lp, rp), a));
        for (const Term& b : first(auto_members(s.right(), level + 1), 3)) add_nf(app(detail::inr_at(lp, rp), b));
        break;
      }
      case TypeKind::Arrow: premorphisms(s, level, add_nf); break;
      default: throw TypeError("no samples for type " + s.str());
    }
    return members_[key] = std::move(out);
  }

  // Canonical premorphisms (forward, reflect) at an arrow type.
  template <class Add>
  void premorphisms(const Type& s, int level, Add&& add_nf) {
    using namespace build;
    const Type a = s.dom(), b = s.cod();
    TranslatedType ta = translate_type(a), tb = translate_type(b);
    const Type N = Type::nat();
    auto reflect = [&](const Term& body) {
      return lam("u", ta.plus, lam("v", ta.plus, lam("w", tb.minus, body)));
    };
    Term u = var("u", ta.plus), v = var("v", ta.plus), w = var("w", tb.minus), x = var("x", ta.plus);
    for (const Term& c : first(auto_members(b, level + 1), 2))
      add_nf(pair(lam("x", ta.plus, c), reflect(detail::canonical(ta.minus))));
    if (level >= 3) return;
    if (a == b) add_nf(pair(lam("x", ta.plus, x), reflect(w)));
    if (a == N && b == N) {
      add_nf(pair(succ(), reflect(w)));
      add_nf(pair(derived::pred(), reflect(w)));
      add_nf(pair(lam("x", N, app(build_d(), x, nat(2))), reflect(w)));
    }
    if (a.is(TypeKind::Arrow) && a.cod() == b) {
      // evaluation at a point p, reflecting with the point itself
      auto points = first(auto_members(a.dom(), level + 1), 3);
      for (const Term& p : points) add_nf(pair(lam("x", ta.plus, app(fst(x), p)), reflect(pair(p, w))));
      if (b == N && points.size() >= 2) {
        // x(p) + x(q): differs at p unless the p-values agree
        const Term &p = points[0], &q = points[1];
        Term fwd = lam("x", ta.plus, app(derived::add(), app(fst(x), p), app(fst(x), q)));
        Term same_at_p = app(build_d(), app(fst(u), p), app(fst(v), p));
        add_nf(pair(fwd, reflect(derived::ite(ta.minus, same_at_p, pair(q, w), pair(p, w)))));
      }
    }
    if (a.is(TypeKind::Prod)) {
      Type lm = minus_type(a.left()), rm = minus_type(a.right());
      if (a.left() == b) add_nf(pair(lam("x", ta.plus, fst(x)), reflect(app(detail::inl_at(lm, rm), w))));
      if (a.right() == b) add_nf(pair(lam("x", ta.plus, snd(x)), reflect(app(detail::inr_at(lm, rm), w))));
    }
  }

  const std::vector<Term>& auto_witnesses(const Type& s, int level) {
    auto key = std::make_pair(s, level);
    if (auto it = witnesses_.find(key); it != witnesses_.end()) return it->second;
    using namespace build;
    std::vector<Term> out;
    TranslatedType tr = translate_type(s);
    auto add_nf = [&](const Term& t) { out.push_back(detail::closed_nf(t, tr.minus)); };
    switch (s.kind()) {
      case TypeKind::Nat:
        for (std::uint64_t n = 0; n < (level == 0 ? 3u : 1u); ++n) out.push_back(numeral(n));
        break;
      case TypeKind::Unit: out.push_back(unit()); break;
      case TypeKind::Prod: {
        Type lm = minus_type(s.left()), rm = minus_type(s.right());
        for (const Term& a : first(auto_witnesses(s.left(), level + 1), 2)) add_nf(app(detail::inl_at(lm, rm), a));
        for (const Term& b : first(auto_witnesses(s.right(), level + 1), 2)) add_nf(app(detail::inr_at(lm, rm), b));
        break;
      }
      case TypeKind::Sum:
        for (const Term& a : first(auto_witnesses(s.left(), level + 1), 2))
          for (const Term& b : first(auto_witnesses(s.right(), level + 1), 2)) add_nf(pair(a, b));
        break;
      case TypeKind::Arrow:
        for (const Term& p : first(auto_members(s.dom(), level + 1), 4))
          for (const Term& w : first(auto_witnesses(s.cod(), level + 1), 2)) add_nf(pair(p, w));
        break;
      default: throw TypeError("no samples for type " + s.str());
    }
    return witnesses_[key] = std::move(out);
  }

  std::uint64_t nat_range_;
  std::map<Type, std::vector<Term>> extra_;
  std::map<std::pair<Type, int>, std::vector<Term>> members_, witnesses_;
  std::map<Type, std::vector<Term>> full_members_, full_witnesses_;
};

/// Evaluates dom and app by structural recursion on the source type.
/// Product, sum and base clauses are exact; the universal clauses at arrow
/// types range over the pool, restricted to arguments whose own dom check
/// passes. Results are memoized per checker.
class ApartnessChecker {
 public:
  explicit ApartnessChecker(SamplePool& pool) : pool_(pool) {}

  SamplePool& pool() { return pool_; }

  /// dom for a closed term of type sigma+.
  Verdict dom(const Type& s, const Term& x) { return dom_nf(s, detail::closed_nf(x, plus_type(s))); }

  /// app for closed x, y : sigma+ and z : sigma-.
  Verdict app(const Type& s, const Term& x, const Term& y, const Term& z) {
    TranslatedType tr = translate_type(s);
    return app_nf(s, detail::closed_nf(x, tr.plus), detail::closed_nf(y, tr.plus), detail::closed_nf(z, tr.minus));
  }

  /// Arguments already in normal form (e.g. pool members).
  Verdict dom_nf(const Type& s, const Term& x) {
    std::string key = s.str() + "|" + x.str();
    if (auto it = dom_memo_.find(key); it != dom_memo_.end()) return it->second;
    Verdict v = dom_uncached(s, x);
    return dom_memo_[key] = v;
  }

  Verdict app_nf(const Type& s, const Term& x, const Term& y, const Term& z) {
    std::string key = s.str() + "|" + x.str() + "|" + y.str() + "|" + z.str();
    if (auto it = app_memo_.find(key); it != app_memo_.end()) return it->second;
    Verdict v = app_uncached(s, x, y, z);
    return app_memo_[key] = v;
  }

  /// Normal form of f a for normal forms f, a.
  static Term apply(const Term& f, const Term& a) { return normalize_compiled(Term::app(f, a)); }
  static Term apply(const Term& f, const Term& a, const Term& b, const Term& c) {
    return normalize_compiled(Term::app(Term::app(Term::app(f, a), b), c));
  }
  static Term first(const Term& p) { return normalize_compiled(build::fst(p)); }
  static Term second(const Term& p) { return normalize_compiled(build::snd(p)); }

  /// The app clause without the trailing dom conjuncts on x and y.
  Verdict app_pointwise(const Type& s, const Term& x, const Term& y, const Term& z) {
    TranslatedType tr = translate_type(s);
    return app_core(s, detail::closed_nf(x, tr.plus), detail::closed_nf(y, tr.plus), detail::closed_nf(z, tr.minus));
  }

  Verdict app_pointwise_nf(const Type& s, const Term& x, const Term& y, const Term& z) { return app_core(s, x, y, z); }

  /// Pool members of sigma+ whose dom check passes.
  std::vector<Term> domain_members(const Type& s) {
    std::vector<Term> out;
    for (const Term& m : pool_.members(s))
      if (dom_nf(s, m).passes()) out.push_back(m);
    return out;
  }

 private:
  Verdict dom_uncached(const Type& s, const Term& x) {
    switch (s.kind()) {
      case TypeKind::Nat:
        if (!x.as_numeral()) return Verdict::fails("not a numeral", {x});
        return Verdict::holds();
      case TypeKind::Unit: return Verdict::holds();
      case TypeKind::Prod: {
        Verdict l = dom_nf(s.left(), first(x));
        if (l.is_fails()) return l;
        return l && dom_nf(s.right(), second(x));
      }
      case TypeKind::Sum: {
        int tag = detail::sum_tag(x);
        if (tag == 0) return Verdict::fails("not an injection", {x});
        return dom_nf(tag > 0 ? s.left() : s.right(), x.arg());
      }
      case TypeKind::Arrow: return dom_arrow(s, x);
      default: throw TypeError("dom at type " + s.str());
    }
  }

  Verdict dom_arrow(const Type& s, const Term& x) {
    const Type a = s.dom(), b = s.cod();
    Term f = first(x), r = second(x);
    std::vector<Term> us = domain_members(a);
    std::vector<Term> images;
    std::size_t cases = 0;
    for (const Term& u : us) {
      Term fu = apply(f, u);
      images.push_back(fu);
      ++cases;
      Verdict v = dom_nf(b, fu);
      if (v.is_fails()) return Verdict::fails("image leaves the domain of " + b.str(), {u, fu});
    }
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t j = 0; j < us.size(); ++j) {
        if (i == j) continue;
        for (const Term& w : pool_.witnesses(b)) {
          ++cases;
          if (!app_nf(b, images[i], images[j], w).passes()) continue;
          Term back = apply(r, us[i], us[j], w);
          if (app_nf(a, us[i], us[j], back).is_fails())
            return Verdict::fails("reflector does not reflect apartness", {us[i], us[j], w, back});
        }
      }
    return Verdict::unknown("sampled " + std::to_string(cases) + " cases");
  }

  Verdict app_uncached(const Type& s, const Term& x, const Term& y, const Term& z) {
    Verdict core = app_core(s, x, y, z);
    if (core.is_fails()) return core;
    return core && dom_nf(s, x) && dom_nf(s, y);
  }

  // The clause without the trailing dom conjuncts.
  Verdict app_core(const Type& s, const Term& x, const Term& y, const Term& z) {
    switch (s.kind()) {
      case TypeKind::Nat: {
        auto a = x.as_numeral(), b = y.as_numeral();
        if (!a || !b) return Verdict::fails("not a numeral", {x, y});
        if (*a == *b) return Verdict::fails("equal numerals", {x, y});
        return Verdict::holds();
      }
      case TypeKind::Unit: return Verdict::fails("Unit has no apart elements", {x, y});
      case TypeKind::Prod: {
        int tag = detail::sum_tag(z);
        if (tag == 0) return Verdict::fails("witness is not an injection", {z});
        if (tag > 0) return app_nf(s.left(), first(x), first(y), z.arg());
        return app_nf(s.right(), second(x), second(y), z.arg());
      }
      case TypeKind::Sum: {
        int tx = detail::sum_tag(x), ty = detail::sum_tag(y);
        if (tx == 0 || ty == 0) return Verdict::fails("not an injection", {x, y});
        if (tx != ty) return Verdict::holds();
        if (tx > 0) return app_nf(s.left(), x.arg(), y.arg(), first(z));
        return app_nf(s.right(), x.arg(), y.arg(), second(z));
      }
      case TypeKind::Arrow: {
        Term p = first(z);
        Verdict values = app_nf(s.cod(), apply(first(x), p), apply(first(y), p), second(z));
        if (values.is_fails()) return values;
        Verdict at = dom_nf(s.dom(), p);
        if (at.is_fails()) return Verdict::fails("witness point outside the domain", {p});
        return at && values;
      }
      default: throw TypeError("app at type " + s.str());
    }
  }

  SamplePool& pool_;
  std::unordered_map<std::string, Verdict> dom_memo_, app_memo_;
};

/// dom for x : sigma+; `samples` join the pool by their inferred type.
inline Verdict dom_check(const Type& s, const Term& x, const std::vector<Term>& samples = {}) {
  SamplePool pool;
  for (const Term& t : samples) pool.add(t);
  ApartnessChecker c(pool);
  return c.dom(s, x);
}

/// app for x, y : sigma+ and z : sigma-.
inline Verdict app_check(const Type& s, const Term& x, const Term& y, const Term& z,
                         const std::vector<Term>& samples = {}) {
  SamplePool pool;
  for (const Term& t : samples) pool.add(t);
  ApartnessChecker c(pool);
  return c.app(s, x, y, z);
}

/// s : sigma+ -> sigma+ -> sigma- -> sigma- turning a witness for x # y
/// into one for y # x.
inline Term symmetry_term(const Type& s) {
  using namespace build;
  TranslatedType tr = translate_type(s);
  Type result = Type::arrow(tr.plus, Type::arrow(tr.plus, Type::arrow(tr.minus, tr.minus)));
  Term x = var("x", tr.plus), y = var("y", tr.plus), z = var("z", tr.minus);
  Term body;
  switch (s.kind()) {
    case TypeKind::Nat:
    case TypeKind::Unit: body = z; break;
    case TypeKind::Prod: {
      Type lm = minus_type(s.left()), rm = minus_type(s.right());
      Term sl = symmetry_term(s.left()), sr = symmetry_term(s.right());
      Term onl = lam("p", lm, app(detail::inl_at(lm, rm), app(sl, fst(x), fst(y), var("p", lm))));
      Term onr = lam("q", rm, app(detail::inr_at(lm, rm), app(sr, snd(x), snd(y), var("q", rm))));
      body = app(case_(), onl, onr, z);
      break;
    }
    case TypeKind::Sum: {
      Type lp = plus_type(s.left()), rp = plus_type(s.right());
      Term sl = symmetry_term(s.left()), sr = symmetry_term(s.right());
      Term u_l = var("u", lp), v_l = var("v", lp), u_r = var("u", rp), v_r = var("v", rp);
      Term both_l = lam("v", lp, pair(app(sl, u_l, v_l, fst(z)), snd(z)));
      Term both_r = lam("v", rp, pair(fst(z), app(sr, u_r, v_r, snd(z))));
      Term x_l = lam("u", lp, app(case_(), both_l, lam("v", rp, z), y));
      Term x_r = lam("u", rp, app(case_(), lam("v", lp, z), both_r, y));
      body = app(case_(), x_l, x_r, x);
      break;
    }
    case TypeKind::Arrow: {
      Term p = fst(z);
      body = pair(p, app(symmetry_term(s.cod()), app(fst(x), p), app(fst(y), p), snd(z)));
      break;
    }
    default: throw TypeError("no symmetry functional at " + s.str());
  }
  return compile_at(lam("x", tr.plus, lam("y", tr.plus, lam("z", tr.minus, body))), result);
}

/// t : sigma+ -> sigma+ -> sigma+ -> sigma- -> sigma- + sigma-. Given a
/// witness u for x # y and any z, returns inl v with v : x # z or inr w with
/// w : y # z. At N the left answer is preferred when both are valid.
inline Term transitivity_term(const Type& s) {
  using namespace build;
  TranslatedType tr = translate_type(s);
  const Type M = tr.minus;
  const Type MM = Type::sum(M, M);
  Type result = Type::arrow(tr.plus, Type::arrow(tr.plus, Type::arrow(tr.plus, Type::arrow(M, MM))));
  Term x = var("x", tr.plus), y = var("y", tr.plus), z = var("z", tr.plus), u = var("u", M);
  Term left = detail::inl_at(M, M), right = detail::inr_at(M, M);
  Term body;
  switch (s.kind()) {
    case TypeKind::Nat: body = derived::ite(MM, app(build_d(), x, z), app(right, u), app(left, u)); break;
    case TypeKind::Unit: body = app(left, u); break;
    case TypeKind::Prod: {
      Type lm = minus_type(s.left()), rm = minus_type(s.right());
      Term il = detail::inl_at(lm, rm), ir = detail::inr_at(lm, rm);
      Term tl = app(transitivity_term(s.left()), fst(x), fst(y), fst(z), var("p", lm));
      Term tr_ = app(transitivity_term(s.right()), snd(x), snd(y), snd(z), var("q", rm));
      Term onl = lam("p", lm,
                     app(case_(), lam("a", lm, app(left, app(il, var("a", lm)))),
                         lam("b", lm, app(right, app(il, var("b", lm)))), tl));
      Term onr = lam("q", rm,
                     app(case_(), lam("a", rm, app(left, app(ir, var("a", rm)))),
                         lam("b", rm, app(right, app(ir, var("b", rm)))), tr_));
      body = app(case_(), onl, onr, u);
      break;
    }
    case TypeKind::Sum: {
      Type lp = plus_type(s.left()), rp = plus_type(s.right());
      Type lm = minus_type(s.left()), rm = minus_type(s.right());
      auto on_tag = [&](const Term& target, const Type& lt, const Term& on_left, const Type& rt, const Term& on_right) {
        return app(case_(), lam("_l", lt, on_left), lam("_r", rt, on_right), target);
      };
      Term go_l = app(left, u), go_r = app(right, u);
      // both sides inl: recurse on the first components
      Term rec_l = app(transitivity_term(s.left()), var("x1", lp), var("y1", lp), var("z1", lp), fst(u));
      Term both_l = app(case_(), lam("a", lm, app(left, pair(var("a", lm), snd(u)))),
                        lam("b", lm, app(right, pair(var("b", lm), snd(u)))), rec_l);
      Term rec_r = app(transitivity_term(s.right()), var("x1", rp), var("y1", rp), var("z1", rp), snd(u));
      Term both_r = app(case_(), lam("a", rm, app(left, pair(fst(u), var("a", rm)))),
                        lam("b", rm, app(right, pair(fst(u), var("b", rm)))), rec_r);
      Term z_after_ll = app(case_(), lam("z1", lp, both_l), lam("_r", rp, go_l), z);
      Term z_after_rr = app(case_(), lam("_l", lp, go_l), lam("z1", rp, both_r), z);
      // tags of x and y differ: z shares its tag with exactly one of them
      Term z_after_lr = on_tag(z, lp, go_r, rp, go_l);
      Term z_after_rl = on_tag(z, lp, go_l, rp, go_r);
      Term x_l = lam("x1", lp, app(case_(), lam("y1", lp, z_after_ll), lam("_y", rp, z_after_lr), y));
      Term x_r = lam("x1", rp, app(case_(), lam("_y", lp, z_after_rl), lam("y1", rp, z_after_rr), y));
      body = app(case_(), x_l, x_r, x);
      break;
    }
    case TypeKind::Arrow: {
      Type cm = minus_type(s.cod());
      Term p = fst(u);
      Term inner = app(transitivity_term(s.cod()), app(fst(x), p), app(fst(y), p), app(fst(z), p), snd(u));
      body = app(case_(), lam("a", cm, app(left, pair(p, var("a", cm)))),
                 lam("b", cm, app(right, pair(p, var("b", cm)))), inner);
      break;
    }
    default: throw TypeError("no transitivity functional at " + s.str());
  }
  return compile_at(lam("x", tr.plus, lam("y", tr.plus, lam("z", tr.plus, lam("u", M, body)))), result);
}

/// An apartness type given by a source type: carrier sigma+, witnesses
/// sigma-, the dom/app relations, and the symmetry and transitivity
/// functionals.
struct ApartnessStructure {
  Type source;
  Type carrier_type;
  Type witness_type;
  Term sym;
  Term trans;
};

inline ApartnessStructure build_apartness_structure(const Type& s) {
  TranslatedType tr = translate_type(s);
  return {s, tr.plus, tr.minus, symmetry_term(s), transitivity_term(s)};
}

/// Outcome of the sampled axiom check.
struct AxiomReport {
  std::size_t elements = 0;
  std::size_t reflexivity_cases = 0;
  std::size_t symmetry_cases = 0;
  std::size_t transitivity_cases = 0;
  std::size_t domain_cases = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Irreflexivity, symmetry, transitivity and "app implies dom" over the
/// pool members (at most `max_elements` of them, a seeded random choice
/// when `seed` is given) and witnesses.
inline AxiomReport check_axioms(const ApartnessStructure& st, ApartnessChecker& c, std::size_t max_elements = 10,
                                std::optional<std::uint32_t> seed = std::nullopt) {
  AxiomReport rep;
  const Type& s = st.source;
  std::vector<Term> all = c.pool().members(s);
  if (seed && all.size() > max_elements) {
    std::mt19937 rng(*seed);
    std::shuffle(all.begin(), all.end(), rng);
  }
  if (all.size() > max_elements) all.resize(max_elements);
  std::vector<Term> xs;
  for (const Term& m : all)
    if (c.dom_nf(s, m).passes()) xs.push_back(m);
  const std::vector<Term>& ws = c.pool().witnesses(s);
  rep.elements = xs.size();
  auto fail = [&](const std::string& what, std::initializer_list<Term> at) {
    std::string msg = what;
    for (const Term& t : at) msg += " | " + t.str();
    rep.failures.push_back(msg);
  };
  for (const Term& x : all)
    for (const Term& y : all)
      for (const Term& z : ws) {
        ++rep.domain_cases;
        if (c.app_nf(s, x, y, z).passes() && !(c.dom_nf(s, x).passes() && c.dom_nf(s, y).passes()))
          fail("app without dom", {x, y, z});
      }
  for (const Term& x : xs)
    for (const Term& z : ws) {
      ++rep.reflexivity_cases;
      if (!c.app_nf(s, x, x, z).is_fails()) fail("element apart from itself", {x, z});
    }
  for (const Term& x : xs)
    for (const Term& y : xs)
      for (const Term& z : ws) {
        if (!c.app_nf(s, x, y, z).passes()) continue;
        ++rep.symmetry_cases;
        Term flipped = ApartnessChecker::apply(st.sym, x, y, z);
        Verdict v = c.app_nf(s, y, x, flipped);
        if (v.is_fails()) fail("symmetry functional: " + v.detail, {x, y, z, flipped});
        for (const Term& w : xs) {
          ++rep.transitivity_cases;
          Term r = normalize_compiled(Term::app(Term::app(Term::app(Term::app(st.trans, x), y), w), z));
          int tag = detail::sum_tag(r);
          Verdict tv = tag > 0   ? c.app_nf(s, x, w, r.arg())
                       : tag < 0 ? c.app_nf(s, y, w, r.arg())
                                 : Verdict::fails("result is not an injection");
          if (tv.is_fails()) fail("transitivity functional: " + tv.detail, {x, y, w, z, r});
        }
      }
  return rep;
}

/// A premorphism between the apartness types of `from` and `to`.
struct Premorphism {
  Type from;
  Type to;
  Term forward;  // from+ -> to+
  Term reflect;  // from+ -> from+ -> to- -> from-

  /// The pair (forward, reflect) as an element of (from -> to)+.
  Term element() const { return build::pair(forward, reflect); }
  Type arrow() const { return Type::arrow(from, to); }
};

/// Forward preserves dom and reflect reflects apartness, on samples.
inline Verdict check_premorphism(ApartnessChecker& c, const Premorphism& f) {
  return c.dom(f.arrow(), f.element());
}

/// Pool elements with no apartness witness must map to elements with none.
/// A witness for the images that the reflector turns into a genuine
/// witness for the inputs shows the inputs were never equivalent, so only
/// the other case is reported.
inline Verdict check_preserves_equivalence(ApartnessChecker& c, const Premorphism& f) {
  TranslatedType ta = translate_type(f.from), tb = translate_type(f.to);
  Term fwd = detail::closed_nf(f.forward, Type::arrow(ta.plus, tb.plus));
  Term refl = detail::closed_nf(f.reflect, Type::arrow(ta.plus, Type::arrow(ta.plus, Type::arrow(tb.minus, ta.minus))));
  std::vector<Term> xs = c.domain_members(f.from);
  const std::vector<Term>& wa = c.pool().witnesses(f.from);
  const std::vector<Term>& wb = c.pool().witnesses(f.to);
  std::size_t cases = 0;
  for (const Term& a0 : xs)
    for (const Term& a1 : xs) {
      bool apart = false;
      for (const Term& w : wa)
        if (c.app_nf(f.from, a0, a1, w).passes()) {
          apart = true;
          break;
        }
      if (apart) continue;
      Term b0 = ApartnessChecker::apply(fwd, a0), b1 = ApartnessChecker::apply(fwd, a1);
      for (const Term& w : wb) {
        ++cases;
        if (!c.app_nf(f.to, b0, b1, w).passes()) continue;
        Term back = ApartnessChecker::apply(refl, a0, a1, w);
        if (c.app_nf(f.from, a0, a1, back).is_fails())
          return Verdict::fails("equivalent inputs map to apart outputs", {a0, a1, w});
      }
    }
  return Verdict::unknown("sampled " + std::to_string(cases) + " cases");
}

}  // namespace tcap
