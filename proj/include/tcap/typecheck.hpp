#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcap/error.hpp"
#include "tcap/term.hpp"
#include "tcap/type.hpp"

namespace tcap {

/// Type inference by first-order unification. Constants are polymorphic in
/// the surface syntax; every occurrence gets a fresh instance of its scheme
/// and the checker writes the solved instance back as the constant's
/// annotation. Instance variables that nothing constrains (the middle type
/// of `S K K`, say) are defaulted to Unit; they never affect reduction.
class TypeChecker {
 public:
  /// Infers a type for `t` and returns the annotated copy of `t` together
  /// with its (possibly still open) type. Call `finish` before reading
  /// annotations.
  std::pair<Term, Type> infer(const Term& t) {
    std::vector<std::pair<std::string, Type>> env;
    return go(t, env);
  }

  void unify(const Type& a, const Type& b, const Term& site) {
    Type x = walk(a), y = walk(b);
    if (x.is(TypeKind::Meta) && y.is(TypeKind::Meta) && x.meta_id() == y.meta_id()) return;
    if (x.is(TypeKind::Meta)) return bind(x.meta_id(), y, site);
    if (y.is(TypeKind::Meta)) return bind(y.meta_id(), x, site);
    if (x.kind() != y.kind()) mismatch(x, y, site);
    switch (x.kind()) {
      case TypeKind::Prod:
      case TypeKind::Sum:
      case TypeKind::Arrow:
        unify(x.left(), y.left(), site);
        unify(x.right(), y.right(), site);
        return;
      default: return;
    }
  }

  /// Fully substitutes solved variables. Unsolved ones stay as metas.
  Type resolve(const Type& t) const {
    Type w = walk(t);
    switch (w.kind()) {
      case TypeKind::Prod: return Type::prod(resolve(w.left()), resolve(w.right()));
      case TypeKind::Sum: return Type::sum(resolve(w.left()), resolve(w.right()));
      case TypeKind::Arrow: return Type::arrow(resolve(w.dom()), resolve(w.cod()));
      default: return w;
    }
  }

  /// Substitutes and defaults any remaining metas to Unit.
  Type ground(const Type& t) const {
    Type w = walk(t);
    switch (w.kind()) {
      case TypeKind::Meta: return Type::unit();
      case TypeKind::Prod: return Type::prod(ground(w.left()), ground(w.right()));
      case TypeKind::Sum: return Type::sum(ground(w.left()), ground(w.right()));
      case TypeKind::Arrow: return Type::arrow(ground(w.dom()), ground(w.cod()));
      default: return w;
    }
  }

  /// Rewrites every constant annotation to its ground type.
  Term finish(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Const: return Term::constant(t.comb(), ground(*t.annotation()));
      case TermKind::Var: return t;
      case TermKind::App: return Term::app(finish(t.fun()), finish(t.arg()));
      case TermKind::Lam: return Term::lam(t.name(), t.var_type(), finish(t.body()));
    }
    return t;
  }

  Type fresh() {
    solution_.emplace_back();
    return Type::meta(static_cast<int>(solution_.size()) - 1);
  }

  /// A fresh instance of the type scheme of a combinator.
  Type scheme(Comb c) {
    auto ar = [](const Type& a, const Type& b) { return Type::arrow(a, b); };
    const Type N = Type::nat();
    switch (c) {
      case Comb::K: {
        Type a = fresh(), b = fresh();
        return ar(a, ar(b, a));
      }
      case Comb::S: {
        Type a = fresh(), b = fresh(), r = fresh();
        return ar(ar(a, ar(b, r)), ar(ar(a, b), ar(a, r)));
      }
      case Comb::Pair: {
        Type a = fresh(), b = fresh();
        return ar(a, ar(b, Type::prod(a, b)));
      }
      case Comb::Fst: {
        Type a = fresh(), b = fresh();
        return ar(Type::prod(a, b), a);
      }
      case Comb::Snd: {
        Type a = fresh(), b = fresh();
        return ar(Type::prod(a, b), b);
      }
      case Comb::Inl: {
        Type a = fresh(), b = fresh();
        return ar(a, Type::sum(a, b));
      }
      case Comb::Inr: {
        Type a = fresh(), b = fresh();
        return ar(b, Type::sum(a, b));
      }
      case Comb::Case: {
        Type a = fresh(), b = fresh(), r = fresh();
        return ar(ar(a, r), ar(ar(b, r), ar(Type::sum(a, b), r)));
      }
      case Comb::Zero: return N;
      case Comb::Succ: return ar(N, N);
      case Comb::Rec: {
        Type a = fresh();
        return ar(a, ar(ar(N, ar(a, a)), ar(N, a)));
      }
      case Comb::Exf: return ar(Type::empty(), fresh());
      case Comb::Unit: return Type::unit();
    }
    return N;
  }

 private:
  Type walk(Type t) const {
    while (t.is(TypeKind::Meta) && solution_[static_cast<std::size_t>(t.meta_id())]) {
      t = *solution_[static_cast<std::size_t>(t.meta_id())];
    }
    return t;
  }

  bool occurs(int id, const Type& t) const {
    Type w = walk(t);
    switch (w.kind()) {
      case TypeKind::Meta: return w.meta_id() == id;
      case TypeKind::Prod:
      case TypeKind::Sum:
      case TypeKind::Arrow: return occurs(id, w.left()) || occurs(id, w.right());
      default: return false;
    }
  }

  void bind(int id, const Type& t, const Term& site) {
    if (occurs(id, t))
      throw TypeError("infinite type in `" + site.str() + "`: ?" + std::to_string(id) + " occurs in " +
                      resolve(t).str());
    solution_[static_cast<std::size_t>(id)] = t;
  }

  [[noreturn]] void mismatch(const Type& x, const Type& y, const Term& site) const {
    throw TypeError("type mismatch in `" + site.str() + "`: " + resolve(x).str() + " vs " + resolve(y).str());
  }

  std::pair<Term, Type> go(const Term& t, std::vector<std::pair<std::string, Type>>& env) {
    switch (t.kind()) {
      case TermKind::Const: {
        Type inst = scheme(t.comb());
        if (t.annotation()) unify(inst, *t.annotation(), t);
        return {Term::constant(t.comb(), inst), inst};
      }
      case TermKind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
          if (it->first == t.name()) {
            unify(it->second, t.var_type(), t);
            return {t, it->second};
          }
        }
        return {t, t.var_type()};
      }
      case TermKind::Lam: {
        env.emplace_back(t.name(), t.var_type());
        auto [body, bt] = go(t.body(), env);
        env.pop_back();
        return {Term::lam(t.name(), t.var_type(), body), Type::arrow(t.var_type(), bt)};
      }
      case TermKind::App: {
        auto [f, ft] = go(t.fun(), env);
        auto [a, at] = go(t.arg(), env);
        Type fw = walk(ft);
        if (fw.is(TypeKind::Arrow)) {
          Type dom = walk(fw.dom());
          Type got = walk(at);
          // Report the domain mismatch on the application itself.
          try {
            unify(dom, got, t);
          } catch (const TypeError&) {
            throw TypeError("type mismatch in `" + t.str() + "`: `" + t.fun().str() + "` expects " +
                            resolve(dom).str() + " but `" + t.arg().str() + "` has type " + resolve(got).str());
          }
          return {Term::app(f, a), fw.cod()};
        }
        if (!fw.is(TypeKind::Meta))
          throw TypeError("`" + t.fun().str() + "` of type " + resolve(fw).str() + " is not a function, in `" +
                          t.str() + "`");
        Type r = fresh();
        unify(fw, Type::arrow(at, r), t);
        return {Term::app(f, a), r};
      }
    }
    throw TypeError("malformed term");
  }

  std::vector<std::optional<Type>> solution_;
};

/// A term with every constant annotated by its ground instance.
struct Elaborated {
  Term term;
  Type type;
};

/// Infers and annotates. A result type with unconstrained parts is defaulted
/// like any other instance variable; use `infer_type` to reject those.
inline Elaborated elaborate(const Term& t) {
  TypeChecker tc;
  auto [annotated, ty] = tc.infer(t);
  return {tc.finish(annotated), tc.ground(ty)};
}

/// The unique type of `t`. Throws `TypeError` on a mismatch, and when the
/// type is not determined by the term (a bare `K`, for example).
inline Type infer_type(const Term& t) {
  TypeChecker tc;
  auto [annotated, ty] = tc.infer(t);
  Type r = tc.resolve(ty);
  if (r.has_meta()) throw TypeError("ambiguous type for `" + t.str() + "`: " + r.str());
  return r;
}

/// Elaborates two terms under the requirement that they share a type.
inline std::pair<Elaborated, Elaborated> elaborate_same_type(const Term& a, const Term& b) {
  TypeChecker tc;
  auto [ea, ta] = tc.infer(a);
  auto [eb, tb] = tc.infer(b);
  try {
    tc.unify(ta, tb, a);
  } catch (const TypeError&) {
    throw TypeError("terms have different types: `" + a.str() + "` : " + tc.resolve(ta).str() + ", `" + b.str() +
                    "` : " + tc.resolve(tb).str());
  }
  return {{tc.finish(ea), tc.ground(ta)}, {tc.finish(eb), tc.ground(tb)}};
}

}  // namespace tcap
