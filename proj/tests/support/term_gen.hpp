#pragma once

// Random generation of closed, well-typed terms for the property tests.

#include <random>
#include <vector>

#include "tcap/term.hpp"
#include "tcap/type.hpp"

namespace tcap::testing {

class TermGen {
 public:
  explicit TermGen(std::uint32_t seed) : rng_(seed) {}

  /// A small type from a fixed menu, for argument tuples.
  Type small_type() {
    static const std::vector<Type> menu = {
        Type::nat(),
        Type::unit(),
        Type::prod(Type::nat(), Type::nat()),
        Type::sum(Type::nat(), Type::unit()),
        Type::arrow(Type::nat(), Type::nat()),
        Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat()),
    };
    return menu[pick(menu.size())];
  }

  Term term(const Type& t, int depth) {
    using namespace build;
    if (depth > 0 && coin(0.45)) return elimination(t, depth);
    switch (t.kind()) {
      case TypeKind::Nat: {
        if (depth > 0 && coin(0.3)) return succ(term(t, depth - 1));
        return nat(pick(5));
      }
      case TypeKind::Unit: return unit();
      case TypeKind::Prod: return pair(term(t.left(), depth - 1), term(t.right(), depth - 1));
      case TypeKind::Sum:
        return coin(0.5) ? app(Term::constant(Comb::Inl, Type::arrow(t.left(), t)), term(t.left(), depth - 1))
                         : app(Term::constant(Comb::Inr, Type::arrow(t.right(), t)), term(t.right(), depth - 1));
      case TypeKind::Arrow: return function(t, depth);
      case TypeKind::Empty:
      case TypeKind::Meta: break;
    }
    throw std::logic_error("cannot generate a closed term of type " + t.str());
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

 private:
  Term function(const Type& t, int depth) {
    using namespace build;
    const Type& a = t.dom();
    const Type& b = t.cod();
    int choice = static_cast<int>(pick(4));
    if (choice == 0 && a == b) return lam("x", a, var("x", a));
    if (choice == 1 && a.is(TypeKind::Nat) && b.is(TypeKind::Nat)) return succ();
    if (choice == 2 && b.is(TypeKind::Nat) && a.is(TypeKind::Arrow) && a.dom().is(TypeKind::Nat) &&
        a.cod().is(TypeKind::Nat))
      return lam("f", a, app(var("f", a), nat(pick(4))));
    if (choice == 3 && a.is(TypeKind::Nat) && b.is(TypeKind::Nat))
      return lam("x", a, app(rec(), var("x", a), lam("n", a, lam("r", a, succ(var("r", a)))), nat(pick(3))));
    return app(Term::constant(Comb::K, Type::arrow(b, t)), term(b, depth - 1));
  }

  // A term of type t whose head is an eliminator or combinator redex.
  Term elimination(const Type& t, int depth) {
    using namespace build;
    const Type other = small_type();
    switch (pick(6)) {
      case 0: return app(fst(), pair(term(t, depth - 1), term(other, depth - 1)));
      case 1: return app(snd(), pair(term(other, depth - 1), term(t, depth - 1)));
      case 2: return app(K(), term(t, depth - 1), term(other, depth - 1));
      case 3: {
        Type s = Type::sum(other, Type::nat());
        return app(case_(), lam("u", other, term(t, depth - 1)), lam("v", Type::nat(), term(t, depth - 1)),
                   term(s, depth - 1));
      }
      case 4: {
        Type fn = Type::arrow(other, t);
        return app(term(fn, depth - 1), term(other, depth - 1));
      }
      default: {
        const Type N = Type::nat();
        Term step = lam("n", N, lam("r", t, coin(0.5) ? var("r", t) : term(t, depth - 2)));
        return app(rec(), term(t, depth - 1), step, nat(pick(4)));
      }
    }
  }

  std::mt19937 rng_;
};

}  // namespace tcap::testing
