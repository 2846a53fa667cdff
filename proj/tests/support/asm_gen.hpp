#pragma once

// Seeded generation of small assemblies, predicates and morphisms over N.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tcap/assemblies.hpp"

namespace tcap::testing {

/// Data for one hyperdoctrine check: f : Y -> X, k : Z -> X, predicates
/// P, R over Y, Q over X, E over Z, and candidate witnesses for both
/// adjunctions.
struct HyperFixture {
  Assembly x, y, z;
  AsmMorphism f, k;
  Predicate p, q, r, e;
  std::vector<Term> ex_g, ex_h, all_g, all_h;
};

/// Data for the independence-of-premise check.
struct IpFixture {
  Assembly x, y;
  std::vector<Term> y_sample;
  Predicate phi, psi;
  std::vector<Term> functions;
};

/// Data for the choice check.
struct AcFixture {
  ChoiceInstance instance;
  std::vector<Term> x_sample, y_sample;
  std::vector<Term> functions;
};

class AsmGen {
 public:
  explicit AsmGen(std::uint32_t seed) : rng_(seed) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  /// A modest assembly over N: disjoint realizer sets of one or two numerals.
  Assembly modest(const std::string& prefix, std::size_t points) {
    std::vector<std::uint64_t> pool(12);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng_);
    std::vector<std::string> names;
    std::vector<std::vector<Term>> rs;
    std::size_t next = 0;
    for (std::size_t i = 0; i < points; ++i) {
      names.push_back(prefix + std::to_string(i));
      std::vector<Term> r = {numeral(pool[next++])};
      if (chance(0.4)) r.push_back(numeral(pool[next++]));
      rs.push_back(r);
    }
    return make_assembly(names, Type::nat(), rs);
  }

  /// A random point map with a lookup-table tracker.
  AsmMorphism morphism(const Assembly& from, const Assembly& to) {
    std::vector<std::size_t> map;
    std::vector<std::pair<Term, Term>> entries;
    for (std::size_t i = 0; i < from.size(); ++i) {
      map.push_back(pick(to.size()));
      for (const Term& a : from.realizers[i]) entries.emplace_back(a, to.realizers[map.back()][pick(to.realizers[map.back()].size())]);
    }
    Term t = finite_function_term(Type::nat(), Type::nat(), entries, numeral(0));
    return make_morphism(from, to, map, t);
  }

  /// Realizer lists of type N * N: pair c a with a in alpha(x).
  std::vector<std::vector<Term>> raw_predicate(const Assembly& over, double p_nonempty = 0.7) {
    std::vector<std::vector<Term>> sets(over.size());
    for (std::size_t x = 0; x < over.size(); ++x) {
      if (!chance(p_nonempty)) continue;
      std::size_t n = 1 + pick(2);
      for (std::size_t i = 0; i < n; ++i) sets[x].push_back(realizer_at(over, x));
    }
    return sets;
  }

  Term realizer_at(const Assembly& over, std::size_t x) {
    const auto& rs = over.realizers[x];
    return normalize_compiled(build::pair(numeral(pick(5)), rs[pick(rs.size())]));
  }

  Predicate predicate(const Assembly& over, const std::vector<std::vector<Term>>& sets) {
    return make_predicate(over, nn(), sets, build::snd());
  }

  HyperFixture hyper() {
    using namespace build;
    HyperFixture h;
    h.x = modest("x", 2 + pick(3));
    h.y = modest("y", 2 + pick(3));
    h.z = modest("z", 1 + pick(3));
    h.f = morphism(h.y, h.x);
    h.k = morphism(h.z, h.x);
    auto ps = raw_predicate(h.y), qs = raw_predicate(h.x), rs = raw_predicate(h.y);
    // make good exists-witnesses likely: Q realized where P is pushed
    for (std::size_t j = 0; j < h.y.size(); ++j)
      if (!ps[j].empty() && qs[h.f.map[j]].empty() && chance(0.7)) qs[h.f.map[j]].push_back(realizer_at(h.x, h.f.map[j]));
    for (std::size_t j = 0; j < h.y.size(); ++j)
      if (!qs[h.f.map[j]].empty() && rs[j].empty() && chance(0.7)) rs[j].push_back(realizer_at(h.y, j));
    h.p = predicate(h.y, ps);
    h.q = predicate(h.x, qs);
    h.r = predicate(h.y, rs);
    h.e = predicate(h.z, raw_predicate(h.z));

    const Type N = Type::nat(), NN = nn();
    // exists: g : N*N -> N*N and h : N*N -> (N*N)*N keyed on P's realizers
    for (int c = 0; c < 3; ++c) {
      bool sloppy = c == 2;
      std::vector<std::pair<Term, Term>> ge, he;
      for (std::size_t j = 0; j < h.y.size(); ++j) {
        const auto& target = h.q.sets[h.f.map[j]].elements();
        for (const Term& b : h.p.sets[j].elements()) {
          Term cv = (!target.empty() && !sloppy) ? target[pick(target.size())] : realizer_at(h.x, pick(h.x.size()));
          ge.emplace_back(b, cv);
          Term a = sloppy ? h.y.realizers[pick(h.y.size())][0] : normalize_compiled(snd(b));
          he.emplace_back(b, pair(cv, a));
        }
      }
      h.ex_g.push_back(finite_function_term(NN, NN, ge, pair(numeral(0), numeral(0))));
      h.ex_h.push_back(finite_function_term(NN, Type::prod(NN, N), he, pair(pair(numeral(0), numeral(0)), numeral(0))));
    }
    // forall: g : (N*N)*N -> N*N keyed on pair c a, h : N*N -> N*(N -> N*N)
    for (int c = 0; c < 3; ++c) {
      bool sloppy = c == 2;
      std::vector<std::pair<Term, Term>> ge;
      for (std::size_t j = 0; j < h.y.size(); ++j) {
        const auto& target = h.r.sets[j].elements();
        for (const Term& cv : h.q.sets[h.f.map[j]].elements())
          for (const Term& a : h.y.realizers[j]) {
            Term d = (!target.empty() && !sloppy) ? target[pick(target.size())] : realizer_at(h.y, pick(h.y.size()));
            ge.emplace_back(normalize_compiled(pair(cv, a)), d);
          }
      }
      h.all_g.push_back(finite_function_term(Type::prod(NN, N), NN, ge, pair(numeral(0), numeral(0))));
      std::vector<std::pair<Term, Term>> he;
      for (std::size_t x = 0; x < h.x.size(); ++x) {
        std::vector<std::pair<Term, Term>> inner;
        for (std::size_t j = 0; j < h.y.size(); ++j) {
          if (h.f.map[j] != x) continue;
          const auto& target = h.r.sets[j].elements();
          for (const Term& a : h.y.realizers[j])
            inner.emplace_back(a, (!target.empty() && !sloppy) ? target[pick(target.size())] : realizer_at(h.y, j));
        }
        Term fn = finite_function_term(N, NN, inner, pair(numeral(0), numeral(0)));
        for (const Term& cv : h.q.sets[x].elements()) he.emplace_back(cv, pair(normalize_compiled(snd(cv)), fn));
      }
      Term fallback = pair(numeral(0), lam("_", N, pair(numeral(0), numeral(0))));
      h.all_h.push_back(finite_function_term(NN, Type::prod(N, Type::arrow(N, NN)), he, fallback));
    }
    return h;
  }

  IpFixture ip() {
    using namespace build;
    IpFixture f;
    f.x = modest("x", 2 + pick(2));
    std::size_t ny = 1 + pick(3);
    for (std::size_t i = 0; i < ny; ++i) f.y_sample.push_back(numeral(i));
    f.y = embed_type(Type::nat(), f.y_sample);
    f.phi = predicate(f.x, raw_predicate(f.x, 0.4));
    Assembly xy = product(f.x, f.y);
    Type d = Type::prod(Type::nat(), nn());
    std::vector<std::vector<Term>> sets(xy.size());
    for (std::size_t p = 0; p < xy.size(); ++p)
      if (chance(0.6)) sets[p].push_back(normalize_compiled(pair(numeral(pick(4)), xy.realizers[p][0])));
    f.psi = make_predicate(xy, d, sets, snd());
    // functions A -> D choosing some psi realizer per point
    for (int c = 0; c < 3; ++c) {
      std::vector<std::pair<Term, Term>> entries;
      for (std::size_t x = 0; x < f.x.size(); ++x) {
        std::vector<Term> options;
        for (std::size_t j = 0; j < f.y.size(); ++j)
          for (const Term& t : f.psi.sets[product_index(f.y, x, j)].elements()) options.push_back(t);
        if (options.empty()) continue;
        for (const Term& a : f.x.realizers[x]) entries.emplace_back(a, options[pick(options.size())]);
      }
      f.functions.push_back(finite_function_term(Type::nat(), d, entries, pair(numeral(0), pair(numeral(0), numeral(0)))));
    }
    return f;
  }

  AcFixture ac() {
    using namespace build;
    AcFixture f;
    std::size_t nx = 1 + pick(3), ny = 1 + pick(3);
    for (std::size_t i = 0; i < nx; ++i) f.x_sample.push_back(numeral(i));
    for (std::size_t i = 0; i < ny; ++i) f.y_sample.push_back(numeral(i));
    Assembly x = embed_type(Type::nat(), f.x_sample), y = embed_type(Type::nat(), f.y_sample);
    Assembly z = modest("z", 1 + pick(2));
    Assembly over = product(x, product(y, z));
    Type d = Type::prod(Type::nat(), over.type);
    std::vector<std::vector<Term>> sets(over.size());
    auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * y.size() + j) * z.size() + k; };
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t k = 0; k < z.size(); ++k)
        for (std::size_t j = 0; j < y.size(); ++j)
          if (chance(0.5) || (j + 1 == y.size() && chance(0.8))) {
            const auto& rs = over.realizers[idx(i, j, k)];
            sets[idx(i, j, k)].push_back(normalize_compiled(pair(numeral(pick(4)), rs[pick(rs.size())])));
          }
    Predicate phi = make_predicate(over, d, sets, snd());
    f.instance = make_choice_instance(x, y, z, phi);
    for (int c = 0; c < 3; ++c) {
      std::vector<std::pair<Term, Term>> entries;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < z.size(); ++k) {
          std::vector<Term> options;
          for (std::size_t j = 0; j < y.size(); ++j)
            for (const Term& t : phi.sets[idx(i, j, k)].elements()) options.push_back(t);
          if (options.empty()) continue;
          for (const Term& cz : z.realizers[k])
            entries.emplace_back(normalize_compiled(pair(x.realizers[i][0], cz)), options[pick(options.size())]);
        }
      Term fallback = normalize_compiled(pair(numeral(0), pair(numeral(0), pair(numeral(0), numeral(0)))));
      f.functions.push_back(finite_function_term(nn(), d, entries, fallback));
    }
    return f;
  }

 private:
  static Type nn() { return Type::prod(Type::nat(), Type::nat()); }
  std::mt19937 rng_;
};

}  // namespace tcap::testing
