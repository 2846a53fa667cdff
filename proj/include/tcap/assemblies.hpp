#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcap/abstraction.hpp"
#include "tcap/apartness.hpp"
#include "tcap/combinators.hpp"
#include "tcap/error.hpp"
#include "tcap/normalize.hpp"
#include "tcap/term.hpp"
#include "tcap/type.hpp"

namespace tcap {

namespace detail {

/// Convertibility on normal forms: the untyped skeletons agree.
inline bool contains_nf(const std::vector<Term>& set, const Term& nf) {
  for (const Term& t : set)
    if (same_skeleton(t, nf)) return true;
  return false;
}

inline void push_unique(std::vector<Term>& set, const Term& nf) {
  if (!contains_nf(set, nf)) set.push_back(nf);
}

inline Term arrow_term(const Term& t, const Type& from, const Type& to) {
  return closed_nf(t, Type::arrow(from, to));
}

}  // namespace detail

/// A finite set of realizers (normal forms) with decidable membership.
/// Intensional sets carry a membership test and a finite candidate list;
/// enumerating them yields only the candidates that pass.
class RealizerSet {
 public:
  RealizerSet() = default;

  static RealizerSet finite(const std::vector<Term>& nfs) {
    RealizerSet r;
    for (const Term& t : nfs) detail::push_unique(r.elems_, t);
    return r;
  }

  /// `exact_member` is false when the membership test itself samples.
  static RealizerSet intensional(std::function<bool(const Term&)> member, std::vector<Term> candidates,
                                 bool exact_member = true) {
    RealizerSet r;
    r.member_ = std::move(member);
    r.exact_member_ = exact_member;
    for (const Term& t : candidates)
      if (r.member_(t)) detail::push_unique(r.elems_, t);
    return r;
  }

  bool is_finite() const { return !member_; }
  /// Membership is decided exactly (finite sets, or exact tests).
  bool exact_membership() const { return is_finite() || exact_member_; }

  bool contains(const Term& nf) const { return member_ ? member_(nf) : detail::contains_nf(elems_, nf); }

  /// All elements of a finite set; the passing candidates otherwise.
  const std::vector<Term>& elements() const { return elems_; }
  bool known_empty() const { return is_finite() && elems_.empty(); }

 private:
  std::vector<Term> elems_;
  std::function<bool(const Term&)> member_;
  bool exact_member_ = true;
};

/// A finite assembly (X, A, alpha): named points, a realizer type and an
/// inhabited set of normal-form realizers per point.
struct Assembly {
  std::vector<std::string> points;
  Type type;
  std::vector<std::vector<Term>> realizers;

  std::size_t size() const { return points.size(); }
  bool realizes(std::size_t x, const Term& nf) const { return detail::contains_nf(realizers[x], nf); }

  /// All points realized by `nf`.
  std::vector<std::size_t> points_of(const Term& nf) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < size(); ++x)
      if (realizes(x, nf)) out.push_back(x);
    return out;
  }

  /// Union of all realizer sets.
  std::vector<Term> all_realizers() const {
    std::vector<Term> out;
    for (const auto& rs : realizers)
      for (const Term& t : rs) detail::push_unique(out, t);
    return out;
  }
};

/// Builds an assembly, normalizing every realizer and checking its type.
inline Assembly make_assembly(std::vector<std::string> points, const Type& type,
                              const std::vector<std::vector<Term>>& realizers) {
  if (points.size() != realizers.size()) throw PreconditionError("one realizer list per point is required");
  Assembly a{std::move(points), type, {}};
  for (std::size_t x = 0; x < a.points.size(); ++x) {
    if (realizers[x].empty()) throw PreconditionError("point `" + a.points[x] + "` has no realizer");
    std::vector<Term> rs;
    for (const Term& t : realizers[x]) detail::push_unique(rs, detail::closed_nf(t, type));
    a.realizers.push_back(std::move(rs));
  }
  return a;
}

inline bool same_assembly(const Assembly& a, const Assembly& b) {
  if (a.type != b.type || a.points != b.points) return false;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a.realizers[x].size() != b.realizers[x].size()) return false;
    for (const Term& t : a.realizers[x])
      if (!b.realizes(x, t)) return false;
  }
  return true;
}

/// E(sigma) restricted to a sample of closed terms: alpha(x) = {x}.
inline Assembly embed_type(const Type& s, const std::vector<Term>& sample) {
  Assembly a{{}, s, {}};
  for (const Term& t : sample) {
    Term nf = detail::closed_nf(t, s);
    for (const auto& rs : a.realizers)
      if (same_skeleton(rs[0], nf)) throw PreconditionError("sample elements `" + rs[0].str() + "` and `" + t.str() + "` are convertible");
    a.points.push_back(nf.str());
    a.realizers.push_back({nf});
  }
  return a;
}

/// Equal realizers only realize equal points.
inline bool is_modest(const Assembly& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (const Term& t : a.realizers[x])
      if (a.points_of(t).size() != 1) return false;
  return true;
}

/// Modest, and each point has a single realizer up to convertibility.
inline bool is_strongly_modest(const Assembly& a) {
  if (!is_modest(a)) return false;
  for (const auto& rs : a.realizers)
    if (rs.size() != 1) return false;
  return true;
}

/// Every element of `universe` (closed terms of the realizer type) realizes
/// some point.
inline bool is_exhaustive(const Assembly& a, const std::vector<Term>& universe) {
  for (const Term& t : universe)
    if (a.points_of(detail::closed_nf(t, a.type)).empty()) return false;
  return true;
}

inline bool is_basic(const Assembly& a, const std::vector<Term>& universe) {
  return is_strongly_modest(a) && is_exhaustive(a, universe);
}

/// A morphism of assemblies: a point map and a tracker of type A -> B.
struct AsmMorphism {
  Assembly from;
  Assembly to;
  std::vector<std::size_t> map;
  Term tracker;  // normal form
};

/// Checks that the tracker sends every realizer of x into beta(f(x)).
inline Verdict check_tracks(const AsmMorphism& f) {
  for (std::size_t x = 0; x < f.from.size(); ++x)
    for (const Term& a : f.from.realizers[x]) {
      Term b = apply_nf(f.tracker, a);
      if (!f.to.realizes(f.map[x], b))
        return Verdict::fails("tracker sends a realizer of `" + f.from.points[x] + "` outside `" +
                                  f.to.points[f.map[x]] + "`",
                              {a, b});
    }
  return Verdict::holds();
}

inline AsmMorphism make_morphism(const Assembly& from, const Assembly& to, std::vector<std::size_t> map,
                                 const Term& tracker) {
  if (map.size() != from.size()) throw PreconditionError("point map has the wrong length");
  for (std::size_t y : map)
    if (y >= to.size()) throw PreconditionError("point map leaves the target");
  AsmMorphism f{from, to, std::move(map), detail::arrow_term(tracker, from.type, to.type)};
  if (Verdict v = check_tracks(f); v.is_fails()) throw PreconditionError(v.str());
  return f;
}

inline AsmMorphism identity_morphism(const Assembly& a) {
  std::vector<std::size_t> map(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) map[x] = x;
  return make_morphism(a, a, map, build::lam("x", a.type, build::var("x", a.type)));
}

/// The unique morphism tracked by `f` from a strongly modest assembly into a
/// modest one that contains every image realizer.
inline AsmMorphism lift_morphism(const Term& f, const Assembly& x, const Assembly& y) {
  if (!is_strongly_modest(x)) throw PreconditionError("source assembly is not strongly modest");
  if (!is_modest(y)) throw PreconditionError("target assembly is not modest");
  Term tracker = detail::arrow_term(f, x.type, y.type);
  std::vector<std::size_t> map;
  for (std::size_t p = 0; p < x.size(); ++p) {
    Term image = apply_nf(tracker, x.realizers[p][0]);
    auto targets = y.points_of(image);
    if (targets.empty())
      throw PreconditionError("image `" + image.str() + "` of `" + x.points[p] + "` realizes no target point");
    map.push_back(targets[0]);
  }
  return AsmMorphism{x, y, std::move(map), tracker};
}

/// Product assembly; realizers of (x, y) are the pairs of realizers.
inline Assembly product(const Assembly& a, const Assembly& b) {
  Assembly p{{}, Type::prod(a.type, b.type), {}};
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      p.points.push_back("(" + a.points[x] + "," + b.points[y] + ")");
      std::vector<Term> rs;
      for (const Term& s : a.realizers[x])
        for (const Term& t : b.realizers[y]) rs.push_back(normalize_compiled(build::pair(s, t)));
      p.realizers.push_back(std::move(rs));
    }
  return p;
}

/// Index of (x, y) in product(a, b).
inline std::size_t product_index(const Assembly& b, std::size_t x, std::size_t y) { return x * b.size() + y; }

/// Pullback of f : X -> W and g : Y -> W with its two projections.
struct Pullback {
  Assembly object;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  AsmMorphism left;   // to X
  AsmMorphism right;  // to Y
};

inline Pullback pullback(const AsmMorphism& f, const AsmMorphism& g) {
  const Assembly &x = f.from, &y = g.from;
  Pullback pb;
  pb.object.type = Type::prod(x.type, y.type);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (f.map[i] != g.map[j]) continue;
      pb.pairs.emplace_back(i, j);
      pb.object.points.push_back("(" + x.points[i] + "," + y.points[j] + ")");
      std::vector<Term> rs;
      for (const Term& s : x.realizers[i])
        for (const Term& t : y.realizers[j]) rs.push_back(normalize_compiled(build::pair(s, t)));
      pb.object.realizers.push_back(std::move(rs));
    }
  std::vector<std::size_t> to_x, to_y;
  for (auto [i, j] : pb.pairs) {
    to_x.push_back(i);
    to_y.push_back(j);
  }
  Type pt = pb.object.type;
  pb.left = AsmMorphism{pb.object, x, to_x, detail::arrow_term(build::fst(), pt, x.type)};
  pb.right = AsmMorphism{pb.object, y, to_y, detail::arrow_term(build::snd(), pt, y.type)};
  return pb;
}

/// A predicate (B, beta) on an assembly, with its support witness B -> A.
struct Predicate {
  Assembly over;
  Type type;
  std::vector<RealizerSet> sets;
  Term support;  // normal form

  bool exact() const {
    for (const auto& s : sets)
      if (!s.is_finite()) return false;
    return true;
  }
};

/// A predicate with finite realizer sets.
inline Predicate make_predicate(const Assembly& over, const Type& type, const std::vector<std::vector<Term>>& sets,
                                const Term& support) {
  if (sets.size() != over.size()) throw PreconditionError("one realizer list per point is required");
  Predicate p{over, type, {}, detail::arrow_term(support, type, over.type)};
  for (const auto& s : sets) {
    std::vector<Term> nfs;
    for (const Term& t : s) nfs.push_back(detail::closed_nf(t, type));
    p.sets.push_back(RealizerSet::finite(nfs));
  }
  return p;
}

/// The support witness sends every (enumerated) realizer of x into alpha(x).
inline Verdict check_support(const Predicate& p) {
  for (std::size_t x = 0; x < p.over.size(); ++x)
    for (const Term& b : p.sets[x].elements()) {
      Term a = apply_nf(p.support, b);
      if (!p.over.realizes(x, a)) return Verdict::fails("support sends a realizer outside alpha(" + p.over.points[x] + ")", {b, a});
    }
  return p.exact() ? Verdict::holds() : Verdict::unknown("intensional realizer sets enumerated on candidates");
}

/// P <= Q via `witness` : B -> C, pointwise on realizers.
inline Verdict leq_check(const Predicate& p, const Predicate& q, const Term& witness) {
  if (!same_assembly(p.over, q.over)) throw PreconditionError("predicates live on different assemblies");
  Term w = detail::arrow_term(witness, p.type, q.type);
  bool exact = p.exact();
  for (std::size_t x = 0; x < p.over.size(); ++x) {
    if (!q.sets[x].exact_membership()) exact = false;
    for (const Term& b : p.sets[x].elements()) {
      Term c = apply_nf(w, b);
      if (!q.sets[x].contains(c))
        return Verdict::fails("at `" + p.over.points[x] + "` the witness maps a realizer outside the target", {b, c});
    }
  }
  return exact ? Verdict::holds() : Verdict::unknown("intensional sets checked on candidates");
}

/// Both directions of leq_check.
inline Verdict equivalent(const Predicate& p, const Predicate& q, const Term& there, const Term& back) {
  return leq_check(p, q, there) && leq_check(q, p, back);
}

inline Term identity_term(const Type& t) { return detail::closed_nf(build::lam("x", t, build::var("x", t)), Type::arrow(t, t)); }

/// (A, alpha).
inline Predicate top(const Assembly& a) {
  std::vector<RealizerSet> sets;
  for (const auto& rs : a.realizers) sets.push_back(RealizerSet::finite(rs));
  return Predicate{a, a.type, sets, identity_term(a.type)};
}

/// (Empty, nothing).
inline Predicate bottom(const Assembly& a) {
  Type e = Type::empty();
  Term support = compile_at(build::lam("e", e, build::app(build::exf(), build::var("e", e))), Type::arrow(e, a.type));
  return Predicate{a, e, std::vector<RealizerSet>(a.size()), support};
}

namespace detail {

inline void same_base(const Predicate& p, const Predicate& q) {
  if (!same_assembly(p.over, q.over)) throw PreconditionError("predicates live on different assemblies");
}

/// Constant functions into `targets`, identity when the types agree, plus
/// caller functions of the right type.
inline std::vector<Term> function_candidates(const Type& from, const Type& to, const std::vector<Term>& targets,
                                             const std::vector<Term>& extra) {
  std::vector<Term> out;
  for (const Term& t : targets) push_unique(out, closed_nf(build::lam("_c", from, t), Type::arrow(from, to)));
  if (from == to) push_unique(out, identity_term(from));
  Type want = Type::arrow(from, to);
  for (const Term& f : extra) {
    Elaborated e = compile(f);
    if (e.type == want) push_unique(out, normalize_compiled(e.term));
  }
  return out;
}

inline std::vector<Term> union_of(const std::vector<RealizerSet>& sets) {
  std::vector<Term> out;
  for (const auto& s : sets)
    for (const Term& t : s.elements()) push_unique(out, t);
  return out;
}

}  // namespace detail

/// (B * C, beta x gamma).
inline Predicate pred_and(const Predicate& p, const Predicate& q) {
  detail::same_base(p, q);
  using namespace build;
  Type t = Type::prod(p.type, q.type);
  Predicate r{p.over, t, {}, detail::closed_nf(lam("z", t, app(p.support, fst(var("z", t)))), Type::arrow(t, p.over.type))};
  for (std::size_t x = 0; x < p.over.size(); ++x) {
    std::vector<Term> cands;
    for (const Term& b : p.sets[x].elements())
      for (const Term& c : q.sets[x].elements()) cands.push_back(normalize_compiled(pair(b, c)));
    if (p.sets[x].is_finite() && q.sets[x].is_finite()) {
      r.sets.push_back(RealizerSet::finite(cands));
    } else {
      RealizerSet bs = p.sets[x], cs = q.sets[x];
      auto member = [bs, cs](const Term& z) {
        return bs.contains(normalize_compiled(build::fst(z))) && cs.contains(normalize_compiled(build::snd(z)));
      };
      r.sets.push_back(RealizerSet::intensional(member, cands, bs.exact_membership() && cs.exact_membership()));
    }
  }
  return r;
}

/// (B + C, inl beta u inr gamma).
inline Predicate pred_or(const Predicate& p, const Predicate& q) {
  detail::same_base(p, q);
  using namespace build;
  Type t = Type::sum(p.type, q.type);
  Term support = detail::closed_nf(app(case_(), p.support, q.support), Type::arrow(t, p.over.type));
  Predicate r{p.over, t, {}, support};
  Term l = detail::inl_at(p.type, q.type), rr = detail::inr_at(p.type, q.type);
  for (std::size_t x = 0; x < p.over.size(); ++x) {
    std::vector<Term> cands;
    for (const Term& b : p.sets[x].elements()) cands.push_back(normalize_compiled(app(l, b)));
    for (const Term& c : q.sets[x].elements()) cands.push_back(normalize_compiled(app(rr, c)));
    if (p.sets[x].is_finite() && q.sets[x].is_finite()) {
      r.sets.push_back(RealizerSet::finite(cands));
    } else {
      RealizerSet bs = p.sets[x], cs = q.sets[x];
      auto member = [bs, cs](const Term& z) {
        int tag = detail::sum_tag(z);
        return tag > 0 ? bs.contains(z.arg()) : tag < 0 ? cs.contains(z.arg()) : false;
      };
      r.sets.push_back(RealizerSet::intensional(member, cands, bs.exact_membership() && cs.exact_membership()));
    }
  }
  return r;
}

/// P => Q = (A * (B -> C), delta): fst in alpha(x) and snd sends beta(x)
/// into gamma(x). Enumerated over alpha(x) and `functions` (plus constant
/// functions into Q's realizers).
inline Predicate pred_implies(const Predicate& p, const Predicate& q, const std::vector<Term>& functions = {}) {
  detail::same_base(p, q);
  using namespace build;
  const Type a = p.over.type;
  Type fn = Type::arrow(p.type, q.type);
  Type t = Type::prod(a, fn);
  Predicate r{p.over, t, {}, detail::closed_nf(fst(), Type::arrow(t, a))};
  std::vector<Term> fs = detail::function_candidates(p.type, q.type, detail::union_of(q.sets), functions);
  for (std::size_t x = 0; x < p.over.size(); ++x) {
    std::vector<Term> cands;
    for (const Term& n : p.over.realizers[x])
      for (const Term& m : fs) cands.push_back(normalize_compiled(pair(n, m)));
    const Assembly& over = p.over;
    RealizerSet bs = p.sets[x], cs = q.sets[x];
    auto member = [over, x, bs, cs](const Term& z) {
      if (!over.realizes(x, normalize_compiled(build::fst(z)))) return false;
      Term m = normalize_compiled(build::snd(z));
      for (const Term& n : bs.elements())
        if (!cs.contains(apply_nf(m, n))) return false;
      return true;
    };
    r.sets.push_back(RealizerSet::intensional(member, cands, bs.is_finite() && cs.exact_membership()));
  }
  return r;
}

/// not P = (A, mu) with mu(x) = alpha(x) when P has no realizer at x and
/// empty otherwise.
inline Predicate pred_neg(const Predicate& p) {
  Predicate r{p.over, p.over.type, {}, identity_term(p.over.type)};
  for (std::size_t x = 0; x < p.over.size(); ++x)
    r.sets.push_back(RealizerSet::finite(p.sets[x].elements().empty() ? p.over.realizers[x] : std::vector<Term>{}));
  return r;
}

/// Pf for f : Y -> X: (C * B, gamma_f) with gamma_f(y) = gamma(f y) x beta(y).
inline Predicate reindex(const AsmMorphism& f, const Predicate& p) {
  if (!same_assembly(f.to, p.over)) throw PreconditionError("predicate does not live on the codomain");
  using namespace build;
  const Assembly& y = f.from;
  Type t = Type::prod(p.type, y.type);
  Predicate r{y, t, {}, detail::closed_nf(snd(), Type::arrow(t, y.type))};
  for (std::size_t j = 0; j < y.size(); ++j) {
    const RealizerSet& g = p.sets[f.map[j]];
    std::vector<Term> cands;
    for (const Term& c : g.elements())
      for (const Term& b : y.realizers[j]) cands.push_back(normalize_compiled(pair(c, b)));
    if (g.is_finite()) {
      r.sets.push_back(RealizerSet::finite(cands));
    } else {
      std::vector<Term> bs = y.realizers[j];
      auto member = [g, bs](const Term& z) {
        return g.contains(normalize_compiled(build::fst(z))) && detail::contains_nf(bs, normalize_compiled(build::snd(z)));
      };
      r.sets.push_back(RealizerSet::intensional(member, cands, g.exact_membership()));
    }
  }
  return r;
}

/// exists_f for f : Y -> X: (C, gamma_E) with gamma_E(x) the union of gamma
/// over the fiber of x. Support: the tracker after P's support.
inline Predicate exists_along(const AsmMorphism& f, const Predicate& p) {
  if (!same_assembly(f.from, p.over)) throw PreconditionError("predicate does not live on the domain");
  using namespace build;
  Term support = detail::closed_nf(lam("c", p.type, app(f.tracker, app(p.support, var("c", p.type)))),
                                   Type::arrow(p.type, f.to.type));
  Predicate r{f.to, p.type, {}, support};
  for (std::size_t x = 0; x < f.to.size(); ++x) {
    std::vector<RealizerSet> fiber;
    for (std::size_t y = 0; y < f.from.size(); ++y)
      if (f.map[y] == x) fiber.push_back(p.sets[y]);
    bool finite = true, exact = true;
    for (const auto& s : fiber) {
      finite = finite && s.is_finite();
      exact = exact && s.exact_membership();
    }
    std::vector<Term> all = detail::union_of(fiber);
    if (finite) {
      r.sets.push_back(RealizerSet::finite(all));
    } else {
      auto member = [fiber](const Term& z) {
        for (const auto& s : fiber)
          if (s.contains(z)) return true;
        return false;
      };
      r.sets.push_back(RealizerSet::intensional(member, all, exact));
    }
  }
  return r;
}

/// forall_f for f : Y -> X: (A * (B -> D), delta_A) where fst p in alpha(x)
/// and snd p sends every realizer k of every y over x into delta(y).
/// Enumerated over alpha(x) and `functions`.
inline Predicate forall_along(const AsmMorphism& f, const Predicate& p, const std::vector<Term>& functions = {}) {
  if (!same_assembly(f.from, p.over)) throw PreconditionError("predicate does not live on the domain");
  using namespace build;
  const Assembly &xs = f.to, &ys = f.from;
  Type fn = Type::arrow(ys.type, p.type);
  Type t = Type::prod(xs.type, fn);
  Predicate r{xs, t, {}, detail::closed_nf(fst(), Type::arrow(t, xs.type))};
  std::vector<Term> fs = detail::function_candidates(ys.type, p.type, detail::union_of(p.sets), functions);
  for (std::size_t x = 0; x < xs.size(); ++x) {
    std::vector<std::pair<std::vector<Term>, RealizerSet>> fiber;
    bool exact = true;
    for (std::size_t y = 0; y < ys.size(); ++y)
      if (f.map[y] == x) {
        fiber.emplace_back(ys.realizers[y], p.sets[y]);
        exact = exact && p.sets[y].exact_membership();
      }
    std::vector<Term> alpha = xs.realizers[x];
    auto member = [alpha, fiber](const Term& z) {
      if (!detail::contains_nf(alpha, normalize_compiled(build::fst(z)))) return false;
      Term m = normalize_compiled(build::snd(z));
      for (const auto& [ks, delta] : fiber)
        for (const Term& k : ks)
          if (!delta.contains(apply_nf(m, k))) return false;
      return true;
    };
    std::vector<Term> cands;
    for (const Term& n : alpha)
      for (const Term& m : fs) cands.push_back(normalize_compiled(pair(n, m)));
    r.sets.push_back(RealizerSet::intensional(member, cands, exact));
  }
  return r;
}

/// The subobject Y_P = ({x : beta(x) nonempty}, B, beta) with its inclusion,
/// tracked by P's support.
inline AsmMorphism to_subobject(const Predicate& p) {
  Assembly sub{{}, p.type, {}};
  std::vector<std::size_t> map;
  for (std::size_t x = 0; x < p.over.size(); ++x) {
    if (p.sets[x].elements().empty()) continue;
    sub.points.push_back(p.over.points[x]);
    sub.realizers.push_back(p.sets[x].elements());
    map.push_back(x);
  }
  return AsmMorphism{sub, p.over, map, p.support};
}

/// The predicate of a mono m : Y -> X: gamma(x) = union of beta(y), m y = x.
inline Predicate from_subobject(const AsmMorphism& m) {
  Predicate r{m.to, m.from.type, {}, m.tracker};
  for (std::size_t x = 0; x < m.to.size(); ++x) {
    std::vector<Term> g;
    for (std::size_t y = 0; y < m.from.size(); ++y)
      if (m.map[y] == x)
        for (const Term& t : m.from.realizers[y]) detail::push_unique(g, t);
    r.sets.push_back(RealizerSet::finite(g));
  }
  return r;
}

inline bool is_mono(const AsmMorphism& m) {
  std::set<std::size_t> seen(m.map.begin(), m.map.end());
  return seen.size() == m.map.size();
}

/// [[not phi -> exists y. psi(y)]] over X: pairs (m, n) with n in alpha(x)
/// and m : A -> D sending mu(x) into the union of delta(x, y).
inline Predicate ip_premise(const Predicate& phi, const Predicate& psi, const Assembly& y,
                            const std::vector<Term>& functions = {}) {
  using namespace build;
  const Assembly& x = phi.over;
  Predicate mu = pred_neg(phi);
  Type a = x.type, d = psi.type;
  Type t = Type::prod(Type::arrow(a, d), a);
  Predicate r{x, t, {}, detail::closed_nf(snd(), Type::arrow(t, a))};
  std::vector<Term> fs = detail::function_candidates(a, d, detail::union_of(psi.sets), functions);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<RealizerSet> deltas;
    for (std::size_t j = 0; j < y.size(); ++j) deltas.push_back(psi.sets[product_index(y, i, j)]);
    std::vector<Term> alpha = x.realizers[i], mus = mu.sets[i].elements();
    auto member = [alpha, mus, deltas](const Term& z) {
      if (!detail::contains_nf(alpha, normalize_compiled(build::snd(z)))) return false;
      Term m = normalize_compiled(build::fst(z));
      for (const Term& k : mus) {
        Term v = apply_nf(m, k);
        bool hit = false;
        for (const auto& s : deltas) hit = hit || s.contains(v);
        if (!hit) return false;
      }
      return true;
    };
    std::vector<Term> cands;
    for (const Term& m : fs)
      for (const Term& n : alpha) cands.push_back(normalize_compiled(pair(m, n)));
    r.sets.push_back(RealizerSet::intensional(member, cands));
  }
  return r;
}

/// [[exists y. (not phi -> psi(y))]] over X: pairs (k, l) such that for some
/// y, l in alpha(x) x beta(y) and k sends mu(x) x beta(y) into delta(x, y).
inline Predicate ip_conclusion(const Predicate& phi, const Predicate& psi, const Assembly& y) {
  using namespace build;
  const Assembly& x = phi.over;
  Predicate mu = pred_neg(phi);
  Type a = x.type, b = y.type, d = psi.type;
  Type ab = Type::prod(a, b);
  Type t = Type::prod(Type::arrow(ab, d), ab);
  Predicate r{x, t, {}, detail::closed_nf(lam("z", t, fst(snd(var("z", t)))), Type::arrow(t, a))};
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<Term> alpha = x.realizers[i], mus = mu.sets[i].elements();
    std::vector<std::pair<std::vector<Term>, RealizerSet>> per_y;
    for (std::size_t j = 0; j < y.size(); ++j) per_y.emplace_back(y.realizers[j], psi.sets[product_index(y, i, j)]);
    auto member = [alpha, mus, per_y](const Term& z) {
      Term k = normalize_compiled(build::fst(z)), l = normalize_compiled(build::snd(z));
      if (!detail::contains_nf(alpha, normalize_compiled(build::fst(l)))) return false;
      Term lb = normalize_compiled(build::snd(l));
      for (const auto& [beta, delta] : per_y) {
        if (!detail::contains_nf(beta, lb)) continue;
        bool ok = true;
        for (const Term& m : mus)
          for (const Term& bb : beta) ok = ok && delta.contains(apply_nf(k, normalize_compiled(build::pair(m, bb))));
        if (ok) return true;
      }
      return false;
    };
    r.sets.push_back(RealizerSet::intensional(member, {}));
  }
  return r;
}

/// f(m, n) := (fn i. m n, (n, snd (g (m n)))) where g is psi's support
/// witness D -> A * B.
inline Term ip_witness(const Predicate& not_phi, const Predicate& psi, const Assembly& y) {
  using namespace build;
  Type a = not_phi.over.type, b = y.type, d = psi.type;
  if (!psi.support) throw PreconditionError("psi has no support witness");
  Type ab = Type::prod(a, b);
  Type premise = Type::prod(Type::arrow(a, d), a);
  Term p = var("p", premise);
  Term mn = app(fst(p), snd(p));
  Term body = pair(lam("i", ab, mn), pair(snd(p), snd(app(psi.support, mn))));
  Type conclusion = Type::prod(Type::arrow(ab, d), ab);
  return detail::closed_nf(lam("p", premise, body), Type::arrow(premise, conclusion));
}

/// Data of the choice principle: basic X, Y, any Z, and phi over
/// X x (Y x Z) (realizers of (x, (y, z)) are pairs a (pair b c)).
struct ChoiceInstance {
  Assembly x, y, z;
  Predicate phi;
  std::vector<Term> trackers;  // extra A -> B samples for the tracker quantifier

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * y.size() + j) * z.size() + k; }
};

inline ChoiceInstance make_choice_instance(const Assembly& x, const Assembly& y, const Assembly& z,
                                           const Predicate& phi, std::vector<Term> trackers = {}) {
  if (!same_assembly(phi.over, product(x, product(y, z))))
    throw PreconditionError("phi must live on X x (Y x Z)");
  return ChoiceInstance{x, y, z, phi, std::move(trackers)};
}

namespace detail {

/// The point map tracked by t : A -> B on X, if any (X strongly modest).
inline std::optional<std::vector<std::size_t>> tracked_map(const Assembly& x, const Assembly& y, const Term& t) {
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::optional<std::size_t> target;
    for (const Term& a : x.realizers[i]) {
      auto ps = y.points_of(apply_nf(t, a));
      if (ps.empty() || (target && *target != ps[0])) return std::nullopt;
      target = ps[0];
    }
    map.push_back(*target);
  }
  return map;
}

}  // namespace detail

/// [[forall x. exists y. phi(x, y, z)]] over Z: pairs (n, m), n in gamma(z),
/// m : A * C -> D sending each a (x) n into some delta(x, y, z).
inline Predicate ac_premise(const ChoiceInstance& ci, const std::vector<Term>& functions = {}) {
  using namespace build;
  Type a = ci.x.type, c = ci.z.type, d = ci.phi.type;
  Type ac = Type::prod(a, c);
  Type t = Type::prod(c, Type::arrow(ac, d));
  Predicate r{ci.z, t, {}, detail::closed_nf(fst(), Type::arrow(t, c))};
  std::vector<Term> fs = detail::function_candidates(ac, d, detail::union_of(ci.phi.sets), functions);
  for (std::size_t k = 0; k < ci.z.size(); ++k) {
    std::vector<Term> gamma = ci.z.realizers[k];
    ChoiceInstance inst = ci;
    auto member = [inst, k, gamma](const Term& p) {
      Term n = normalize_compiled(build::fst(p)), m = normalize_compiled(build::snd(p));
      if (!detail::contains_nf(gamma, n)) return false;
      for (std::size_t i = 0; i < inst.x.size(); ++i)
        for (const Term& av : inst.x.realizers[i])
          for (const Term& cv : gamma) {
            Term v = apply_nf(m, normalize_compiled(build::pair(av, cv)));
            bool hit = false;
            for (std::size_t j = 0; j < inst.y.size() && !hit; ++j) hit = inst.phi.sets[inst.index(i, j, k)].contains(v);
            if (!hit) return false;
          }
      return true;
    };
    std::vector<Term> cands;
    for (const Term& n : gamma)
      for (const Term& m : fs) cands.push_back(normalize_compiled(pair(n, m)));
    r.sets.push_back(RealizerSet::intensional(member, cands));
  }
  return r;
}

/// [[exists f. forall x. phi(x, f x, z)]] over Z: pairs (n, m) where fst n
/// tracks some f : X -> Y, snd n in gamma(z), and m sends every
/// k = (a, (t, c)) in alpha(x) x trackers(f) x gamma(z) into
/// delta(x, f x, z) x {that same kind of triple}. Trackers of f are
/// sampled from fst n and the instance's extra trackers.
inline Predicate ac_conclusion(const ChoiceInstance& ci) {
  using namespace build;
  Type a = ci.x.type, b = ci.y.type, c = ci.z.type, d = ci.phi.type;
  Type ba = Type::arrow(a, b);
  Type k_t = Type::prod(a, Type::prod(ba, c));
  Type t = Type::prod(Type::prod(ba, c), Type::arrow(k_t, Type::prod(d, k_t)));
  Predicate r{ci.z, t, {}, detail::closed_nf(lam("p", t, snd(fst(var("p", t)))), Type::arrow(t, c))};
  std::vector<Term> extra;
  for (const Term& tr : ci.trackers) extra.push_back(detail::arrow_term(tr, a, b));
  for (std::size_t k = 0; k < ci.z.size(); ++k) {
    ChoiceInstance inst = ci;
    auto member = [inst, k, extra](const Term& p) {
      Term n = normalize_compiled(build::fst(p)), m = normalize_compiled(build::snd(p));
      Term fhat = normalize_compiled(build::fst(n));
      if (!detail::contains_nf(inst.z.realizers[k], normalize_compiled(build::snd(n)))) return false;
      auto fmap = detail::tracked_map(inst.x, inst.y, fhat);
      if (!fmap) return false;
      std::vector<Term> trackers = {fhat};
      for (const Term& e : extra)
        if (detail::tracked_map(inst.x, inst.y, e) == fmap) detail::push_unique(trackers, e);
      auto in_triple = [&](std::size_t i, const Term& kk) {
        Term av = normalize_compiled(build::fst(kk)), rest = normalize_compiled(build::snd(kk));
        Term tr = normalize_compiled(build::fst(rest)), cv = normalize_compiled(build::snd(rest));
        return inst.x.realizes(i, av) && detail::tracked_map(inst.x, inst.y, tr) == fmap &&
               inst.z.realizes(k, cv);
      };
      for (std::size_t i = 0; i < inst.x.size(); ++i)
        for (const Term& av : inst.x.realizers[i])
          for (const Term& tr : trackers)
            for (const Term& cv : inst.z.realizers[k]) {
              Term kk = normalize_compiled(build::pair(av, build::pair(tr, cv)));
              Term out = apply_nf(m, kk);
              Term dv = normalize_compiled(build::fst(out)), back = normalize_compiled(build::snd(out));
              if (!inst.phi.sets[inst.index(i, (*fmap)[i], k)].contains(dv)) return false;
              if (!in_triple(i, back)) return false;
            }
      return true;
    };
    r.sets.push_back(RealizerSet::intensional(member, {}, false));
  }
  return r;
}

/// fn (n, m). ((f_nm, n), fn k. (m (fst k, n), k)) with
/// f_nm := fn j. fst (snd (iota (m (j, n)))), iota being phi's support.
inline Term ac_witness(const ChoiceInstance& ci) {
  using namespace build;
  if (!ci.phi.support) throw PreconditionError("phi has no support witness");
  Type a = ci.x.type, b = ci.y.type, c = ci.z.type, d = ci.phi.type;
  Type ac = Type::prod(a, c), ba = Type::arrow(a, b);
  Type k_t = Type::prod(a, Type::prod(ba, c));
  Type premise = Type::prod(c, Type::arrow(ac, d));
  Type conclusion = Type::prod(Type::prod(ba, c), Type::arrow(k_t, Type::prod(d, k_t)));
  Term p = var("p", premise), n = fst(p), m = snd(p);
  Term j = var("j", a), k = var("k", k_t);
  Term fhat = lam("j", a, fst(snd(app(ci.phi.support, app(m, pair(j, n))))));
  Term body = pair(pair(fhat, n), lam("k", k_t, pair(app(m, pair(fst(k), n)), k)));
  return detail::closed_nf(lam("p", premise, body), Type::arrow(premise, conclusion));
}


enum class HeytingOp { And, Or, Implies };

inline Predicate heyting_op(HeytingOp op, const Predicate& p, const Predicate& q,
                            const std::vector<Term>& functions = {}) {
  switch (op) {
    case HeytingOp::And: return pred_and(p, q);
    case HeytingOp::Or: return pred_or(p, q);
    case HeytingOp::Implies: return pred_implies(p, q, functions);
  }
  throw PreconditionError("unknown connective");
}

/// Y^X over finite data: points are the point maps X -> Y tracked by some
/// candidate of type A -> B, realized by those candidates.
inline Assembly exponential(const Assembly& y, const Assembly& x, const std::vector<Term>& candidates) {
  Assembly e{{}, Type::arrow(x.type, y.type), {}};
  std::vector<std::vector<std::size_t>> maps;
  for (const Term& c : candidates) {
    Term t = detail::arrow_term(c, x.type, y.type);
    auto m = detail::tracked_map(x, y, t);
    if (!m) continue;
    std::size_t i = 0;
    while (i < maps.size() && maps[i] != *m) ++i;
    if (i == maps.size()) {
      maps.push_back(*m);
      std::string name = "[";
      for (std::size_t k = 0; k < m->size(); ++k) name += (k ? "," : "") + y.points[(*m)[k]];
      e.points.push_back(name + "]");
      e.realizers.emplace_back();
    }
    detail::push_unique(e.realizers[i], t);
  }
  return e;
}

/// Outcome of checking one side of an adjunction on a candidate list.
struct AdjunctionReport {
  Verdict verdict = Verdict::holds();
  std::size_t left_held = 0;   // candidates witnessing the left inequality
  std::size_t right_held = 0;  // candidates witnessing the right inequality
};

/// exists_f -| reindex_f for f : Y -> X, P over Y (type B), Q over X (type C).
/// Every candidate g : B -> C with exists_f P <= Q gives
/// h := fn m. pair (g m) (e_P m) with P <= Pf Q, and every candidate
/// h : B -> C * B_Y with P <= Pf Q gives g := fn n. fst (h n).
inline AdjunctionReport check_exists_adjunction(const AsmMorphism& f, const Predicate& p, const Predicate& q,
                                                const std::vector<Term>& gs, const std::vector<Term>& hs) {
  using namespace build;
  Predicate ex = exists_along(f, p);
  Predicate re = reindex(f, q);
  AdjunctionReport r;
  Type b = p.type, cb = re.type;
  for (const Term& g0 : gs) {
    Term g = detail::arrow_term(g0, b, q.type);
    if (!leq_check(ex, q, g).passes()) continue;
    ++r.left_held;
    Term h = lam("m", b, pair(app(g, var("m", b)), app(p.support, var("m", b))));
    Verdict v = leq_check(p, re, h);
    if (v.is_fails()) v.detail = "h built from a good g fails: " + v.detail;
    r.verdict = r.verdict && v;
  }
  for (const Term& h0 : hs) {
    Term h = detail::arrow_term(h0, b, cb);
    if (!leq_check(p, re, h).passes()) continue;
    ++r.right_held;
    Term g = lam("n", b, fst(app(h, var("n", b))));
    Verdict v = leq_check(ex, q, g);
    if (v.is_fails()) v.detail = "g built from a good h fails: " + v.detail;
    r.verdict = r.verdict && v;
  }
  return r;
}

/// reindex_f -| forall_f for f : Y -> X, Q over X (type C), R over Y (type D).
/// Every g : C * B_Y -> D with Pf Q <= R gives
/// h := fn k. pair (e_Q k) (fn l. g (pair k l)) with Q <= forall_f R, and
/// every h : C -> A * (B_Y -> D) with Q <= forall_f R gives
/// g := fn m. (snd (h (fst m))) (snd m).
inline AdjunctionReport check_forall_adjunction(const AsmMorphism& f, const Predicate& q, const Predicate& r_pred,
                                                const std::vector<Term>& gs, const std::vector<Term>& hs,
                                                const std::vector<Term>& functions = {}) {
  using namespace build;
  Predicate re = reindex(f, q);
  Predicate all = forall_along(f, r_pred, functions);
  AdjunctionReport r;
  Type c = q.type, by = f.from.type, cb = re.type;
  for (const Term& g0 : gs) {
    Term g = detail::arrow_term(g0, cb, r_pred.type);
    if (!leq_check(re, r_pred, g).passes()) continue;
    ++r.left_held;
    Term k = var("k", c);
    Term h = lam("k", c, pair(app(q.support, k), lam("l", by, app(g, pair(k, var("l", by))))));
    Verdict v = leq_check(q, all, h);
    if (v.is_fails()) v.detail = "h built from a good g fails: " + v.detail;
    r.verdict = r.verdict && v;
  }
  for (const Term& h0 : hs) {
    Term h = detail::arrow_term(h0, c, all.type);
    if (!leq_check(q, all, h).passes()) continue;
    ++r.right_held;
    Term m = var("m", cb);
    Term g = lam("m", cb, app(snd(app(h, fst(m))), snd(m)));
    Verdict v = leq_check(re, r_pred, g);
    if (v.is_fails()) v.detail = "g built from a good h fails: " + v.detail;
    r.verdict = r.verdict && v;
  }
  return r;
}

/// Beck-Chevalley on the pullback of f : Y -> X and k : Z -> X, for E over Z:
/// reindex_f (exists_k E) and exists_{pi_Y} (reindex_{pi_Z} E) are mutually
/// below each other via fn p. pair (fst p) (pair (snd p) (e_E (fst p))) and
/// fn q. pair (fst q) (fst (snd q)).
inline Verdict check_beck_chevalley(const AsmMorphism& f, const AsmMorphism& k, const Predicate& e) {
  using namespace build;
  Pullback pb = pullback(f, k);
  Predicate lhs = reindex(f, exists_along(k, e));
  Predicate rhs = exists_along(pb.left, reindex(pb.right, e));
  Term p = var("p", lhs.type), q = var("q", rhs.type);
  Term there = lam("p", lhs.type, pair(fst(p), pair(snd(p), app(e.support, fst(p)))));
  Term back = lam("q", rhs.type, pair(fst(q), fst(snd(q))));
  return equivalent(lhs, rhs, there, back);
}

/// P and the predicate of its subobject are mutually below each other via
/// the identity.
inline Verdict check_subobject_round_trip(const Predicate& p) {
  Predicate back = from_subobject(to_subobject(p));
  Term id = identity_term(p.type);
  return equivalent(p, back, id, id);
}

}  // namespace tcap
