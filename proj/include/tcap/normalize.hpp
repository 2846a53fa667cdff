#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tcap/abstraction.hpp"
#include "tcap/error.hpp"
#include "tcap/term.hpp"
#include "tcap/typecheck.hpp"

namespace tcap {

/// Reduction ran past its step budget. Well-typed terms always terminate,
/// so this only fires for pathological sizes.
class ReductionLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Lazy graph reduction with in-place update of redex roots, so shared
/// arguments (the `c` of `S a b c`, the recursive call of `rec`) are
/// evaluated at most once. The outcome is the leftmost-outermost normal
/// form; sharing only changes the cost. One instance per normalization.
class GraphReducer {
 public:
  explicit GraphReducer(std::uint64_t step_limit) : limit_(step_limit) {}

  Term normalize(const Term& lambda_free) {
    Node* root = load(lambda_free);
    return readback(root);
  }

 private:
  enum class Tag { Const, Var, App, Ind };
  struct Node {
    Tag tag;
    Term leaf;  // constant (with annotation) or variable
    Comb comb = Comb::Zero;
    Node* f = nullptr;
    Node* a = nullptr;
  };

  Node* make(Tag tag) {
    nodes_.emplace_back();
    Node* n = &nodes_.back();
    n->tag = tag;
    return n;
  }

  Node* mk_app(Node* f, Node* a) {
    Node* n = make(Tag::App);
    n->f = f;
    n->a = a;
    return n;
  }

  Node* load(const Term& t) {
    auto it = loaded_.find(t.raw());
    if (it != loaded_.end()) return it->second;
    Node* n = nullptr;
    switch (t.kind()) {
      case TermKind::Const:
        n = make(Tag::Const);
        n->leaf = t;
        n->comb = t.comb();
        break;
      case TermKind::Var:
        n = make(Tag::Var);
        n->leaf = t;
        break;
      case TermKind::App: {
        Node* f = load(t.fun());
        Node* a = load(t.arg());
        n = mk_app(f, a);
        break;
      }
      case TermKind::Lam: throw std::logic_error("graph reducer received a lambda");
    }
    loaded_.emplace(t.raw(), n);
    return n;
  }

  static Node* follow(Node* n) {
    Node* r = n;
    while (r->tag == Tag::Ind) r = r->a;
    while (n->tag == Tag::Ind && n->a != r) {
      Node* next = n->a;
      n->a = r;
      n = next;
    }
    return r;
  }

  static void redirect(Node* root, Node* target) {
    root->tag = Tag::Ind;
    root->a = target;
    root->f = nullptr;
    root->leaf = Term();
  }

  static void rewrite_app(Node* root, Node* f, Node* a) {
    root->tag = Tag::App;
    root->f = f;
    root->a = a;
    root->leaf = Term();
  }

  // Head constructor of a weak head normal form and its argument count.
  struct Shape {
    Node* head;
    std::vector<Node*> args;
  };

  Shape shape(Node* n) {
    std::vector<Node*> rev;
    Node* h = follow(n);
    while (h->tag == Tag::App) {
      rev.push_back(h->a);
      h = follow(h->f);
    }
    return {h, {rev.rbegin(), rev.rend()}};
  }

  void tick() {
    if (++steps_ > limit_) throw ReductionLimit("normalization exceeded " + std::to_string(limit_) + " steps");
  }

  Node* whnf(Node* n) {
    std::vector<Node*> spine;
    for (;;) {
      n = follow(n);
      spine.clear();
      Node* h = n;
      while (h->tag == Tag::App) {
        spine.push_back(h);
        h = follow(h->f);
      }
      if (h->tag != Tag::Const) return n;
      const std::size_t k = spine.size();
      auto arg = [&](std::size_t i) { return spine[k - 1 - i]->a; };
      auto root_of = [&](std::size_t arity) { return spine[k - arity]; };
      switch (h->comb) {
        case Comb::K:
          if (k < 2) return n;
          tick();
          redirect(root_of(2), arg(0));
          break;
        case Comb::S: {
          if (k < 3) return n;
          tick();
          Node* x = arg(2);
          rewrite_app(root_of(3), mk_app(arg(0), x), mk_app(arg(1), x));
          break;
        }
        case Comb::Fst:
        case Comb::Snd: {
          if (k < 1) return n;
          Shape p = shape(whnf(arg(0)));
          if (p.head->tag != Tag::Const || p.head->comb != Comb::Pair || p.args.size() != 2) return n;
          tick();
          redirect(root_of(1), p.args[h->comb == Comb::Fst ? 0 : 1]);
          break;
        }
        case Comb::Case: {
          if (k < 3) return n;
          Shape s = shape(whnf(arg(2)));
          if (s.head->tag != Tag::Const || s.args.size() != 1) return n;
          if (s.head->comb == Comb::Inl) {
            tick();
            rewrite_app(root_of(3), arg(0), s.args[0]);
          } else if (s.head->comb == Comb::Inr) {
            tick();
            rewrite_app(root_of(3), arg(1), s.args[0]);
          } else {
            return n;
          }
          break;
        }
        case Comb::Rec: {
          if (k < 3) return n;
          Shape s = shape(whnf(arg(2)));
          if (s.head->tag != Tag::Const) return n;
          if (s.head->comb == Comb::Zero && s.args.empty()) {
            tick();
            redirect(root_of(3), arg(0));
          } else if (s.head->comb == Comb::Succ && s.args.size() == 1) {
            tick();
            Node* pred = s.args[0];
            Node* rec_ab = spine[k - 2];  // rec a b
            rewrite_app(root_of(3), mk_app(arg(1), pred), mk_app(rec_ab, pred));
          } else {
            return n;
          }
          break;
        }
        default: return n;
      }
    }
  }

  Term readback(Node* n) {
    n = whnf(n);
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Shape s = shape(n);
    Term out;
    if (s.head->tag == Tag::Const && s.head->comb == Comb::Succ && s.args.size() == 1) {
      // numerals: iterate instead of recursing down the successor chain
      std::vector<Term> succs{s.head->leaf};
      Node* cur = whnf(s.args[0]);
      for (;;) {
        Shape inner = shape(cur);
        if (memo_.count(cur) || !(inner.head->tag == Tag::Const && inner.head->comb == Comb::Succ &&
                                  inner.args.size() == 1))
          break;
        succs.push_back(inner.head->leaf);
        cur = whnf(inner.args[0]);
      }
      out = readback(cur);
      for (auto it = succs.rbegin(); it != succs.rend(); ++it) out = Term::app(*it, out);
    } else {
      out = s.head->leaf;
      for (Node* a : s.args) out = Term::app(out, readback(a));
    }
    memo_.emplace(n, out);
    return out;
  }

  std::deque<Node> nodes_;
  std::unordered_map<const TermNode*, Node*> loaded_;
  std::unordered_map<Node*, Term> memo_;
  std::uint64_t steps_ = 0;
  std::uint64_t limit_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultStepLimit = 200'000'000;

/// Normal form of a closed, well-typed term. Binders are compiled away
/// first; the result is annotated and lambda-free.
inline Term normalize(const Term& t, std::uint64_t step_limit = kDefaultStepLimit) {
  if (auto fv = t.free_vars(); !fv.empty())
    throw TypeError("cannot normalize an open term (free variable `" + *fv.begin() + "`)");
  Elaborated e = compile(t);
  return detail::GraphReducer(step_limit).normalize(e.term);
}

/// Normal form of a closed term that is already annotated and lambda-free,
/// such as the output of `compile` or `normalize`. Skips type checking.
inline Term normalize_compiled(const Term& t, std::uint64_t step_limit = kDefaultStepLimit) {
  return detail::GraphReducer(step_limit).normalize(t);
}

/// Convertibility: equality of normal forms, up to constant annotations.
inline bool terms_equal(const Term& a, const Term& b) {
  if (!a.free_vars().empty() || !b.free_vars().empty()) throw TypeError("terms_equal needs closed terms");
  auto [ea, eb] = elaborate_same_type(a, b);
  Term ca = ea.term.has_lambda() ? eliminate_lambdas(ea.term) : ea.term;
  Term cb = eb.term.has_lambda() ? eliminate_lambdas(eb.term) : eb.term;
  Term na = detail::GraphReducer(kDefaultStepLimit).normalize(ca);
  Term nb = detail::GraphReducer(kDefaultStepLimit).normalize(cb);
  return same_skeleton(na, nb);
}

/// Normal forms already computed by `normalize` can be compared directly.
inline bool same_normal_form(const Term& na, const Term& nb) { return same_skeleton(na, nb); }

}  // namespace tcap
