#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace tcap {

/// Finite types: N | Unit | Empty | A*B | A+B | A->B.
///
/// `Meta` nodes are unification variables. They only occur while the type
/// checker is running and never escape a successful `infer_type`.
enum class TypeKind { Nat, Unit, Empty, Prod, Sum, Arrow, Meta };

class Type {
  struct Node {
    TypeKind kind;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    int meta = -1;
  };

 public:
  Type() : Type(TypeKind::Nat, nullptr, nullptr, -1) {}

  static Type nat() { return Type(TypeKind::Nat, nullptr, nullptr, -1); }
  static Type unit() { return Type(TypeKind::Unit, nullptr, nullptr, -1); }
  static Type empty() { return Type(TypeKind::Empty, nullptr, nullptr, -1); }
  static Type prod(const Type& l, const Type& r) { return Type(TypeKind::Prod, l.node_, r.node_, -1); }
  static Type sum(const Type& l, const Type& r) { return Type(TypeKind::Sum, l.node_, r.node_, -1); }
  static Type arrow(const Type& dom, const Type& cod) { return Type(TypeKind::Arrow, dom.node_, cod.node_, -1); }
  static Type meta(int id) { return Type(TypeKind::Meta, nullptr, nullptr, id); }

  /// The numbered finite types: 0 is N and n+1 is n -> N.
  static Type finite(unsigned level) {
    Type t = nat();
    for (unsigned i = 0; i < level; ++i) t = arrow(t, nat());
    return t;
  }

  TypeKind kind() const { return node_->kind; }
  bool is(TypeKind k) const { return node_->kind == k; }
  int meta_id() const { return node_->meta; }

  // Children: (left, right) for products and sums, (dom, cod) for arrows.
  Type left() const { return child(node_->left); }
  Type right() const { return child(node_->right); }
  Type dom() const { return left(); }
  Type cod() const { return right(); }

  bool has_meta() const {
    switch (kind()) {
      case TypeKind::Meta: return true;
      case TypeKind::Prod:
      case TypeKind::Sum:
      case TypeKind::Arrow: return left().has_meta() || right().has_meta();
      default: return false;
    }
  }

  std::size_t depth() const {
    switch (kind()) {
      case TypeKind::Prod:
      case TypeKind::Sum:
      case TypeKind::Arrow: return 1 + std::max(left().depth(), right().depth());
      default: return 0;
    }
  }

  friend bool operator==(const Type& a, const Type& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Type& a, const Type& b) {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// Renders in the surface grammar. `*` binds tighter than `+`, which binds
  /// tighter than `->`; all three associate to the right.
  std::string str() const { return render(0); }

 private:
  using NodePtr = std::shared_ptr<const Node>;

  Type(TypeKind k, NodePtr l, NodePtr r, int meta) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->left = std::move(l);
    n->right = std::move(r);
    n->meta = meta;
    node_ = std::move(n);
  }
  explicit Type(NodePtr n) : node_(std::move(n)) {}

  static Type child(const NodePtr& p) {
    if (!p) throw std::logic_error("type has no such child");
    return Type(p);
  }

  static int compare(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
      case TypeKind::Meta: return a.meta_id() == b.meta_id() ? 0 : (a.meta_id() < b.meta_id() ? -1 : 1);
      case TypeKind::Prod:
      case TypeKind::Sum:
      case TypeKind::Arrow: {
        int c = compare(a.left(), b.left());
        return c != 0 ? c : compare(a.right(), b.right());
      }
      default: return 0;
    }
  }

  // prec: 0 = arrow context, 1 = sum operand, 2 = product operand
  std::string render(int prec) const {
    switch (kind()) {
      case TypeKind::Nat: return "N";
      case TypeKind::Unit: return "Unit";
      case TypeKind::Empty: return "Empty";
      case TypeKind::Meta: return "?" + std::to_string(meta_id());
      case TypeKind::Arrow: {
        std::string s = left().render(1) + " -> " + right().render(0);
        return prec > 0 ? "(" + s + ")" : s;
      }
      case TypeKind::Sum: {
        std::string s = left().render(2) + " + " + right().render(1);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case TypeKind::Prod: {
        std::string s = left().render(3) + " * " + right().render(2);
        return prec > 2 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  NodePtr node_;
};

}  // namespace tcap
