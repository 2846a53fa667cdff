#pragma once

// Independent reference implementations used by the tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcap/type.hpp"

namespace tcap::oracle {

/// Fully parenthesized rendering, independent of Type::str.
inline std::string paren(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Nat: return "N";
    case TypeKind::Unit: return "1";
    case TypeKind::Empty: return "0";
    case TypeKind::Prod: return "(" + paren(t.left()) + " x " + paren(t.right()) + ")";
    case TypeKind::Sum: return "(" + paren(t.left()) + " + " + paren(t.right()) + ")";
    case TypeKind::Arrow: return "(" + paren(t.dom()) + " > " + paren(t.cod()) + ")";
    case TypeKind::Meta: return "?";
  }
  return "?";
}

/// The translation tables, written out directly on strings.
struct PlusMinus {
  std::string plus, minus;
};

inline PlusMinus translate(const Type& t) {
  auto P = [](const std::string& a, const std::string& b) { return "(" + a + " x " + b + ")"; };
  auto S = [](const std::string& a, const std::string& b) { return "(" + a + " + " + b + ")"; };
  auto A = [](const std::string& a, const std::string& b) { return "(" + a + " > " + b + ")"; };
  switch (t.kind()) {
    case TypeKind::Nat: return {"N", "N"};
    case TypeKind::Unit: return {"1", "1"};
    case TypeKind::Prod: {
      PlusMinus s = translate(t.left()), u = translate(t.right());
      return {P(s.plus, u.plus), S(s.minus, u.minus)};
    }
    case TypeKind::Sum: {
      PlusMinus s = translate(t.left()), u = translate(t.right());
      return {S(s.plus, u.plus), P(s.minus, u.minus)};
    }
    case TypeKind::Arrow: {
      PlusMinus s = translate(t.dom()), u = translate(t.cod());
      std::string back = A(s.plus, A(s.plus, A(u.minus, s.minus)));
      return {P(A(s.plus, u.plus), back), P(s.plus, u.minus)};
    }
    default: return {"?", "?"};
  }
}

/// Every type over {N, Unit} of depth at most `depth` (bases have depth 0).
inline std::vector<Type> all_types(int depth) {
  std::vector<Type> out = {Type::nat(), Type::unit()};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Type> next = {Type::nat(), Type::unit()};
    for (const Type& a : out)
      for (const Type& b : out) {
        next.push_back(Type::prod(a, b));
        next.push_back(Type::sum(a, b));
        next.push_back(Type::arrow(a, b));
      }
    out = std::move(next);
  }
  return out;
}

/// Least k <= bound with p(k) == 1, else bound + 1.
inline std::uint64_t linear_min(const std::function<std::uint64_t(std::uint64_t)>& p, std::uint64_t bound) {
  for (std::uint64_t k = 0; k <= bound; ++k)
    if (p(k) == 1) return k;
  return bound + 1;
}

/// Least k <= bound with f(k) != g(k), by a plain scan.
inline std::optional<std::uint64_t> least_difference(const std::function<std::uint64_t(std::uint64_t)>& f,
                                                     const std::function<std::uint64_t(std::uint64_t)>& g,
                                                     std::uint64_t bound) {
  for (std::uint64_t k = 0; k <= bound; ++k)
    if (f(k) != g(k)) return k;
  return std::nullopt;
}

/// Cantor unpairing through the closed form w = floor((sqrt(8n + 1) - 1) / 2).
inline std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  std::uint64_t b = n - w * (w + 1) / 2;
  return {w - b, b};
}

/// The sequence with code n, decoded recursively.
inline std::vector<std::uint64_t> seq_decode(std::uint64_t n) {
  if (n == 0) return {};
  auto [a, b] = unpair(n - 1);
  std::vector<std::uint64_t> out = {a};
  for (std::uint64_t x : seq_decode(b)) out.push_back(x);
  return out;
}

/// First code n whose decoded sequence satisfies hit, scanning upward.
inline std::uint64_t first_code(const std::function<bool(const std::vector<std::uint64_t>&)>& hit,
                                std::uint64_t limit) {
  for (std::uint64_t n = 0; n <= limit; ++n)
    if (hit(seq_decode(n))) return n;
  return limit + 1;
}

}  // namespace tcap::oracle
