#pragma once

// Class groups of imaginary quadratic orders via reduced primitive binary
// quadratic forms ax² + bxy + cy² under Gauss composition.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "reflectum/arith.hpp"

namespace reflectum::qforms {

struct QuadForm {
  std::int64_t a = 1, b = 0, c = 1;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm&) const = default;
  auto operator<=>(const QuadForm&) const = default;

  std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

inline bool is_reduced(const QuadForm& f) {
  if (f.a <= 0) return false;
  if (std::abs(f.b) > f.a || f.a > f.c) return false;
  if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

inline bool is_primitive(const QuadForm& f) { return std::gcd(std::gcd(f.a, f.b), f.c) == 1; }

/// Standard reduction of a positive definite form.
inline QuadForm reduce(QuadForm f) {
  const std::int64_t d = f.discriminant();
  for (;;) {
    if (f.b > f.a || f.b <= -f.a) {
      // Translate b into (-a, a].
      std::int64_t two_a = 2 * f.a;
      std::int64_t r = ((f.b % two_a) + two_a) % two_a;
      if (r > f.a) r -= two_a;
      f.b = r;
      f.c = (f.b * f.b - d) / (4 * f.a);
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

/// Principal form of discriminant d.
inline QuadForm identity(std::int64_t d) {
  std::int64_t b = (d % 2 == 0) ? 0 : 1;
  return {1, b, (b * b - d) / 4};
}

inline QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

namespace detail {

// Returns (g, x, y) with x·a + y·b = g = gcd(a, b) ≥ 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

/// Gauss composition (Shanks' formulation) followed by reduction.
inline QuadForm compose(QuadForm f1, QuadForm f2) {
  if (f1.discriminant() != f2.discriminant())
    throw Error(ErrorCode::InvalidDiscriminant, "composing forms of different discriminants");
  const std::int64_t d = f1.discriminant();
  if (f1.a > f2.a) std::swap(f1, f2);
  const std::int64_t s = (f1.b + f2.b) / 2;
  const std::int64_t n = f2.b - s;
  std::int64_t y1 = 0, g = f1.a;
  if (f2.a % f1.a != 0) {
    auto [gg, u, v] = detail::ext_gcd(f2.a, f1.a);
    (void)v;
    g = gg;
    y1 = u;
  }
  std::int64_t x2 = 0, y2 = -1, d1 = g;
  if (s % g != 0) {
    auto [gg, xx, yy] = detail::ext_gcd(s, g);
    d1 = gg;
    x2 = xx;
    y2 = -yy;
  }
  const std::int64_t v1 = f1.a / d1;
  const std::int64_t v2 = f2.a / d1;
  __int128 rr = static_cast<__int128>(y1) * y2 % v1 * n - static_cast<__int128>(x2) * f2.c;
  std::int64_t r = static_cast<std::int64_t>(((rr % v1) + v1) % v1);
  QuadForm out;
  out.b = f2.b + 2 * v2 * r;
  out.a = v1 * v2;
  out.c = (out.b * out.b - d) / (4 * out.a);
  return reduce(out);
}

/// Class group of discriminant d < 0 with its full composition table.
struct FormClassGroup {
  std::int64_t discriminant = 0;
  std::vector<QuadForm> elements;          // reduced forms, sorted; elements[0] is the identity
  std::vector<std::vector<int>> table;     // table[i][j] = index of elements[i]·elements[j]; empty for large h

  std::size_t class_number() const { return elements.size(); }

  int index_of(const QuadForm& f) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] == f) return static_cast<int>(i);
    }
    throw Error(ErrorCode::Internal, "form " + f.to_string() + " missing from class group");
  }

  /// Order of elements[i] by repeated composition.
  int order_of(int i) const;
};

inline int FormClassGroup::order_of(int i) const {
  const auto& f = elements[static_cast<std::size_t>(i)];
  if (table.empty()) {
    int k = 1;
    for (QuadForm cur = f; cur != elements.front(); cur = compose(cur, f)) ++k;
    return k;
  }
  int k = 1, cur = i;
  while (cur != 0) {
    cur = table[static_cast<std::size_t>(cur)][static_cast<std::size_t>(i)];
    ++k;
  }
  return k;
}

/// Discriminant of Q(√-n) for squarefree n ≥ 1.
inline std::int64_t field_discriminant(std::int64_t n) {
  if (n < 1 || !arith::is_squarefree(Integer(static_cast<long>(n))))
    throw Error(ErrorCode::NotSquarefree, std::to_string(n) + " is not a positive squarefree integer");
  return (detail::floor_mod(-n, 4) == 1) ? -n : -4 * n;
}

/// All reduced primitive forms of discriminant d, in (a, b) order.
inline std::vector<QuadForm> reduced_forms(std::int64_t d) {
  std::vector<QuadForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (detail::floor_mod(b - d, 2) != 0) continue;
      std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (f.c < a) continue;
      if (is_reduced(f) && is_primitive(f)) out.push_back(f);
    }
  }
  return out;
}

// Enumeration is O(|d|); the Tian check skips larger discriminants.
inline constexpr std::int64_t kMaxClassGroupDiscriminant = 400'000'000;

inline constexpr std::size_t kMaxTabulatedClassNumber = 512;

inline FormClassGroup class_group(std::int64_t d) {
  if (d >= 0 || (detail::floor_mod(d, 4) != 0 && detail::floor_mod(d, 4) != 1))
    throw Error(ErrorCode::InvalidDiscriminant, std::to_string(d) + " is not a negative discriminant");
  if (-d > kMaxClassGroupDiscriminant)
    throw Error(ErrorCode::InvalidDiscriminant, std::to_string(d) + " is too large for form enumeration");
  FormClassGroup g;
  g.discriminant = d;
  g.elements = reduced_forms(d);
  std::sort(g.elements.begin(), g.elements.end());
  auto id = identity(d);
  auto it = std::find(g.elements.begin(), g.elements.end(), id);
  std::rotate(g.elements.begin(), it, it + 1);
  const std::size_t h = g.elements.size();
  if (h > kMaxTabulatedClassNumber) return g;
  g.table.assign(h, std::vector<int>(h, 0));
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i; j < h; ++j) {
      int k = g.index_of(compose(g.elements[i], g.elements[j]));
      g.table[i][j] = g.table[j][i] = k;
    }
  }
  return g;
}

/// True iff some class f has f² ≠ 1 and f⁴ = 1.
inline bool has_element_of_exact_order_4(const FormClassGroup& g) {
  const QuadForm& one = g.elements.front();
  for (const auto& f : g.elements) {
    QuadForm sq = compose(f, f);
    if (sq != one && compose(sq, sq) == one) return true;
  }
  return false;
}

}  // namespace reflectum::qforms
