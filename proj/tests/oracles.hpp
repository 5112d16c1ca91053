#pragma once

// Brute-force reference implementations on machine integers.

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline std::vector<std::pair<i64, int>> trial_factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline int valuation(i64 p, i64 n) {
  int e = 0;
  while (n % p == 0) n /= p, ++e;
  return e;
}

inline bool squarefree(i64 n) {
  for (auto [p, e] : trial_factor(n))
    if (e > 1) return false;
  return n != 0;
}

inline i64 isqrt(i64 n) {
  if (n < 0) return -1;
  i64 r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

inline std::vector<std::pair<i64, i64>> two_squares(i64 n) {
  std::vector<std::pair<i64, i64>> out;
  for (i64 a = 0; a * a <= n; ++a) {
    if (is_square(n - a * a)) out.push_back({a, isqrt(n - a * a)});
  }
  return out;
}

inline i64 mod(i64 a, i64 m) { return ((a % m) + m) % m; }

inline i64 powmod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = mod(b, m);
  for (; e; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

/// Whether ax² + by² ≡ z² (mod p^e) has a solution with p ∤ gcd(x, y, z).
inline bool conic_solvable_mod(i64 a, i64 b, i64 p, int e) {
  i64 q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  std::vector<char> square(q, 0);
  for (i64 z = 0; z < q; ++z) square[z * z % q] = 1;
  for (i64 x = 0; x < q; ++x) {
    for (i64 y = 0; y < q; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (square[mod(a * x % q * x + b * y % q * y, q)]) return true;
    }
  }
  return false;
}

/// (a, b)_p by counting primitive solutions modulo a high enough power of p.
inline int hilbert(i64 a, i64 b, i64 p) {
  auto strip = [](i64 z) {
    for (auto [q, e] : trial_factor(z))
      while (e >= 2) z /= q * q, e -= 2;
    return z;
  };
  return conic_solvable_mod(strip(a), strip(b), p, p == 2 ? 6 : 3) ? 1 : -1;
}

/// Primitive solutions of m1y1² − m2y2² = n w², m1y1² − m1m2y3² = 2n w² mod 2^e.
inline bool descent_system_solvable_mod_2(i64 n, i64 m1, i64 m2, int e) {
  const i64 q = i64{1} << e;
  for (i64 w = 0; w < q; ++w) {
    for (i64 y1 = 0; y1 < q; ++y1) {
      for (i64 y2 = 0; y2 < q; ++y2) {
        i64 lhs1 = mod(m1 * y1 * y1 - m2 * y2 * y2 - n * w * w, q);
        if (lhs1 != 0) continue;
        for (i64 y3 = 0; y3 < q; ++y3) {
          if ((w | y1 | y2 | y3) % 2 == 0) continue;
          if (mod(m1 * y1 * y1 - m1 * m2 % q * y3 * y3 - 2 * n * w * w, q) == 0) return true;
        }
      }
    }
  }
  return false;
}

/// Kronecker symbol (d/n) for n ≥ 1.
inline int kronecker(i64 d, i64 n) {
  int out = 1;
  for (auto [p, e] : trial_factor(n)) {
    int s;
    if (p == 2) {
      i64 r = mod(d, 8);
      s = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
    } else {
      i64 r = mod(d, p);
      s = r == 0 ? 0 : powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    for (int i = 0; i < e; ++i) out *= s;
  }
  return out;
}

inline bool is_fundamental(i64 d) {
  if (mod(d, 4) == 1) return squarefree(d);
  if (mod(d, 4) != 0) return false;
  i64 m = d / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
}

/// h(d) for d < 0 from the analytic class number formula, extended to
/// orders by the conductor formula.
inline i64 class_number(i64 d) {
  i64 f = 1;
  i64 d0 = d;
  for (i64 g = 2; g * g <= -d; ++g) {
    if (d % (g * g) == 0 && is_fundamental(d / (g * g))) {
      d0 = d / (g * g);
      f = g;
    }
  }
  i64 w0 = d0 == -3 ? 6 : d0 == -4 ? 4 : 2;
  i64 sum = 0;
  for (i64 a = 1; a < -d0; ++a) sum += kronecker(d0, a) * a;
  i64 h0 = (-sum * w0) / (2 * -d0);
  if (f == 1) return h0;
  // h(d0 f²) = h(d0) f Π_{p|f} (1 − χ(p)/p) · 2 / w0
  i64 num = h0 * f * 2, den = w0;
  for (auto [p, e] : trial_factor(f)) {
    num *= p - kronecker(d0, p);
    den *= p;
  }
  return num / den;
}

/// (S, T, U, V) with nS² − T² = U², nS² + T² = V², gcd(S, T) = 1, T, U > 0,
/// minimal in (S, T) order.
inline std::optional<std::tuple<i64, i64, i64, i64>> witness_22(i64 n, i64 s_budget) {
  for (i64 S = 1; S <= s_budget; ++S) {
    for (i64 T = 1; T * T < n * S * S; ++T) {
      if (std::gcd(S, T) != 1) continue;
      i64 lo = n * S * S - T * T, hi = n * S * S + T * T;
      if (is_square(lo) && is_square(hi)) return std::tuple{S, T, isqrt(lo), isqrt(hi)};
    }
  }
  return std::nullopt;
}

/// Numbers below `limit` whose core has a (2,2) witness t = T/S with S ≤ s.
inline std::set<i64> reflecting_22_upto(i64 limit, i64 s) {
  std::set<i64> out;
  for (i64 n = 1; n < limit; ++n)
    if (squarefree(n) && witness_22(n, s)) out.insert(n);
  return out;
}

/// Integer solutions of u^d + v^d = 2 w^d with |u|, |v|, |w| ≤ bound and |u| ≠ |v|.
inline std::vector<std::tuple<i64, i64, i64>> denes_solutions(int d, i64 bound) {
  auto ipow = [](i64 x, int k) {
    i64 r = 1;
    while (k--) r *= x;
    return r;
  };
  std::vector<std::tuple<i64, i64, i64>> out;
  for (i64 u = -bound; u <= bound; ++u)
    for (i64 v = -bound; v <= bound; ++v)
      for (i64 w = -bound; w <= bound; ++w)
        if ((u < 0 ? -u : u) != (v < 0 ? -v : v) && ipow(u, d) + ipow(v, d) == 2 * ipow(w, d)) out.push_back({u, v, w});
  return out;
}

}  // namespace oracle
