#pragma once

// Exact integer/rational arithmetic: valuations, power-free parts,
// factorization, local square tests, Hilbert symbols and sums of two squares.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reflectum/error.hpp"

namespace reflectum {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::ZeroInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || s == "-") throw Error(ErrorCode::ParseError, "empty integer");
  for (std::size_t i = (s.front() == '-') ? 1 : 0; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  }
  return Integer(s, 10);
}

/// Accepts "a", "a/b" and "-a/b"; never floating-point notation.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

/// Always "num/den", including a "/1" for integers.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

namespace arith {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic for every n < 2^64 with these twelve bases.
inline bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool fits_u64(const Integer& z) { return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Integer& z) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

inline Integer from_u64(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

constexpr std::uint32_t kTrialLimit = 1u << 20;

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant; n odd composite.
inline std::uint64_t rho_u64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline Integer rho_big(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

}  // namespace detail

/// Exact for n < 2^64; beyond that GMP's BPSW-based test is used.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (detail::fits_u64(n)) return detail::miller_rabin_u64(detail::to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

/// sign · ∏ p^e with primes strictly increasing and every exponent ≥ 1.
struct FactoredInt {
  int sign = 1;
  std::vector<PrimePower> factors;

  Integer value() const {
    Integer v = sign;
    for (const auto& f : factors) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
      v *= pe;
    }
    return v;
  }

  bool is_squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.exponent == 1; });
  }

  std::vector<Integer> primes() const {
    std::vector<Integer> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
  }

  bool operator==(const FactoredInt&) const = default;
};

namespace detail {

inline void factor_into(const Integer& n, std::vector<Integer>& primes_out) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes_out.push_back(n);
    return;
  }
  Integer d = fits_u64(n) ? from_u64(rho_u64(to_u64(n))) : rho_big(n);
  factor_into(d, primes_out);
  factor_into(n / d, primes_out);
}

}  // namespace detail

/// Trial division to 2^20, then Miller–Rabin and Pollard rho on the cofactor.
inline FactoredInt factor(const Integer& n) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "factor(0)");
  FactoredInt out;
  out.sign = n < 0 ? -1 : 1;
  Integer rem = abs(n);
  std::vector<Integer> found;
  for (std::uint32_t p : detail::small_primes()) {
    Integer pp = p;
    if (pp * pp > rem) break;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      rem /= p;
      found.push_back(pp);
    }
  }
  if (rem > 1) detail::factor_into(rem, found);
  std::sort(found.begin(), found.end());
  for (const auto& p : found) {
    if (!out.factors.empty() && out.factors.back().prime == p) {
      ++out.factors.back().exponent;
    } else {
      out.factors.push_back({p, 1});
    }
  }
  return out;
}

inline bool is_squarefree(const Integer& n) { return n != 0 && factor(n).is_squarefree(); }

/// A place of Q: a verified prime p, or the archimedean place ∞.
class PadicPlace {
 public:
  static PadicPlace infinity() { return PadicPlace(); }

  static PadicPlace prime(const Integer& p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, p.get_str() + " is not prime");
    PadicPlace v;
    v.prime_ = p;
    return v;
  }

  bool is_infinite() const { return prime_ == 0; }
  const Integer& p() const { return prime_; }

  std::string to_string() const { return is_infinite() ? "inf" : prime_.get_str(); }

  bool operator==(const PadicPlace&) const = default;

 private:
  PadicPlace() = default;
  Integer prime_ = 0;
};

/// p-adic valuation of a nonzero integer; p is trusted to be prime.
inline long valuation(const Integer& p, const Integer& z) {
  if (z == 0) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  Integer rest = z;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
}

/// nullopt encodes v_p(0) = +∞.
using Valuation = std::optional<long>;

inline Valuation vp(const Integer& p, const Rational& x) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, p.get_str() + " is not prime");
  if (x == 0) return std::nullopt;
  return valuation(p, x.get_num()) - valuation(p, x.get_den());
}

/// The i-th power free part ⟦t⟧_i: an integer with every exponent < i and
/// the sign of t, so that t / ⟦t⟧_i is a positive rational i-th power.
inline Integer powerfree_part(unsigned i, const Rational& t) {
  if (i == 0) throw Error(ErrorCode::InvalidArgument, "power must be >= 1");
  if (t == 0) throw Error(ErrorCode::ZeroInput, "powerfree_part of zero");
  Integer out = sign(t);
  auto absorb = [&](const Integer& z, bool denominator) {
    if (z == 1) return;
    for (const auto& f : factor(z).factors) {
      long e = denominator ? -static_cast<long>(f.exponent) : static_cast<long>(f.exponent);
      long r = ((e % static_cast<long>(i)) + static_cast<long>(i)) % static_cast<long>(i);
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), static_cast<unsigned long>(r));
      out *= pe;
    }
  };
  absorb(abs(t.get_num()), false);
  absorb(t.get_den(), true);
  return out;
}

/// Exact integer k-th root (negative radicands allowed for odd k).
inline std::optional<Integer> exact_root(const Integer& x, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "root of order 0");
  if (x < 0 && k % 2 == 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

inline std::optional<Rational> exact_root(const Rational& x, unsigned k) {
  auto num = exact_root(x.get_num(), k);
  if (!num) return std::nullopt;
  auto den = exact_root(x.get_den(), k);
  if (!den) return std::nullopt;
  return make_rational(*num, *den);
}

/// Nonnegative square root when x is the square of a rational.
inline std::optional<Rational> sqrt_exact(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num().get_mpz_t()) || !mpz_perfect_square_p(x.get_den().get_mpz_t()))
    return std::nullopt;
  Integer a = sqrt(x.get_num());
  Integer b = sqrt(x.get_den());
  return make_rational(a, b);
}

inline bool is_square(const Rational& x) { return sqrt_exact(x).has_value(); }

inline Rational pow(const Rational& x, unsigned long e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), e);
  return make_rational(num, den);
}

inline Integer pow(const Integer& x, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), e);
  return out;
}

inline int legendre(const Integer& a, const Integer& p) {
  if (p <= 2 || !is_prime(p)) throw Error(ErrorCode::InvalidPrime, p.get_str() + " is not an odd prime");
  Integer r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  Integer e = (p - 1) / 2, out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out == 1 ? 1 : -1;
}

namespace detail {

// Integer in the same square class as q.
inline Integer square_class_integer(const Rational& q) { return q.get_num() * q.get_den(); }

inline unsigned long mod8(const Integer& z) { return mpz_fdiv_ui(z.get_mpz_t(), 8); }

// Legendre symbol for a trusted odd prime.
inline int legendre_unchecked(const Integer& a, const Integer& p) {
  Integer r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

}  // namespace detail

/// (a, b)_v: +1 iff ax² + by² = z² has a nontrivial solution over Q_v.
inline int hilbert(const Rational& a, const Rational& b, const PadicPlace& v) {
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroInput, "hilbert symbol of zero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.p();
  Integer ai = detail::square_class_integer(a);
  Integer bi = detail::square_class_integer(b);
  long alpha = valuation(p, ai);
  long beta = valuation(p, bi);
  Integer u = ai, w = bi;
  mpz_remove(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
  mpz_remove(w.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t());
  if (p == 2) {
    auto eps = [](const Integer& z) { return detail::mod8(z) % 4 == 3 ? 1 : 0; };
    auto omega = [](const Integer& z) {
      auto r = detail::mod8(z);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    long e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  int out = 1;
  if ((alpha * beta) % 2 != 0 && detail::mod8(p) % 4 == 3) out = -out;
  if (beta % 2 != 0) out *= detail::legendre_unchecked(u, p);
  if (alpha % 2 != 0) out *= detail::legendre_unchecked(w, p);
  return out;
}

/// Whether x is a square in Q_v (x ≠ 0).
inline bool is_square_in_Qv(const Rational& x, const PadicPlace& v) {
  if (x == 0) throw Error(ErrorCode::ZeroInput, "local square test of zero");
  if (v.is_infinite()) return x > 0;
  const Integer& p = v.p();
  Integer z = detail::square_class_integer(x);
  if (valuation(p, z) % 2 != 0) return false;
  mpz_remove(z.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  if (p == 2) return detail::mod8(z) == 1;
  return detail::legendre_unchecked(z, p) == 1;
}

inline bool is_square_in_Zv(const Rational& x, const PadicPlace& v) { return is_square_in_Qv(x, v); }

/// A square root of -1 modulo a prime p ≡ 1 mod 4.
inline Integer sqrt_minus_one(const Integer& p) {
  Integer e = (p - 1) / 4;
  for (Integer c = 2; c < p; ++c) {
    if (detail::legendre_unchecked(c, p) != -1) continue;
    Integer r;
    mpz_powm(r.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  throw Error(ErrorCode::Internal, "no non-residue found");
}

/// Cornacchia: p = x² + y² with 0 < x < y for a prime p ≡ 1 mod 4.
inline std::pair<Integer, Integer> cornacchia(const Integer& p) {
  Integer a = p, b = sqrt_minus_one(p);
  if (2 * b > p) b = p - b;
  while (b * b > p) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  Integer rest = p - b * b;
  Integer c = sqrt(rest);
  if (c * c != rest) throw Error(ErrorCode::Internal, "cornacchia failed for " + p.get_str());
  return b < c ? std::pair{b, c} : std::pair{c, b};
}

namespace detail {

struct Gaussian {
  Integer re, im;
};

inline Gaussian operator*(const Gaussian& x, const Gaussian& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

}  // namespace detail

/// Every (a, b) with a, b ≥ 0 and a² + b² = m, sorted ascending.
/// Built from Gaussian prime factors: Cornacchia per prime p ≡ 1 mod 4,
/// combined by the Brahmagupta–Fibonacci identity.
inline std::vector<std::pair<Integer, Integer>> two_square_representations(const FactoredInt& m) {
  using detail::Gaussian;
  if (m.sign < 0) return {};
  std::vector<Gaussian> partial{{1, 0}};
  for (const auto& f : m.factors) {
    unsigned long r = detail::mod8(f.prime) % 4;
    if (f.prime == 2) {
      for (auto& z : partial) {
        for (unsigned k = 0; k < f.exponent; ++k) z = z * Gaussian{1, 1};
      }
    } else if (r == 3) {
      if (f.exponent % 2 != 0) return {};
      Integer q = pow(f.prime, f.exponent / 2);
      for (auto& z : partial) z = z * Gaussian{q, 0};
    } else {
      auto [x, y] = cornacchia(f.prime);
      Gaussian pi{x, y}, pibar{x, -y};
      std::vector<Gaussian> next;
      for (const auto& z : partial) {
        for (unsigned j = 0; j <= f.exponent; ++j) {
          Gaussian w = z;
          for (unsigned k = 0; k < j; ++k) w = w * pi;
          for (unsigned k = j; k < f.exponent; ++k) w = w * pibar;
          next.push_back(w);
        }
      }
      partial = std::move(next);
    }
  }
  std::set<std::pair<Integer, Integer>> reps;
  for (const auto& z : partial) {
    Integer a = abs(z.re), b = abs(z.im);
    reps.insert({a, b});
    reps.insert({b, a});
  }
  return {reps.begin(), reps.end()};
}

/// n = a² + b² with 0 < a < b, lexicographically smallest; n odd with every
/// prime divisor ≡ 1 mod 4.
inline std::pair<Integer, Integer> two_squares(const Integer& n) {
  if (n <= 1) throw Error(ErrorCode::NoDecomposition, "need n > 1, got " + n.get_str());
  if (mpz_even_p(n.get_mpz_t())) throw Error(ErrorCode::NoDecomposition, n.get_str() + " is even");
  FactoredInt f = factor(n);
  for (const auto& pp : f.factors) {
    if (detail::mod8(pp.prime) % 4 == 3)
      throw Error(ErrorCode::NoDecomposition, "prime divisor " + pp.prime.get_str() + " is 3 mod 4");
  }
  for (const auto& [a, b] : two_square_representations(f)) {
    if (a > 0 && a < b) return {a, b};
  }
  throw Error(ErrorCode::NoDecomposition, "no representation with 0 < a < b for " + n.get_str());
}

}  // namespace arith
}  // namespace reflectum
