#pragma once

// Complete 2-descent on E_n: y² = x³ − n²x with e₁ = −n, e₂ = 0, e₃ = n.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflectum/arith.hpp"
#include "reflectum/ecurve.hpp"

namespace reflectum::descent {

using ecurve::CurveId;
using ecurve::CurvePoint;

/// An element of Q*/Q*², stored as its signed squarefree representative.
class SquareClass {
 public:
  SquareClass() = default;

  /// Square class of a nonzero rational, by full factorisation.
  static SquareClass of(const Rational& q) {
    if (q == 0) throw Error(ErrorCode::ZeroInput, "zero has no square class");
    Integer z = q.get_num() * q.get_den();
    Integer r = sign(z);
    for (const auto& f : arith::factor(z).factors) {
      if (f.exponent % 2) r *= f.prime;
    }
    return SquareClass(r);
  }

  /// Square class of q, assuming its odd-valuation primes all lie in `primes`.
  static SquareClass of(const Rational& q, const std::vector<Integer>& primes) {
    if (q == 0) throw Error(ErrorCode::ZeroInput, "zero has no square class");
    Integer z = q.get_num() * q.get_den();
    Integer r = sign(z);
    z = abs(z);
    for (const auto& p : primes) {
      Integer rest;
      auto e = mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
      z = rest;
      if (e % 2) r *= p;
    }
    if (!mpz_perfect_square_p(z.get_mpz_t()))
      throw Error(ErrorCode::Internal, reflectum::to_string(q) + " has square class outside the given support");
    return SquareClass(r);
  }

  const Integer& repr() const { return repr_; }
  std::string to_string() const { return repr_.get_str(); }

  friend SquareClass operator*(const SquareClass& a, const SquareClass& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.repr_.get_mpz_t(), b.repr_.get_mpz_t());
    return SquareClass(a.repr_ / g * (b.repr_ / g));
  }

  bool operator==(const SquareClass& o) const { return repr_ == o.repr_; }
  bool operator<(const SquareClass& o) const { return repr_ < o.repr_; }

 private:
  explicit SquareClass(Integer r) : repr_(std::move(r)) {}
  Integer repr_ = 1;
};

struct SelmerElement {
  SquareClass m1, m2;

  static SelmerElement make(const Integer& a, const Integer& b) { return {SquareClass::of(a), SquareClass::of(b)}; }

  std::string to_string() const { return "(" + m1.to_string() + "," + m2.to_string() + ")"; }

  friend SelmerElement operator*(const SelmerElement& x, const SelmerElement& y) {
    return {x.m1 * y.m1, x.m2 * y.m2};
  }
  bool operator==(const SelmerElement& o) const { return m1 == o.m1 && m2 == o.m2; }
  bool operator<(const SelmerElement& o) const {
    if (!(m1 == o.m1)) return m1 < o.m1;
    return m2 < o.m2;
  }
};

/// C_{(m1,m2)}: n = m₁y₁² − m₂y₂², 2n = m₁y₁² − m₁m₂y₃².
struct HomogeneousSpace {
  Integer n;
  SquareClass m1, m2;

  /// Coefficients of the homogenised diagonal quadrics in (Y₁, Y₂, Y₃, Z).
  std::vector<std::vector<Integer>> quadrics() const {
    const Integer& a = m1.repr();
    const Integer& b = m2.repr();
    return {{a, -b, 0, -n}, {a, 0, -a * b, -2 * n}};
  }
};

/// F₂-coordinates of square classes over the generators −1, 2 and the odd primes of n.
class SquareClassBasis {
 public:
  explicit SquareClassBasis(const Integer& n) : n_(n) {
    if (n < 1 || !arith::is_squarefree(n))
      throw Error(ErrorCode::NotSquarefree, n.get_str() + " is not a positive squarefree integer");
    gens_.push_back(-1);
    gens_.push_back(2);
    for (const auto& p : arith::factor(n).primes()) {
      if (p != 2) gens_.push_back(p);
    }
    primes_.assign(gens_.begin() + 1, gens_.end());
    if (gens_.size() > 31) throw Error(ErrorCode::InvalidArgument, "too many prime divisors");
  }

  const Integer& n() const { return n_; }
  const std::vector<Integer>& generators() const { return gens_; }
  const std::vector<Integer>& primes() const { return primes_; }
  std::size_t size() const { return gens_.size(); }

  SquareClass element(std::uint64_t mask) const {
    Integer r = 1;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (mask >> i & 1) r *= gens_[i];
    }
    return SquareClass::of(r, primes_);
  }

  std::uint64_t mask_of(const SquareClass& c) const {
    Integer z = c.repr();
    std::uint64_t mask = 0;
    if (z < 0) {
      mask |= 1;
      z = -z;
    }
    for (std::size_t i = 1; i < gens_.size(); ++i) {
      if (mpz_divisible_p(z.get_mpz_t(), gens_[i].get_mpz_t())) {
        mask |= std::uint64_t{1} << i;
        z /= gens_[i];
      }
    }
    if (z != 1) throw Error(ErrorCode::Internal, c.to_string() + " is outside Q(S,2)");
    return mask;
  }

  // Pair (m1, m2) packed as m1 in the low bits and m2 in the high bits.
  std::uint64_t mask_of(const SelmerElement& e) const { return mask_of(e.m1) | mask_of(e.m2) << size(); }
  SelmerElement element_pair(std::uint64_t mask) const {
    const std::uint64_t low = (std::uint64_t{1} << size()) - 1;
    return {element(mask & low), element(mask >> size())};
  }

 private:
  Integer n_;
  std::vector<Integer> gens_;
  std::vector<Integer> primes_;
};

/// Q(S,2) for S = {2, ∞} ∪ primes(n), in mask order.
inline std::vector<SquareClass> square_class_group(const Integer& n) {
  SquareClassBasis b(n);
  std::vector<SquareClass> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << b.size()); ++m) out.push_back(b.element(m));
  return out;
}

/// κ(E_n[2]) in the order O, T₁, T₂, T₃.
inline std::vector<SelmerElement> two_torsion_image(const Integer& n) {
  return {SelmerElement::make(1, 1), SelmerElement::make(2, -n), SelmerElement::make(n, -1),
          SelmerElement::make(2 * n, n)};
}

/// (1,−1)·κ(E_n[2]).
inline std::vector<SelmerElement> criterion_coset(const Integer& n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  return {SelmerElement::make(1, -1), SelmerElement::make(2, n), SelmerElement::make(n, 1),
          SelmerElement::make(2 * n, -n)};
}

inline SelmerElement kappa(const SquareClassBasis& basis, const CurvePoint& p) {
  const Integer& n = basis.n();
  if (!(p.curve() == CurveId::En(n)))
    throw Error(ErrorCode::NotOnCurve, p.to_string() + " is not a point of E_" + n.get_str());
  if (p.is_infinity()) return SelmerElement::make(1, 1);
  const Rational& x = p.x();
  const Rational nn(n);
  if (x == -nn) return SelmerElement::make(2, -n);
  if (x == 0) return SelmerElement::make(n, -1);
  return {SquareClass::of(x + nn, basis.primes()), SquareClass::of(x, basis.primes())};
}

/// κ(P) = (x − e₁, x − e₂) up to squares, with the usual substitutes at T₁ and T₂.
inline SelmerElement kappa(const Integer& n, const CurvePoint& p) { return kappa(SquareClassBasis(n), p); }

namespace detail {

inline long val(const Integer& p, const Integer& z) {
  if (z == 0) return std::numeric_limits<long>::max();
  return arith::valuation(p, z);
}

inline Integer eval(const std::vector<Integer>& coeffs, const std::vector<Integer>& a) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += coeffs[i] * a[i] * a[i];
  return s;
}

inline constexpr int kMaxLiftDepth = 200;

// Depth-first search over residue classes mod p^k in the chart X_chart = 1.
inline bool chart_search(const std::vector<std::vector<Integer>>& eqs, const Integer& p, std::size_t chart) {
  const std::size_t nvars = eqs.front().size();
  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (i != chart) free_vars.push_back(i);
  }
  const unsigned long pp = p.get_ui();
  unsigned long nchildren = 1;
  for (std::size_t i = 0; i < free_vars.size(); ++i) nchildren *= pp;

  struct Node {
    std::vector<Integer> a;
    int k;
  };
  std::vector<Node> stack;
  {
    std::vector<Integer> a(nvars, 0);
    a[chart] = 1;
    stack.push_back({a, 0});
  }
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    std::vector<long> vf;
    bool alive = true;
    for (const auto& e : eqs) {
      vf.push_back(val(p, eval(e, node.a)));
      if (vf.back() < node.k) alive = false;
    }
    if (!alive) continue;
    const long vmin = *std::min_element(vf.begin(), vf.end());
    // Hensel: some maximal minor D of the Jacobian in the free variables with v(F) > 2v(D).
    if (eqs.size() == 1) {
      for (auto i : free_vars) {
        Integer d = 2 * eqs[0][i] * node.a[i];
        if (d != 0 && vmin > 2 * val(p, d)) return true;
      }
    } else {
      for (std::size_t s = 0; s < free_vars.size(); ++s) {
        for (std::size_t t = s + 1; t < free_vars.size(); ++t) {
          auto i = free_vars[s], l = free_vars[t];
          Integer d = 4 * node.a[i] * node.a[l] * (eqs[0][i] * eqs[1][l] - eqs[0][l] * eqs[1][i]);
          if (d != 0 && vmin > 2 * val(p, d)) return true;
        }
      }
    }
    if (node.k >= kMaxLiftDepth) throw Error(ErrorCode::Internal, "p-adic lifting did not terminate");
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(node.k));
    for (unsigned long c = nchildren; c-- > 0;) {
      Node child{node.a, node.k + 1};
      unsigned long digits = c;
      for (auto i : free_vars) {
        child.a[i] += pk * static_cast<unsigned long>(digits % pp);
        digits /= pp;
      }
      stack.push_back(std::move(child));
    }
  }
  return false;
}

}  // namespace detail

/// Whether Σᵢ c_{j,i}Xᵢ² = 0 (one or two equations) has a nonzero solution
/// over Q_p, by exhaustive lifting with a Hensel certificate. The variety must
/// be smooth away from the origin or the search may not terminate.
inline bool has_nontrivial_zero(const std::vector<std::vector<Integer>>& eqs, const Integer& p) {
  if (eqs.empty() || eqs.size() > 2) throw Error(ErrorCode::InvalidArgument, "one or two equations expected");
  if (!arith::is_prime(p) || !p.fits_ulong_p()) throw Error(ErrorCode::InvalidPrime, p.get_str());
  for (std::size_t chart = 0; chart < eqs.front().size(); ++chart) {
    if (detail::chart_search(eqs, p, chart)) return true;
  }
  return false;
}

inline bool locally_solvable(const HomogeneousSpace& space, const arith::PadicPlace& v) {
  const Integer& m1 = space.m1.repr();
  const Integer& m2 = space.m2.repr();
  if (v.is_infinite()) return m1 > 0;
  const Integer& p = v.p();
  if (p == 2) return has_nontrivial_zero(space.quadrics(), p);
  if (space.n % p != 0) return arith::valuation(p, m1) % 2 == 0 && arith::valuation(p, m2) % 2 == 0;
  // Odd p | n: the local image is exactly κ(E_n[2]).
  for (const auto& t : two_torsion_image(space.n)) {
    if (arith::is_square_in_Qv(Rational(m1 * t.m1.repr()), v) && arith::is_square_in_Qv(Rational(m2 * t.m2.repr()), v))
      return true;
  }
  return false;
}

struct SelmerGroup {
  Integer n;
  std::vector<arith::PadicPlace> places;
  std::vector<SelmerElement> elements;  // sorted
  int dim = 0;

  bool contains(const SelmerElement& e) const { return std::binary_search(elements.begin(), elements.end(), e); }

  /// Elements grouped by κ(E_n[2])-coset, each coset led by its smallest element.
  std::vector<std::vector<SelmerElement>> cosets() const {
    std::vector<std::vector<SelmerElement>> out;
    auto tors = two_torsion_image(n);
    for (const auto& e : elements) {
      bool seen = false;
      for (const auto& c : out) seen = seen || std::find(c.begin(), c.end(), e) != c.end();
      if (seen) continue;
      std::vector<SelmerElement> coset;
      for (const auto& t : tors) coset.push_back(e * t);
      std::sort(coset.begin(), coset.end());
      out.push_back(coset);
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::uint64_t> torsion_masks(const SquareClassBasis& b) {
  std::vector<std::uint64_t> out;
  for (const auto& t : two_torsion_image(b.n())) out.push_back(b.mask_of(t));
  return out;
}

}  // namespace detail

/// S⁽²⁾(E_n/Q), testing one representative per κ(E_n[2])-coset.
inline SelmerGroup selmer_group(const Integer& n) {
  SquareClassBasis basis(n);
  SelmerGroup g;
  g.n = n;
  g.places.push_back(arith::PadicPlace::infinity());
  for (const auto& p : basis.primes()) g.places.push_back(arith::PadicPlace::prime(p));
  const auto tors = detail::torsion_masks(basis);
  const std::size_t width = basis.size();
  const std::uint64_t total = std::uint64_t{1} << (2 * width);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (mask & 1) continue;  // m1 < 0
    bool canonical = true;
    for (auto t : tors) canonical = canonical && (mask ^ t) >= mask;
    if (!canonical) continue;
    SelmerElement e = basis.element_pair(mask);
    HomogeneousSpace space{n, e.m1, e.m2};
    bool ok = true;
    for (const auto& v : g.places) {
      if (!locally_solvable(space, v)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (auto t : tors) g.elements.push_back(basis.element_pair(mask ^ t));
  }
  std::sort(g.elements.begin(), g.elements.end());
  std::size_t size = g.elements.size();
  while (size > 1) {
    if (size % 2) throw Error(ErrorCode::Internal, "Selmer set is not a group");
    size /= 2;
    ++g.dim;
  }
  return g;
}

namespace detail {

// Row-reduced F₂ basis; returns true if v was independent and inserted.
inline bool insert_vector(std::vector<std::uint64_t>& rows, std::uint64_t v) {
  for (auto r : rows) v = std::min(v, v ^ r);
  if (v == 0) return false;
  rows.push_back(v);
  std::sort(rows.rbegin(), rows.rend());
  return true;
}

}  // namespace detail

/// The subgroup generated by κ(E_n[2]) and κ of the given points.
inline std::vector<SelmerElement> kappa_span(const Integer& n, const std::vector<CurvePoint>& points) {
  SquareClassBasis basis(n);
  std::vector<std::uint64_t> rows;
  for (auto t : detail::torsion_masks(basis)) detail::insert_vector(rows, t);
  for (const auto& p : points) detail::insert_vector(rows, basis.mask_of(kappa(basis, p)));
  std::vector<SelmerElement> out;
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << rows.size()); ++sel) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (sel >> i & 1) v ^= rows[i];
    }
    out.push_back(basis.element_pair(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RankBounds {
  int lower = 0;
  int upper = 0;
};

/// upper = dim S⁽²⁾ − 2; lower = dimension of the κ-span of the points modulo κ(E_n[2]).
inline RankBounds rank_bounds(const Integer& n, const std::vector<CurvePoint>& points, const SelmerGroup& sel) {
  std::size_t span = kappa_span(n, points).size();
  int d = 0;
  while (span > 4) {
    span /= 2;
    ++d;
  }
  return {d, sel.dim - 2};
}

inline RankBounds rank_bounds(const Integer& n, const std::vector<CurvePoint>& points) {
  return rank_bounds(n, points, selmer_group(n));
}

inline bool meets_criterion_coset(const Integer& n, const SelmerElement& e) {
  auto c = criterion_coset(n);
  return std::find(c.begin(), c.end(), e) != c.end();
}

/// Whether z ∈ 𝒵_n comes from some t ∈ 𝒯_n, decided by κ of a halving point of ψ(z).
inline bool preimage_exists(const Integer& n, const Rational& z, const CurvePoint& halving) {
  if (!(halving.curve() == CurveId::En(n)) || halving.is_infinity() || halving.y() == 0 ||
      ecurve::x_double(halving) != z * z)
    throw Error(ErrorCode::NotAHalving, halving.to_string() + " does not double to x = z²");
  return meets_criterion_coset(n, kappa(n, halving));
}

/// Global root number of E_n.
inline int root_number(const Integer& n) {
  if (n < 1 || !arith::is_squarefree(n)) throw Error(ErrorCode::NotSquarefree, n.get_str());
  auto r = mpz_fdiv_ui(n.get_mpz_t(), 8);
  return (r == 1 || r == 2 || r == 3) ? 1 : -1;
}

}  // namespace reflectum::descent
