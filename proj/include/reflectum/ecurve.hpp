#pragma once

// Exact point arithmetic on the congruent-number curves E_n: y² = x³ − n²x and
// the Mordell curves C_N: y² = x³ + N, together with the maps between
// reflecting witnesses, right triangles, Pythagorean pairs and curve points.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflectum/arith.hpp"

namespace reflectum::ecurve {

enum class CurveFamily { En, CN };

/// E_n (parameter n) or C_N (parameter N); the parameter is never zero.
struct CurveId {
  CurveFamily family = CurveFamily::En;
  Integer parameter = 1;

  static CurveId En(const Integer& n) { return make(CurveFamily::En, n); }
  static CurveId CN(const Integer& N) { return make(CurveFamily::CN, N); }

  // Short Weierstrass coefficients of y² = x³ + a·x + b.
  Integer a() const { return family == CurveFamily::En ? Integer(-parameter * parameter) : Integer(0); }
  Integer b() const { return family == CurveFamily::En ? Integer(0) : parameter; }

  std::string to_string() const {
    return (family == CurveFamily::En ? "E_" : "C_") + parameter.get_str();
  }

  bool operator==(const CurveId& o) const { return family == o.family && parameter == o.parameter; }

 private:
  static CurveId make(CurveFamily f, const Integer& p) {
    if (p == 0) throw Error(ErrorCode::InvalidArgument, "curve parameter must be nonzero");
    CurveId c;
    c.family = f;
    c.parameter = p;
    return c;
  }
};

inline bool on_curve(const CurveId& curve, const Rational& x, const Rational& y) {
  return y * y == x * x * x + Rational(curve.a()) * x + Rational(curve.b());
}

/// A rational point: the point at infinity or an affine point that satisfies
/// the curve equation exactly.
class CurvePoint {
 public:
  static CurvePoint infinity(const CurveId& curve) { return CurvePoint(curve); }

  static CurvePoint affine(const CurveId& curve, const Rational& x, const Rational& y) {
    if (!on_curve(curve, x, y))
      throw Error(ErrorCode::NotOnCurve, "(" + reflectum::to_string(x) + ", " + reflectum::to_string(y) + ") is not on " + curve.to_string());
    CurvePoint p(curve);
    p.at_infinity_ = false;
    p.x_ = x;
    p.y_ = y;
    return p;
  }

  const CurveId& curve() const { return curve_; }
  bool is_infinity() const { return at_infinity_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  std::string to_string() const {
    if (at_infinity_) return "O";
    return "(" + reflectum::to_string(x_) + ", " + reflectum::to_string(y_) + ")";
  }

  bool operator==(const CurvePoint& o) const {
    if (!(curve_ == o.curve_) || at_infinity_ != o.at_infinity_) return false;
    return at_infinity_ || (x_ == o.x_ && y_ == o.y_);
  }

 private:
  explicit CurvePoint(CurveId curve) : curve_(std::move(curve)) {}

  CurveId curve_;
  bool at_infinity_ = true;
  Rational x_, y_;
};

inline CurvePoint negate(const CurvePoint& p) {
  if (p.is_infinity()) return p;
  return CurvePoint::affine(p.curve(), p.x(), -p.y());
}

/// Chord-and-tangent addition.
inline CurvePoint add(const CurvePoint& p, const CurvePoint& q) {
  if (!(p.curve() == q.curve()))
    throw Error(ErrorCode::CurveMismatch, p.curve().to_string() + " vs " + q.curve().to_string());
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rational lambda;
  if (p.x() == q.x()) {
    if (p.y() == -q.y()) return CurvePoint::infinity(p.curve());
    lambda = (3 * p.x() * p.x() + Rational(p.curve().a())) / (2 * p.y());
  } else {
    lambda = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rational x3 = lambda * lambda - p.x() - q.x();
  Rational y3 = lambda * (p.x() - x3) - p.y();
  return CurvePoint::affine(p.curve(), x3, y3);
}

inline CurvePoint multiply(long k, const CurvePoint& p) {
  CurvePoint base = k < 0 ? negate(p) : p;
  unsigned long m = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  CurvePoint acc = CurvePoint::infinity(p.curve());
  while (m > 0) {
    if (m & 1) acc = add(acc, base);
    base = add(base, base);
    m >>= 1;
  }
  return acc;
}

namespace detail {

inline void require_En(const CurvePoint& p) {
  if (p.curve().family != CurveFamily::En)
    throw Error(ErrorCode::CurveMismatch, p.curve().to_string() + " is not a congruent-number curve");
}

inline void require_positive(const Integer& n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive, got " + n.get_str());
}

// √(n − t²) and √(n + t²) when t ∈ 𝒯_n.
inline std::pair<Rational, Rational> tn_roots(const Integer& n, const Rational& t) {
  require_positive(n);
  if (t == 0) throw Error(ErrorCode::NotInTn, "t must be nonzero");
  Rational t2 = t * t;
  auto u = arith::sqrt_exact(Rational(n) - t2);
  auto v = arith::sqrt_exact(Rational(n) + t2);
  if (!u || !v || *u == 0) throw Error(ErrorCode::NotInTn, "n ± t² are not both nonzero squares for t = " + to_string(t));
  return {*u, *v};
}

inline std::pair<Rational, Rational> zn_roots(const Integer& n, const Rational& z) {
  require_positive(n);
  Rational z2 = z * z;
  auto a = arith::sqrt_exact(z2 - Rational(n));
  auto b = arith::sqrt_exact(z2 + Rational(n));
  if (z == 0 || !a || !b || *a == 0)
    throw Error(ErrorCode::NotInZn, "z² ± n are not both nonzero squares for z = " + to_string(z));
  return {*a, *b};
}

}  // namespace detail

/// x([2]P) = ((x² + n²)/(2y))² on E_n.
inline Rational x_double(const CurvePoint& p) {
  detail::require_En(p);
  if (p.is_infinity() || p.y() == 0) throw Error(ErrorCode::TwoTorsion, p.to_string() + " has order dividing 2");
  const Integer& n = p.curve().parameter;
  Rational w = (p.x() * p.x() + Rational(n * n)) / (2 * p.y());
  return w * w;
}

/// t ↦ (−t², t·√(n² − t⁴)).
inline CurvePoint phi(const Integer& n, const Rational& t) {
  auto [u, v] = detail::tn_roots(n, t);
  return CurvePoint::affine(CurveId::En(n), -t * t, t * u * v);
}

/// z ↦ (z², −z·√(z⁴ − n²)).
inline CurvePoint psi(const Integer& n, const Rational& z) {
  auto [a, b] = detail::zn_roots(n, z);
  return CurvePoint::affine(CurveId::En(n), z * z, -z * a * b);
}

/// z(t) = (n² + t⁴) / (2t·√(n² − t⁴)).
inline Rational zmap(const Integer& n, const Rational& t) {
  auto [u, v] = detail::tn_roots(n, t);
  Rational t2 = t * t;
  return (Rational(n * n) + t2 * t2) / (2 * t * u * v);
}

/// x(±P + T_i) for the 2-torsion points T₁ = (−n,0), T₂ = (0,0), T₃ = (n,0).
inline Rational translate_x(const Integer& n, const Rational& x, int i) {
  const Rational nn(n);
  switch (i) {
    case 1:
      if (x == -nn) throw Error(ErrorCode::PoleAtTorsion, "x = -n");
      return -nn * (x - nn) / (x + nn);
    case 2:
      if (x == 0) throw Error(ErrorCode::PoleAtTorsion, "x = 0");
      return -nn * nn / x;
    case 3:
      if (x == nn) throw Error(ErrorCode::PoleAtTorsion, "x = n");
      return nn * (x + nn) / (x - nn);
    default:
      throw Error(ErrorCode::InvalidArgument, "torsion index must be 1, 2 or 3");
  }
}

inline std::vector<CurvePoint> two_torsion(const Integer& n) {
  CurveId e = CurveId::En(n);
  return {CurvePoint::infinity(e), CurvePoint::affine(e, Rational(-n), 0), CurvePoint::affine(e, 0, 0),
          CurvePoint::affine(e, Rational(n), 0)};
}

/// Coprime P > Q > 0 of opposite parity.
struct PythPair {
  Integer P, Q;

  static PythPair make(const Integer& P, const Integer& Q) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), P.get_mpz_t(), Q.get_mpz_t());
    if (!(P > Q && Q > 0) || g != 1 || mpz_even_p(Integer(P - Q).get_mpz_t()))
      throw Error(ErrorCode::NotPythPair, "(" + P.get_str() + ", " + Q.get_str() + ")");
    return {P, Q};
  }

  Integer area() const { return P * Q * (P * P - Q * Q); }
  bool operator==(const PythPair&) const = default;
};

struct PythTriple {
  Integer A, B, C;
  bool operator==(const PythTriple&) const = default;
};

/// (P² − Q², 2PQ, P² + Q²): primitive, B even.
inline PythTriple euclid_triple(const PythPair& pq) {
  return {pq.P * pq.P - pq.Q * pq.Q, 2 * pq.P * pq.Q, pq.P * pq.P + pq.Q * pq.Q};
}

/// Inverse of euclid_triple: C ± A = 2P², 2Q².
inline PythPair pair_from_triple(const PythTriple& t) {
  auto p2 = arith::sqrt_exact(make_rational(t.C + t.A, 2));
  auto q2 = arith::sqrt_exact(make_rational(t.C - t.A, 2));
  if (!p2 || !q2 || p2->get_den() != 1 || q2->get_den() != 1)
    throw Error(ErrorCode::NotPythPair, "triple is not of Euclid form");
  return PythPair::make(p2->get_num(), q2->get_num());
}

struct RightTriangle {
  Rational a, b, c;

  Rational area() const { return a * b / 2; }
  bool operator==(const RightTriangle&) const = default;
};

/// Scales the Euclid triple of pq down by R = √(PQ(P² − Q²)/n) to area n.
inline RightTriangle pair_to_triangle(const Integer& n, const PythPair& pq) {
  detail::require_positive(n);
  auto r = arith::sqrt_exact(make_rational(pq.area(), n));
  if (!r) throw Error(ErrorCode::NotInPn, "squarefree part of PQ(P²−Q²) is not " + n.get_str());
  PythTriple t = euclid_triple(pq);
  return {Rational(t.A) / *r, Rational(t.B) / *r, Rational(t.C) / *r};
}

/// (a, b, c) ↦ (c²/4, −|b² − a²|·c/8), a point of 2E_n(Q).
inline CurvePoint triangle_to_doublepoint(const Integer& n, const RightTriangle& tri) {
  detail::require_positive(n);
  if (tri.a * tri.a + tri.b * tri.b != tri.c * tri.c) throw Error(ErrorCode::WrongArea, "not a right triangle");
  if (tri.area() != Rational(n)) throw Error(ErrorCode::WrongArea, "area is " + to_string(tri.area()));
  Rational diff = abs(tri.b * tri.b - tri.a * tri.a);
  return CurvePoint::affine(CurveId::En(n), tri.c * tri.c / 4, -diff * tri.c / 8);
}

/// (x, y) ↦ (√(x+n) − √(x−n), √(x+n) + √(x−n), 2√x).
inline RightTriangle doublepoint_to_triangle(const CurvePoint& p) {
  detail::require_En(p);
  if (p.is_infinity()) throw Error(ErrorCode::InvalidArgument, "point at infinity");
  const Rational n(p.curve().parameter);
  auto s = arith::sqrt_exact(p.x());
  auto plus = arith::sqrt_exact(p.x() + n);
  auto minus = arith::sqrt_exact(p.x() - n);
  if (!s || !plus || !minus) throw Error(ErrorCode::InvalidArgument, p.to_string() + " is not in 2E_n(Q)");
  return {*plus - *minus, *plus + *minus, 2 * *s};
}

/// One of the four points Q with [2]Q = triangle_to_doublepoint(n, tri), up to sign.
inline CurvePoint halving_point(const Integer& n, const RightTriangle& tri) {
  if (tri.c == tri.a) throw Error(ErrorCode::InvalidArgument, "degenerate triangle");
  Rational d = tri.c - tri.a;
  const Rational nn(n);
  return CurvePoint::affine(CurveId::En(n), nn * tri.b / d, 2 * nn * nn / d);
}

/// (u, v) on u³ + v³ = N ↦ (12N/(u+v), 36N(v−u)/(u+v)) on C_{−432N²}.
inline CurvePoint cubic_to_weierstrass(const Integer& N, const Rational& u, const Rational& v) {
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "N must be nonzero");
  if (u * u * u + v * v * v != Rational(N))
    throw Error(ErrorCode::NotOnCurve, "u³ + v³ ≠ " + N.get_str());
  if (u + v == 0) throw Error(ErrorCode::MapsToInfinity, "v = -u corresponds to the point at infinity");
  const Rational nn(N);
  return CurvePoint::affine(CurveId::CN(-432 * N * N), 12 * nn / (u + v), 36 * nn * (v - u) / (u + v));
}

/// (x, y) ↦ ((36N − y)/(6x), (36N + y)/(6x)).
inline std::pair<Rational, Rational> weierstrass_to_cubic(const Integer& N, const CurvePoint& p) {
  if (!(p.curve() == CurveId::CN(-432 * N * N)))
    throw Error(ErrorCode::CurveMismatch, p.curve().to_string() + " is not C_{-432N^2} for N = " + N.get_str());
  if (p.is_infinity()) throw Error(ErrorCode::MapsToInfinity, "O corresponds to [1,-1,0]");
  const Rational nn(N);
  return {(36 * nn - p.y()) / (6 * p.x()), (36 * nn + p.y()) / (6 * p.x())};
}

/// C_{−1728n²} → C_{−27n²} by x' = x/4, y' = y/8.
inline CurvePoint to_reduced_cubic_model(const Integer& n, const CurvePoint& p) {
  if (!(p.curve() == CurveId::CN(-1728 * n * n))) throw Error(ErrorCode::CurveMismatch, p.curve().to_string());
  CurveId target = CurveId::CN(-27 * n * n);
  if (p.is_infinity()) return CurvePoint::infinity(target);
  return CurvePoint::affine(target, p.x() / 4, p.y() / 8);
}

inline CurvePoint from_reduced_cubic_model(const Integer& n, const CurvePoint& p) {
  if (!(p.curve() == CurveId::CN(-27 * n * n))) throw Error(ErrorCode::CurveMismatch, p.curve().to_string());
  CurveId target = CurveId::CN(-1728 * n * n);
  if (p.is_infinity()) return CurvePoint::infinity(target);
  return CurvePoint::affine(target, p.x() * 4, p.y() * 8);
}

struct TorsionSubgroup {
  int order = 1;
  std::string structure;  // "Z/6", "Z/3", "Z/2" or "trivial"
  std::vector<CurvePoint> points;
};

/// Torsion of C_N for sixth-power-free N, by the classical five cases.
inline TorsionSubgroup torsion_subgroup(const Integer& N) {
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "N must be nonzero");
  for (const auto& f : arith::factor(N).factors) {
    if (f.exponent >= 6) throw Error(ErrorCode::NotSixthPowerFree, N.get_str() + " has a sixth-power divisor");
  }
  CurveId c = CurveId::CN(N);
  TorsionSubgroup t;
  t.points.push_back(CurvePoint::infinity(c));
  auto pt = [&](long x, long y) { t.points.push_back(CurvePoint::affine(c, x, y)); };
  if (N == 1) {
    t.order = 6;
    t.structure = "Z/6";
    pt(-1, 0);
    pt(0, 1);
    pt(0, -1);
    pt(2, 3);
    pt(2, -3);
    return t;
  }
  if (N == -432) {
    t.order = 3;
    t.structure = "Z/3";
    pt(12, 36);
    pt(12, -36);
    return t;
  }
  if (auto r = arith::exact_root(N, 2)) {
    t.order = 3;
    t.structure = "Z/3";
    t.points.push_back(CurvePoint::affine(c, 0, Rational(*r)));
    t.points.push_back(CurvePoint::affine(c, 0, Rational(-*r)));
    return t;
  }
  if (auto r = arith::exact_root(N, 3)) {
    t.order = 2;
    t.structure = "Z/2";
    t.points.push_back(CurvePoint::affine(c, Rational(-*r), 0));
    return t;
  }
  t.structure = "trivial";
  return t;
}

/// Affine points with x = p/d² in lowest terms, |p| ≤ bound and d² ≤ bound,
/// sorted by (x, y). Denominators of x on these models are always squares.
inline std::vector<CurvePoint> search_points(const CurveId& curve, const Integer& bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "height bound must be positive");
  const Integer a = curve.a(), b = curve.b();
  std::vector<std::pair<Rational, Rational>> found;
  for (Integer d = 1; d * d <= bound; ++d) {
    const Integer d2 = d * d, d4 = d2 * d2, d6 = d4 * d2, d3 = d2 * d;
    for (Integer p = -bound; p <= bound; ++p) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), d.get_mpz_t());
      if (g != 1) continue;
      Integer rhs = p * p * p + a * p * d4 + b * d6;
      if (rhs < 0 || !mpz_perfect_square_p(rhs.get_mpz_t())) continue;
      Integer root = sqrt(rhs);
      Rational x = make_rational(p, d2);
      Rational y = make_rational(root, d3);
      found.emplace_back(x, y);
      if (y != 0) found.emplace_back(x, -y);
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<CurvePoint> out;
  out.reserve(found.size());
  for (const auto& [x, y] : found) out.push_back(CurvePoint::affine(curve, x, y));
  return out;
}

}  // namespace reflectum::ecurve
