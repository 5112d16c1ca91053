#pragma once

// Classifiers for (k,m)-reflecting numbers: n − t^m = u^k and n + t^m = v^k
// with t > 0 rational and v^k ≠ ±u^k.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflectum/arith.hpp"
#include "reflectum/descent.hpp"
#include "reflectum/ecurve.hpp"
#include "reflectum/qforms.hpp"

namespace reflectum::reflect {

using ecurve::CurveId;
using ecurve::CurvePoint;

struct ReflectType {
  long k = 2, m = 2;

  static ReflectType make(long k, long m) {
    if (k < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "type entries must be positive");
    return {k, m};
  }

  long gcd() const { return std::gcd(k, m); }
  long lcm() const { return std::lcm(k, m); }
  std::string to_string() const { return std::to_string(k) + "," + std::to_string(m); }
  bool operator==(const ReflectType&) const = default;
};

struct WitnessT {
  Integer n;
  ReflectType type;
  Rational t, u, v;
  bool operator==(const WitnessT&) const = default;
};

enum class Status { Yes, No, Unknown };

enum class CertificateKind { Witness, TheoremP5Mod8, TheoremTian13, RankTwoWitness, Satge, SpecialForm };

enum class ObstructionKind {
  PrimeDivisor3Mod4,
  EvenN,
  NegativeEvenK,
  KappaImageExcludes,
  GcdAtLeast3,
  EulerCube,
  EulerQuartic,
  DenesRule,
  NotSquarefreeNormalized,
};

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Yes: return "yes";
    case Status::No: return "no";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

constexpr std::string_view to_string(CertificateKind c) {
  switch (c) {
    case CertificateKind::Witness: return "Witness";
    case CertificateKind::TheoremP5Mod8: return "TheoremP5Mod8";
    case CertificateKind::TheoremTian13: return "TheoremTian13";
    case CertificateKind::RankTwoWitness: return "RankTwoWitness";
    case CertificateKind::Satge: return "Satge";
    case CertificateKind::SpecialForm: return "SpecialForm";
  }
  return "Witness";
}

constexpr std::string_view to_string(ObstructionKind o) {
  switch (o) {
    case ObstructionKind::PrimeDivisor3Mod4: return "PrimeDivisor3Mod4";
    case ObstructionKind::EvenN: return "EvenN";
    case ObstructionKind::NegativeEvenK: return "NegativeEvenK";
    case ObstructionKind::KappaImageExcludes: return "KappaImageExcludes";
    case ObstructionKind::GcdAtLeast3: return "GcdAtLeast3";
    case ObstructionKind::EulerCube: return "EulerCube";
    case ObstructionKind::EulerQuartic: return "EulerQuartic";
    case ObstructionKind::DenesRule: return "DenesRule";
    case ObstructionKind::NotSquarefreeNormalized: return "NotSquarefreeNormalized";
  }
  return "EvenN";
}

struct Certificate {
  CertificateKind kind = CertificateKind::Witness;
  std::optional<WitnessT> witness;
  std::optional<long> special_i;
  std::optional<Integer> special_t0;
  std::string hypothesis;
};

struct Obstruction {
  ObstructionKind kind = ObstructionKind::EvenN;
  std::optional<ObstructionKind> rule;  // sub-rule of GcdAtLeast3
  std::optional<Integer> prime;
  std::optional<Integer> core;
  std::vector<std::pair<Rational, Rational>> generators;
  std::vector<descent::SelmerElement> kappa_image;
  bool conditional = false;
  std::string detail;
};

struct Evidence {
  std::optional<int> selmer_dim;
  std::optional<int> rank_lower, rank_upper;
  std::size_t points_found = 0;
  std::optional<Integer> s_budget, point_budget;
  std::optional<long> search_bound;
  std::string note;
};

struct Verdict {
  Integer n;
  ReflectType type;
  Status status = Status::Unknown;
  std::optional<Certificate> certificate;
  std::optional<Obstruction> obstruction;
  std::optional<Evidence> evidence;

  const WitnessT* witness() const {
    return certificate && certificate->witness ? &*certificate->witness : nullptr;
  }
};

struct ClassifyOptions {
  Integer s_budget = 1000;
  Integer point_budget = 1000;
  long search_bound = 60;
  std::vector<std::pair<Rational, Rational>> generators;
  std::optional<int> assert_rank;
};

/// Exact substitution check of n − t^m = u^k, n + t^m = v^k, t > 0, v^k ≠ ±u^k.
inline bool verify_witness(const WitnessT& w) {
  if (w.type.k < 1 || w.type.m < 1 || w.t <= 0) return false;
  const auto k = static_cast<unsigned long>(w.type.k), m = static_cast<unsigned long>(w.type.m);
  Rational tm = arith::pow(w.t, m), uk = arith::pow(w.u, k), vk = arith::pow(w.v, k);
  const Rational n(w.n);
  return n - tm == uk && n + tm == vk && vk != uk && vk != -uk;
}

struct Normalization {
  Integer core;
  Integer scale;
  bool negative_even_k = false;
};

/// n = core · scale^lcm(k,m) with core free of lcm(k,m)-th powers.
inline Normalization normalize(const Integer& n, const ReflectType& type) {
  if (n == 0) throw Error(ErrorCode::ZeroExcluded, "n = 0 is excluded");
  const unsigned long L = static_cast<unsigned long>(type.lcm());
  Normalization out{Integer(sign(n)), Integer(1), n < 0 && type.k % 2 == 0};
  for (const auto& f : arith::factor(n).factors) {
    out.core *= arith::pow(f.prime, f.exponent % L);
    out.scale *= arith::pow(f.prime, f.exponent / L);
  }
  return out;
}

/// Witness for core·d^L from a witness for core.
inline WitnessT scale_witness(const WitnessT& w, const Rational& d) {
  const long L = w.type.lcm();
  WitnessT out = w;
  Rational nn = Rational(w.n) * arith::pow(d, static_cast<unsigned long>(L));
  if (nn.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "scaled n is not an integer");
  out.n = nn.get_num();
  out.t = w.t * arith::pow(d, static_cast<unsigned long>(L / w.type.m));
  out.u = w.u * arith::pow(d, static_cast<unsigned long>(L / w.type.k));
  out.v = w.v * arith::pow(d, static_cast<unsigned long>(L / w.type.k));
  return out;
}

/// Witness for −n from one for n, k odd: (t, u, v) ↦ (t, −v, −u).
inline WitnessT negate_witness(const WitnessT& w) { return {-w.n, w.type, w.t, -w.v, -w.u}; }

/// Least i ≥ 0 with k | im + 1.
inline long special_index(const ReflectType& type) {
  if (type.gcd() != 1) throw Error(ErrorCode::NoSpecialForm, "special numbers need gcd(k,m) = 1");
  for (long i = 0;; ++i) {
    if ((i * type.m + 1) % type.k == 0) return i;
  }
}

/// n = 2^{im}T₀^{km}, t = 2^i T₀^k, u = 0, v = 2^{(im+1)/k} T₀^m.
inline WitnessT special_reflecting(const ReflectType& type, const Integer& t0) {
  if (t0 < 1) throw Error(ErrorCode::InvalidArgument, "T0 must be positive");
  const long i = special_index(type);
  const auto k = static_cast<unsigned long>(type.k), m = static_cast<unsigned long>(type.m);
  const Integer two = 2;
  const auto iu = static_cast<unsigned long>(i);
  WitnessT w;
  w.type = type;
  w.n = arith::pow(two, iu * m) * arith::pow(t0, k * m);
  w.t = Rational(arith::pow(two, iu) * arith::pow(t0, k));
  w.u = 0;
  w.v = Rational(arith::pow(two, (iu * m + 1) / k) * arith::pow(t0, m));
  return w;
}

namespace detail {

inline Verdict make(const Integer& n, const ReflectType& type, Status s) {
  Verdict v;
  v.n = n;
  v.type = type;
  v.status = s;
  return v;
}

inline Verdict no(const Integer& n, const ReflectType& type, Obstruction ob) {
  Verdict v = make(n, type, Status::No);
  v.obstruction = std::move(ob);
  return v;
}

inline Verdict yes(const Integer& n, const ReflectType& type, Certificate c) {
  Verdict v = make(n, type, Status::Yes);
  v.certificate = std::move(c);
  return v;
}

inline Obstruction negative_even(const Integer& n) {
  Obstruction ob;
  ob.kind = ObstructionKind::NegativeEvenK;
  ob.detail = n.get_str() + " < 0 and k is even";
  return ob;
}

inline std::optional<Integer> prime_3_mod_4(const Integer& core) {
  for (const auto& p : arith::factor(core).primes()) {
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) return p;
  }
  return std::nullopt;
}

inline Obstruction prime_obstruction(const Integer& p) {
  Obstruction ob;
  ob.kind = ObstructionKind::PrimeDivisor3Mod4;
  ob.prime = p;
  ob.detail = "-1 is not a square modulo " + p.get_str();
  return ob;
}

}  // namespace detail

// ---------------------------------------------------------------- (2,1)

inline Verdict classify_21(const Integer& n) {
  const ReflectType type{2, 1};
  Normalization norm = normalize(n, type);
  if (norm.negative_even_k) return detail::no(n, type, detail::negative_even(n));
  if (auto p = detail::prime_3_mod_4(norm.core)) return detail::no(n, type, detail::prime_obstruction(*p));
  WitnessT w;
  w.n = norm.core;
  w.type = type;
  if (norm.core == 1) {
    // 5² − 24 = 1², 5² + 24 = 7².
    w.t = Rational(24, 25);
    w.u = Rational(1, 5);
    w.v = Rational(7, 5);
  } else {
    // core = a² + b², then n ∓ 2ab = (a ∓ b)².
    Integer a = 1, b = 1;
    const bool even = mpz_even_p(norm.core.get_mpz_t());
    const Integer odd = even ? Integer(norm.core / 2) : norm.core;
    if (odd != 1) {
      std::tie(a, b) = arith::two_squares(odd);
      if (even) std::tie(a, b) = std::pair<Integer, Integer>{b - a, a + b};
    }
    w.t = Rational(2 * a * b);
    w.u = Rational(abs(Integer(a - b)));
    w.v = Rational(a + b);
  }
  w = scale_witness(w, Rational(norm.scale));
  Certificate c;
  c.kind = w.u == 0 ? CertificateKind::SpecialForm : CertificateKind::Witness;
  if (w.u == 0) {
    c.special_i = special_index(type);
    c.special_t0 = norm.scale;
  }
  c.witness = w;
  c.hypothesis = "core " + norm.core.get_str() + " is a sum of two squares";
  return detail::yes(n, type, c);
}

// ---------------------------------------------------------------- (3,1)

/// (x, y) on C_{−27n²} ↦ u = (9n − y)/(3x), v = (9n + y)/(3x) with u³ + v³ = 2n.
inline std::pair<Rational, Rational> cubic_pair_from_point(const Integer& n, const CurvePoint& p) {
  if (!(p.curve() == CurveId::CN(-27 * n * n))) throw Error(ErrorCode::CurveMismatch, p.curve().to_string());
  if (p.is_infinity()) throw Error(ErrorCode::MapsToInfinity, "O has no affine preimage");
  const Rational nn(n);
  return {(9 * nn - p.y()) / (3 * p.x()), (9 * nn + p.y()) / (3 * p.x())};
}

namespace detail {

inline Integer naive_height(const CurvePoint& p) {
  Integer num = abs(p.x().get_num());
  return num > p.x().get_den() ? num : p.x().get_den();
}

// Non-torsion point of least naive height, ties broken by (x, y).
inline std::optional<CurvePoint> smallest_point(const std::vector<CurvePoint>& pts) {
  std::optional<CurvePoint> best;
  for (const auto& p : pts) {
    if (p.y() == 0) continue;
    if (!best || naive_height(p) < naive_height(*best)) best = p;
  }
  return best;
}

}  // namespace detail

inline Verdict classify_31(const Integer& n, const ClassifyOptions& opts = {}) {
  const ReflectType type{3, 1};
  Normalization norm = normalize(n, type);
  const Integer core = abs(norm.core);
  const Rational scale = Rational(norm.scale);
  auto finish = [&](WitnessT w) {
    w = scale_witness(w, scale);
    return n < 0 ? negate_witness(w) : w;
  };
  if (core == 1) {
    Obstruction ob;
    ob.kind = ObstructionKind::EulerCube;
    ob.core = core;
    ob.detail = "u^3 + v^3 = 2 has only the solution (1,1)";
    return detail::no(n, type, ob);
  }
  if (core == 4) {
    Certificate c;
    c.kind = CertificateKind::SpecialForm;
    c.special_i = special_index(type);
    c.special_t0 = norm.scale;
    c.witness = finish(special_reflecting(type, 1));
    c.hypothesis = "core 4 = 2^2 is the special (3,1) number";
    return detail::yes(n, type, c);
  }
  std::optional<Certificate> satge;
  const auto fac = arith::factor(core);
  if (fac.factors.size() == 1) {
    const auto& f = fac.factors.front();
    auto r9 = mpz_fdiv_ui(f.prime.get_mpz_t(), 9);
    if (f.exponent == 1 && r9 == 2 && f.prime != 2) {
      satge = Certificate{CertificateKind::Satge, {}, {}, {}, "core is an odd prime p = " + f.prime.get_str() + " with p ≡ 2 mod 9"};
    } else if (f.exponent == 2 && r9 == 5) {
      satge = Certificate{CertificateKind::Satge, {}, {}, {}, "core is p^2 with p = " + f.prime.get_str() + " ≡ 5 mod 9"};
    }
  }
  const CurveId curve = CurveId::CN(-27 * core * core);
  auto pts = ecurve::search_points(curve, opts.point_budget);
  std::optional<WitnessT> witness;
  if (auto p = detail::smallest_point(pts)) {
    auto [u, v] = cubic_pair_from_point(core, *p);
    if (u > v) std::swap(u, v);
    WitnessT w{core, type, (v * v * v - u * u * u) / 2, u, v};
    if (verify_witness(w)) witness = finish(w);
  }
  if (satge) {
    satge->witness = witness;
    return detail::yes(n, type, *satge);
  }
  if (witness) {
    Certificate c;
    c.kind = CertificateKind::Witness;
    c.witness = witness;
    c.hypothesis = "non-torsion point on " + curve.to_string();
    return detail::yes(n, type, c);
  }
  Verdict v = detail::make(n, type, Status::Unknown);
  Evidence e;
  e.points_found = pts.size();
  e.point_budget = opts.point_budget;
  e.note = "no non-torsion point on " + curve.to_string() + " within the height bound";
  v.evidence = e;
  return v;
}

// ---------------------------------------------------------------- (2,2)

/// First t = T/S in (S, T) order with nS² ± T² both nonzero squares and gcd(S, T) = 1.
inline std::optional<WitnessT> witness_search_22(const Integer& n, const Integer& s_budget) {
  if (n < 1 || !arith::is_squarefree(n)) throw Error(ErrorCode::NotSquarefree, n.get_str());
  const auto fn = arith::factor(n);
  for (Integer S = 1; S <= s_budget; ++S) {
    std::map<Integer, unsigned> exps;
    for (const auto& f : fn.factors) exps[f.prime] += f.exponent;
    if (S > 1) {
      for (const auto& f : arith::factor(S).factors) exps[f.prime] += 2 * f.exponent;
    }
    arith::FactoredInt f;
    f.sign = 1;
    for (const auto& [p, e] : exps) f.factors.push_back({p, e});
    const Integer nS2 = n * S * S;
    std::optional<Integer> best;
    for (const auto& [T, U] : arith::two_square_representations(f)) {
      if (T == 0 || U == 0 || (best && T >= *best)) continue;
      Integer g;
      mpz_gcd(g.get_mpz_t(), S.get_mpz_t(), T.get_mpz_t());
      if (g != 1) continue;
      Integer sum = nS2 + T * T;
      if (mpz_perfect_square_p(sum.get_mpz_t())) best = T;
    }
    if (best) {
      const Integer& T = *best;
      Integer U = sqrt(Integer(nS2 - T * T)), V = sqrt(Integer(nS2 + T * T));
      return WitnessT{n, {2, 2}, make_rational(T, S), make_rational(U, S), make_rational(V, S)};
    }
  }
  return std::nullopt;
}

/// A witness from rational points of E_n: some combination R of the points
/// and 2-torsion with κ(R) = (1,−1) has x(R) = −t².
inline std::optional<WitnessT> witness_from_points(const Integer& n, const std::vector<CurvePoint>& pts) {
  descent::SquareClassBasis basis(n);
  std::vector<CurvePoint> items = {CurvePoint::affine(CurveId::En(n), Rational(-n), 0),
                                   CurvePoint::affine(CurveId::En(n), 0, 0)};
  for (const auto& p : pts) items.push_back(p);
  // Leading bit → (vector, combination of kept items).
  std::map<int, std::pair<std::uint64_t, std::uint64_t>, std::greater<>> rows;
  std::vector<std::size_t> kept;
  auto reduce = [&](std::uint64_t v, std::uint64_t c) {
    for (const auto& [lead, row] : rows) {
      if (v >> lead & 1) {
        v ^= row.first;
        c ^= row.second;
      }
    }
    return std::pair{v, c};
  };
  for (std::size_t i = 0; i < items.size() && kept.size() < 63; ++i) {
    auto [v, c] = reduce(basis.mask_of(descent::kappa(basis, items[i])), std::uint64_t{1} << kept.size());
    if (v == 0) continue;
    kept.push_back(i);
    rows[63 - __builtin_clzll(v)] = {v, c};
  }
  const auto target = descent::SelmerElement::make(1, -1);
  auto [rest, combo] = reduce(basis.mask_of(target), 0);
  if (rest != 0) return std::nullopt;
  CurvePoint r = CurvePoint::infinity(CurveId::En(n));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    if (combo >> j & 1) r = ecurve::add(r, items[kept[j]]);
  }
  if (r.is_infinity() || !(descent::kappa(basis, r) == target)) return std::nullopt;
  auto t = arith::sqrt_exact(-r.x());
  if (!t || *t == 0) return std::nullopt;
  auto u = arith::sqrt_exact(Rational(n) - *t * *t);
  auto v = arith::sqrt_exact(Rational(n) + *t * *t);
  if (!u || !v) return std::nullopt;
  WitnessT w{n, {2, 2}, *t, *u, *v};
  if (!verify_witness(w)) return std::nullopt;
  return w;
}

namespace detail {

inline bool tian_hypotheses(const Integer& core) {
  if (mpz_fdiv_ui(core.get_mpz_t(), 8) != 5) return false;
  const auto primes = arith::factor(core).primes();
  if (primes.size() < 2) return false;
  int five_mod_8 = 0;
  for (const auto& p : primes) {
    auto r = mpz_fdiv_ui(p.get_mpz_t(), 8);
    if (r % 4 != 1) return false;
    if (r == 5) ++five_mod_8;
  }
  return five_mod_8 == 1;
}

}  // namespace detail

/// Whether the class-group hypothesis of the Tian criterion holds; nullopt when
/// the discriminant is beyond the enumeration limit.
inline std::optional<bool> tian_class_group_condition(const Integer& core) {
  if (!core.fits_slong_p()) return std::nullopt;
  const long d = qforms::field_discriminant(core.get_si());
  if (-d > qforms::kMaxClassGroupDiscriminant) return std::nullopt;
  return !qforms::has_element_of_exact_order_4(qforms::class_group(d));
}

inline Verdict classify_22(const Integer& n, const ClassifyOptions& opts = {}) {
  const ReflectType type{2, 2};
  Normalization norm = normalize(n, type);
  if (norm.negative_even_k) return detail::no(n, type, detail::negative_even(n));
  const Integer& core = norm.core;
  const Rational scale(norm.scale);
  if (mpz_even_p(core.get_mpz_t())) {
    Obstruction ob;
    ob.kind = ObstructionKind::EvenN;
    ob.core = core;
    ob.detail = "squarefree part " + core.get_str() + " is even";
    return detail::no(n, type, ob);
  }
  if (auto p = detail::prime_3_mod_4(core)) return detail::no(n, type, detail::prime_obstruction(*p));

  const CurveId curve = CurveId::En(core);
  std::vector<CurvePoint> user_points;
  for (const auto& [x, y] : opts.generators) user_points.push_back(CurvePoint::affine(curve, x, y));

  Evidence ev;
  ev.s_budget = opts.s_budget;
  ev.point_budget = opts.point_budget;

  // Lazily computed pieces shared by the later steps.
  std::optional<std::vector<CurvePoint>> points;
  auto all_points = [&]() -> const std::vector<CurvePoint>& {
    if (!points) {
      points = ecurve::search_points(curve, opts.point_budget);
      for (const auto& p : user_points) points->push_back(p);
      ev.points_found = points->size();
    }
    return *points;
  };
  std::optional<std::optional<WitnessT>> searched;
  auto search = [&]() -> const std::optional<WitnessT>& {
    if (!searched) searched = witness_search_22(core, opts.s_budget);
    return *searched;
  };
  auto any_witness = [&]() -> std::optional<WitnessT> {
    std::optional<WitnessT> w = search();
    if (!w) w = witness_from_points(core, all_points());
    if (w) w = scale_witness(*w, scale);
    return w;
  };

  const auto fac = arith::factor(core);
  if (fac.factors.size() == 1 && mpz_fdiv_ui(core.get_mpz_t(), 8) == 5) {
    Certificate c{CertificateKind::TheoremP5Mod8, any_witness(), {}, {}, "core " + core.get_str() + " is a prime ≡ 5 mod 8"};
    Verdict v = detail::yes(n, type, c);
    return v;
  }
  if (detail::tian_hypotheses(core)) {
    auto cond = tian_class_group_condition(core);
    if (cond && *cond) {
      Certificate c{CertificateKind::TheoremTian13, any_witness(), {}, {},
                    "core " + core.get_str() + " ≡ 5 mod 8, prime divisors ≡ 1 mod 4 with exactly one ≡ 5 mod 8, "
                    "and Q(sqrt(-" + core.get_str() + ")) has no class of exact order 4"};
      return detail::yes(n, type, c);
    }
    if (!cond) ev.note = "class group too large for the Tian check; ";
  }

  const auto sel = descent::selmer_group(core);
  ev.selmer_dim = sel.dim;
  const auto& pts = all_points();
  const auto span = descent::kappa_span(core, pts);
  auto bounds = descent::rank_bounds(core, pts, sel);
  ev.rank_lower = bounds.lower;
  ev.rank_upper = bounds.upper;
  if (bounds.upper == 0) {
    // E(Q) = E[2], while φ(t) would be a point of infinite order.
    Obstruction ob;
    ob.kind = ObstructionKind::KappaImageExcludes;
    ob.core = core;
    ob.kappa_image = span;
    ob.detail = "Selmer dimension 2 forces rank 0";
    return detail::no(n, type, ob);
  }
  bool hit = false;
  for (const auto& e : descent::criterion_coset(core)) hit = hit || std::binary_search(span.begin(), span.end(), e);
  bool nontorsion = std::any_of(pts.begin(), pts.end(), [](const CurvePoint& p) { return p.y() != 0; });
  if (hit || (sel.dim == 3 && nontorsion)) {
    Certificate c{CertificateKind::RankTwoWitness, any_witness(), {}, {}, {}};
    c.hypothesis = hit ? "κ of found points meets the criterion coset"
                       : "Selmer dimension 3 and a point of infinite order: Ш[2] is trivial";
    Verdict v = detail::yes(n, type, c);
    v.evidence = ev;
    return v;
  }
  if (auto w = search()) {
    Certificate c{CertificateKind::Witness, scale_witness(*w, scale), {}, {}, "search within S budget"};
    return detail::yes(n, type, c);
  }
  if (opts.assert_rank) {
    auto gspan = descent::kappa_span(core, user_points);
    int d = 0;
    for (std::size_t s = gspan.size(); s > 4; s /= 2) ++d;
    if (d != *opts.assert_rank || *opts.assert_rank > bounds.upper)
      throw Error(ErrorCode::InvalidArgument, "generators are inconsistent with the asserted rank");
    bool meets = false;
    for (const auto& e : descent::criterion_coset(core)) meets = meets || std::binary_search(gspan.begin(), gspan.end(), e);
    if (!meets) {
      Obstruction ob;
      ob.kind = ObstructionKind::KappaImageExcludes;
      ob.core = core;
      ob.generators = opts.generators;
      ob.kappa_image = gspan;
      ob.conditional = true;
      ob.detail = "conditional on the supplied generators being a Mordell-Weil basis";
      Verdict v = detail::no(n, type, ob);
      v.evidence = ev;
      return v;
    }
  }
  Verdict v = detail::make(n, type, Status::Unknown);
  v.evidence = ev;
  return v;
}

// ---------------------------------------------------------------- gcd ≥ 3

inline Verdict classify_gcd3(const Integer& n, const ReflectType& type) {
  if (n == 0) throw Error(ErrorCode::ZeroExcluded, "n = 0 is excluded");
  const long d = type.gcd();
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "gcd(k,m) must be at least 3");
  Obstruction ob;
  ob.kind = ObstructionKind::GcdAtLeast3;
  if (d % 3 == 0) {
    ob.rule = ObstructionKind::EulerCube;
    ob.detail = "reduces to 2T^3 + U^3 = V^3";
  } else if (d % 4 == 0) {
    ob.rule = ObstructionKind::EulerQuartic;
    ob.detail = "reduces to 2T^4 + U^4 = V^4";
  } else {
    ob.rule = ObstructionKind::DenesRule;
    ob.detail = "x^d + y^d = 2z^d has only trivial solutions for d = " + std::to_string(d);
  }
  return detail::no(n, type, ob);
}

// ---------------------------------------------------------------- general

/// Integer solutions of 2T^m + U^k = V^k with |U|, |V| ≤ bound, U ≡ V mod 2,
/// V^k ≠ ±U^k and T ≥ 1, each yielding n = (V^k + U^k)/2, in (V, U) order.
inline std::vector<WitnessT> general_witness_search(const ReflectType& type, long bound) {
  std::vector<WitnessT> out;
  const auto k = static_cast<unsigned long>(type.k), m = static_cast<unsigned long>(type.m);
  const long lo = type.k % 2 == 0 ? 0 : -bound;
  for (long V = lo; V <= bound; ++V) {
    for (long U = lo; U <= bound; ++U) {
      if ((U - V) % 2 != 0) continue;
      Integer uk = arith::pow(Integer(U), k), vk = arith::pow(Integer(V), k);
      if (vk == uk || vk == -uk) continue;
      Integer diff = vk - uk;
      if (diff <= 0) continue;
      auto T = arith::exact_root(Integer(diff / 2), static_cast<unsigned>(m));
      if (!T || *T < 1) continue;
      out.push_back({(vk + uk) / 2, type, Rational(*T), Rational(U), Rational(V)});
    }
  }
  return out;
}

inline Verdict classify(const Integer& n, const ReflectType& type, const ClassifyOptions& opts = {});

namespace detail {

inline std::optional<Obstruction> divisor_type_obstruction(const Integer& n, const ReflectType& type,
                                                           const ClassifyOptions& opts) {
  std::vector<ReflectType> smaller;
  if (type.k % 2 == 0 && type.m % 2 == 0) smaller.push_back({2, 2});
  if (type.k % 2 == 0) smaller.push_back({2, 1});
  if (type.k % 3 == 0) smaller.push_back({3, 1});
  for (const auto& s : smaller) {
    if (s == type) continue;
    ClassifyOptions cheap = opts;
    cheap.s_budget = 0;
    cheap.point_budget = 1;
    cheap.generators.clear();
    cheap.assert_rank.reset();
    Verdict v;
    if (s == ReflectType{2, 2}) {
      Normalization norm = normalize(n, s);
      if (norm.negative_even_k) return negative_even(n);
      if (mpz_even_p(norm.core.get_mpz_t()) || prime_3_mod_4(norm.core)) v = classify_22(n, cheap);
      else continue;
    } else {
      v = classify(n, s, cheap);
    }
    if (v.status == Status::No && v.obstruction && !v.obstruction->conditional) {
      Obstruction ob = *v.obstruction;
      ob.detail = "inherited from type (" + s.to_string() + "): " + ob.detail;
      return ob;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Dispatches on the type; other types use inherited obstructions, special
/// forms and a bounded integer search.
inline Verdict classify(const Integer& n, const ReflectType& type, const ClassifyOptions& opts) {
  if (n == 0) throw Error(ErrorCode::ZeroExcluded, "n = 0 is excluded");
  if (type.k < 1 || type.m < 1) throw Error(ErrorCode::InvalidArgument, "type entries must be positive");
  if (type.gcd() >= 3) return classify_gcd3(n, type);
  if (type.k == 1) {
    Certificate c;
    c.kind = CertificateKind::Witness;
    c.witness = WitnessT{n, type, 1, n - 1, n + 1};
    c.hypothesis = "k = 1";
    return detail::yes(n, type, c);
  }
  if (type == ReflectType{2, 1}) return classify_21(n);
  if (type == ReflectType{3, 1}) return classify_31(n, opts);
  if (type == ReflectType{2, 2}) return classify_22(n, opts);

  Normalization norm = normalize(n, type);
  if (norm.negative_even_k) return detail::no(n, type, detail::negative_even(n));
  if (auto ob = detail::divisor_type_obstruction(n, type, opts)) return detail::no(n, type, *ob);
  const Integer core = abs(norm.core);
  auto orient = [&](WitnessT w) { return n < 0 ? negate_witness(w) : w; };
  if (type.gcd() == 1) {
    const long i = special_index(type);
    if (core == arith::pow(Integer(2), static_cast<unsigned long>(i * type.m))) {
      Certificate c;
      c.kind = CertificateKind::SpecialForm;
      c.special_i = i;
      c.special_t0 = norm.scale;
      c.witness = orient(special_reflecting(type, norm.scale));
      c.hypothesis = "core is 2^(" + std::to_string(i) + "*" + std::to_string(type.m) + ")";
      return detail::yes(n, type, c);
    }
  }
  for (const auto& w : general_witness_search(type, opts.search_bound)) {
    if (w.n <= 0) continue;
    Normalization wn = normalize(w.n, type);
    if (wn.core != core) continue;
    WitnessT scaled = scale_witness(w, make_rational(norm.scale, wn.scale));
    Certificate c;
    c.kind = scaled.u == 0 ? CertificateKind::SpecialForm : CertificateKind::Witness;
    c.witness = orient(scaled);
    c.hypothesis = "integer solution with n = " + w.n.get_str();
    return detail::yes(n, type, c);
  }
  Verdict v = detail::make(n, type, Status::Unknown);
  Evidence e;
  e.search_bound = opts.search_bound;
  e.note = "no solution of 2T^m + U^k = V^k within the bound";
  v.evidence = e;
  return v;
}

}  // namespace reflectum::reflect
