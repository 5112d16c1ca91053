#pragma once

// The worked examples of the underlying paper as a self-test table.

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "reflectum/descent.hpp"
#include "reflectum/ecurve.hpp"
#include "reflectum/reflect.hpp"

namespace reflectum::paper_check {

struct Row {
  std::string group;
  std::string name;
  std::function<bool()> check;
};

namespace detail {

using ecurve::CurveId;
using ecurve::CurvePoint;

inline Rational q(const char* s) { return parse_rational(s); }

inline CurvePoint pt(const Integer& n, const char* x, const char* y) {
  return CurvePoint::affine(CurveId::En(n), q(x), q(y));
}

inline bool contains(const std::vector<CurvePoint>& pts, const CurvePoint& p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

inline std::vector<descent::SelmerElement> cosets_of(const Integer& n, std::vector<std::pair<long, long>> reps) {
  std::vector<descent::SelmerElement> out;
  for (auto [a, b] : reps) {
    for (const auto& t : descent::two_torsion_image(n)) out.push_back(descent::SelmerElement::make(a, b) * t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool same_set(std::vector<descent::SelmerElement> a, std::vector<descent::SelmerElement> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline const char* kT157 = "407598125202/53156661805";
inline const char* kZ157 =
    "224403517704336969924557513090674863160948472041/17824664537857719176051070357934327140032961660";

}  // namespace detail

inline std::vector<Row> rows() {
  using namespace detail;
  using descent::HomogeneousSpace;
  using descent::SelmerElement;
  using descent::SquareClass;
  using reflect::ObstructionKind;
  using reflect::Status;
  std::vector<Row> r;

  r.push_back({"arith", "v_3(0) is infinite", [] { return !arith::vp(3, 0).has_value(); }});
  r.push_back({"arith", "5735 = 5*31*37", [] {
                 auto f = arith::factor(5735);
                 return f.sign == 1 && f.primes() == std::vector<Integer>{5, 31, 37} && f.is_squarefree();
               }});
  r.push_back({"arith", "205 = 5*41", [] { return arith::factor(205).primes() == std::vector<Integer>{5, 41}; }});
  r.push_back({"arith", "(41/12)^2 - 5 = (31/12)^2",
               [] { return arith::sqrt_exact(q("1681/144") - 5) == q("31/12"); }});
  r.push_back({"arith", "(-1/5) = 1", [] { return arith::legendre(-1, 5) == 1; }});
  r.push_back({"arith", "(-1/7) = -1", [] { return arith::legendre(-1, 7) == -1; }});
  r.push_back({"arith", "(5,-1)_5 = 1", [] { return arith::hilbert(5, -1, arith::PadicPlace::prime(5)) == 1; }});
  r.push_back({"arith", "(5,2)_5 = -1", [] { return arith::hilbert(5, 2, arith::PadicPlace::prime(5)) == -1; }});
  r.push_back({"arith", "9 is a square in Z_2", [] { return arith::is_square_in_Zv(9, arith::PadicPlace::prime(2)); }});

  r.push_back({"ecurve", "x([2](-4,6)) on E_5 is (41/12)^2", [] { return ecurve::x_double(pt(5, "-4", "6")) == q("1681/144"); }});
  r.push_back({"ecurve", "x([2](-9,120)) on E_41 is (881/120)^2",
               [] { return ecurve::x_double(pt(41, "-9", "120")) == q("881/120") * q("881/120"); }});
  r.push_back({"ecurve", "phi(5,2) = (-4,6)", [] { return ecurve::phi(5, 2) == pt(5, "-4", "6"); }});
  r.push_back({"ecurve", "psi(5,41/12)", [] {
                 auto p = ecurve::psi(5, q("41/12"));
                 return p.x() == q("1681/144") && p.y() == -q("41/12") * q("31/12") * q("49/12");
               }});
  r.push_back({"ecurve", "psi(41,881/120) has x = (881/120)^2", [] {
                 return ecurve::psi(41, q("881/120")).x() == q("881/120") * q("881/120") &&
                        arith::sqrt_exact(q("881/120") * q("881/120") - 41) == q("431/120") &&
                        arith::sqrt_exact(q("881/120") * q("881/120") + 41) == q("1169/120");
               }});
  r.push_back({"ecurve", "Euclid pair (2,1) has area 6", [] {
                 auto t = ecurve::euclid_triple(ecurve::PythPair::make(2, 1));
                 return t == ecurve::PythTriple{3, 4, 5} && ecurve::PythPair::make(2, 1).area() == 6;
               }});
  r.push_back({"ecurve", "u^3 + v^3 = 8 at (0,2) gives (12,36) on C_-432", [] {
                 auto raw = ecurve::cubic_to_weierstrass(8, 0, 2);
                 auto p = ecurve::to_reduced_cubic_model(4, raw);
                 return raw.x() == 48 && raw.y() == 288 && p == CurvePoint::affine(CurveId::CN(-432), 12, 36);
               }});
  r.push_back({"ecurve", "torsion of C_1 is Z/6", [] {
                 auto t = ecurve::torsion_subgroup(1);
                 return t.structure == "Z/6" && t.points.size() == 6;
               }});
  r.push_back({"ecurve", "torsion of C_-432 is {O,(12,+-36)}", [] {
                 auto t = ecurve::torsion_subgroup(-432);
                 return t.structure == "Z/3" && contains(t.points, CurvePoint::affine(CurveId::CN(-432), 12, 36)) &&
                        contains(t.points, CurvePoint::affine(CurveId::CN(-432), 12, -36));
               }});
  r.push_back({"ecurve", "torsion of C_-27 is {O,(3,0)}", [] {
                 auto t = ecurve::torsion_subgroup(-27);
                 return t.structure == "Z/2" && contains(t.points, CurvePoint::affine(CurveId::CN(-27), 3, 0));
               }});
  r.push_back({"ecurve", "E_205 search to 300 finds (245,+-2100)", [] {
                 auto pts = ecurve::search_points(CurveId::En(205), 300);
                 return contains(pts, pt(205, "245", "2100")) && contains(pts, pt(205, "245", "-2100"));
               }});
  r.push_back({"ecurve", "E_41 search to 10 finds (-9,+-120)", [] {
                 auto pts = ecurve::search_points(CurveId::En(41), 10);
                 return contains(pts, pt(41, "-9", "120")) && contains(pts, pt(41, "-9", "-120"));
               }});

  r.push_back({"zmap", "z(2) = 41/12 for n = 5", [] { return ecurve::zmap(5, 2) == q("41/12"); }});
  r.push_back({"zmap", "z(8/5) = 1054721/81840 for n = 41", [] {
                 Rational z = ecurve::zmap(41, q("8/5"));
                 return z == q("1054721/81840") && arith::sqrt_exact(z * z - 41) == q("915329/81840") &&
                        arith::sqrt_exact(z * z + 41) == q("1177729/81840");
               }});
  r.push_back({"zmap", "z(t) for n = 157", [] { return ecurve::zmap(157, q(kT157)) == q(kZ157); }});

  r.push_back({"kappa", "kappa(-9,120) = (2,-1) on E_41",
               [] { return descent::kappa(41, pt(41, "-9", "120")) == SelmerElement::make(2, -1); }});
  r.push_back({"kappa", "kappa(245,2100) = (2,5) on E_205",
               [] { return descent::kappa(205, pt(205, "245", "2100")) == SelmerElement::make(2, 5); }});

  r.push_back({"selmer", "Q(S,2) for n = 5", [] {
                 std::vector<Integer> got;
                 for (const auto& c : descent::square_class_group(5)) got.push_back(c.repr());
                 std::sort(got.begin(), got.end());
                 return got == std::vector<Integer>{-10, -5, -2, -1, 1, 2, 5, 10};
               }});
  r.push_back({"selmer", "C_(1,2) has no 2-adic point for n = 5", [] {
                 return !descent::locally_solvable({5, SquareClass::of(1), SquareClass::of(2)}, arith::PadicPlace::prime(2));
               }});
  r.push_back({"selmer", "C_(1,-1) has a 5-adic point for n = 5", [] {
                 return descent::locally_solvable({5, SquareClass::of(1), SquareClass::of(-1)}, arith::PadicPlace::prime(5));
               }});
  r.push_back({"selmer", "C_(-1,1) has no real point", [] {
                 return !descent::locally_solvable({5, SquareClass::of(-1), SquareClass::of(1)}, arith::PadicPlace::infinity());
               }});
  r.push_back({"selmer", "S2(E_13) = (1,+-1)E[2]", [] {
                 auto g = descent::selmer_group(13);
                 return g.dim == 3 && same_set(g.elements, cosets_of(13, {{1, 1}, {1, -1}}));
               }});
  r.push_back({"selmer", "S2(E_41) = (1,+-1)E[2] u (1,+-41)E[2]", [] {
                 auto g = descent::selmer_group(41);
                 return g.dim == 4 && same_set(g.elements, cosets_of(41, {{1, 1}, {1, -1}, {1, 41}, {1, -41}}));
               }});
  r.push_back({"selmer", "S2(E_205) has dimension 5", [] { return descent::selmer_group(205).dim == 5; }});

  r.push_back({"rank", "E_205 with (245,2100): bounds (1,3)", [] {
                 auto b = descent::rank_bounds(205, {pt(205, "245", "2100")});
                 return b.lower == 1 && b.upper == 3;
               }});
  r.push_back({"rank", "E_41 with points to 100: rank 2", [] {
                 auto b = descent::rank_bounds(41, ecurve::search_points(CurveId::En(41), 100));
                 return b.lower >= 1 && b.upper == 2;
               }});
  r.push_back({"criterion", "criterion coset for n = 5", [] {
                 return descent::criterion_coset(5) == std::vector<SelmerElement>{SelmerElement::make(1, -1), SelmerElement::make(2, 5),
                                                                                  SelmerElement::make(5, 1), SelmerElement::make(10, -5)};
               }});
  r.push_back({"criterion", "criterion coset for n = 41", [] {
                 return descent::criterion_coset(41) ==
                        std::vector<SelmerElement>{SelmerElement::make(1, -1), SelmerElement::make(2, 41),
                                                   SelmerElement::make(41, 1), SelmerElement::make(82, -41)};
               }});
  r.push_back({"preimage", "z = 881/120 has no preimage for n = 41",
               [] { return !descent::preimage_exists(41, q("881/120"), pt(41, "-9", "120")); }});
  r.push_back({"preimage", "z = 1054721/81840 has a preimage for n = 41",
               [] { return descent::preimage_exists(41, q("1054721/81840"), ecurve::phi(41, q("8/5"))); }});
  r.push_back({"root_number", "w(E_5) = -1", [] { return descent::root_number(5) == -1; }});
  r.push_back({"root_number", "w(E_41) = +1", [] { return descent::root_number(41) == 1; }});
  r.push_back({"root_number", "w(E_157) = -1", [] { return descent::root_number(157) == -1; }});

  r.push_back({"reflect", "normalize -5 for (3,1)", [] {
                 auto nm = reflect::normalize(-5, {3, 1});
                 return nm.core == -5 && nm.scale == 1 && !nm.negative_even_k;
               }});
  r.push_back({"reflect", "-5 is not (2,2)-reflecting", [] {
                 auto v = reflect::classify_22(-5);
                 return v.status == Status::No && v.obstruction->kind == ObstructionKind::NegativeEvenK;
               }});
  r.push_back({"reflect", "special (2,1) number 2", [] {
                 auto w = reflect::special_reflecting({2, 1}, 1);
                 return w.n == 2 && w.t == 2 && w.u == 0 && w.v == 2 && reflect::verify_witness(w);
               }});
  r.push_back({"reflect", "special (3,1) number 4", [] {
                 auto w = reflect::special_reflecting({3, 1}, 1);
                 return w.n == 4 && w.t == 4 && w.u == 0 && w.v == 2 && reflect::verify_witness(w);
               }});
  r.push_back({"reflect", "1 is (2,1)-reflecting via 25 -+ 24", [] {
                 auto v = reflect::classify_21(1);
                 auto w = v.witness();
                 return v.status == Status::Yes && w && w->t == q("24/25") && w->u == q("1/5") && w->v == q("7/5");
               }});
  r.push_back({"reflect", "3 is (3,1)-reflecting via 22870, 17, 37", [] {
                 auto v = reflect::classify_31(3);
                 auto w = v.witness();
                 return v.status == Status::Yes && w && w->t * 9261 == 22870 && w->u * 21 == 17 && w->v * 21 == 37;
               }});
  r.push_back({"reflect", "1 is not (3,1)-reflecting", [] {
                 auto v = reflect::classify_31(1);
                 return v.status == Status::No && v.obstruction->kind == ObstructionKind::EulerCube;
               }});
  r.push_back({"reflect", "11 is (3,1)-reflecting", [] {
                 auto v = reflect::classify_31(11);
                 return v.status == Status::Yes && v.certificate->kind == reflect::CertificateKind::Satge;
               }});
  r.push_back({"reflect", "search finds t = 2 for n = 5", [] {
                 auto w = reflect::witness_search_22(5, 10);
                 return w && w->t == 2 && w->u == 1 && w->v == 3;
               }});
  r.push_back({"reflect", "search finds t = 8/5 for n = 41", [] {
                 auto w = reflect::witness_search_22(41, 10);
                 return w && w->t == q("8/5") && w->u == q("31/5") && w->v == q("33/5");
               }});
  r.push_back({"reflect", "no witness for n = 6", [] { return !reflect::witness_search_22(6, 200); }});
  r.push_back({"reflect", "(2,1) integer search yields 25 from (1,7)", [] {
                 auto all = reflect::general_witness_search({2, 1}, 7);
                 return std::any_of(all.begin(), all.end(), [](const reflect::WitnessT& w) {
                   return w.n == 25 && w.u == 1 && w.v == 7 && w.t == 24;
                 });
               }});
  r.push_back({"reflect", "(3,1) integer search yields 27783 from (17,37)", [] {
                 auto all = reflect::general_witness_search({3, 1}, 37);
                 return std::any_of(all.begin(), all.end(), [](const reflect::WitnessT& w) {
                   return w.n == 27783 && w.u == 17 && w.v == 37 && w.t == 22870 && w.n == 3 * 21 * 21 * 21;
                 });
               }});
  r.push_back({"reflect", "(2,2) integer search yields 5 from (1,3)", [] {
                 auto all = reflect::general_witness_search({2, 2}, 3);
                 return std::any_of(all.begin(), all.end(), [](const reflect::WitnessT& w) {
                   return w.n == 5 && w.u == 1 && w.v == 3 && w.t == 2;
                 });
               }});
  r.push_back({"reflect", "t for n = 157 verifies", [] {
                 Rational t = q(kT157);
                 auto u = arith::sqrt_exact(157 - t * t), v = arith::sqrt_exact(157 + t * t);
                 return u && v && reflect::verify_witness({157, {2, 2}, t, *u, *v});
               }});
  r.push_back({"reflect", "t = 2 for n = 5 verifies", [] { return reflect::verify_witness({5, {2, 2}, 2, 1, 3}); }});

  r.push_back({"classify", "5 is reflecting congruent with t = 2", [] {
                 auto v = reflect::classify_22(5);
                 return v.status == Status::Yes && v.witness() && v.witness()->t == 2;
               }});
  r.push_back({"classify", "205 excluded by kappa image of (245,2100)", [] {
                 reflect::ClassifyOptions o;
                 o.generators = {{245, 2100}};
                 o.assert_rank = 1;
                 auto v = reflect::classify_22(205, o);
                 return v.status == Status::No && v.obstruction->kind == ObstructionKind::KappaImageExcludes &&
                        v.obstruction->conditional && same_set(v.obstruction->kappa_image, cosets_of(205, {{1, 1}, {1, -41}}));
               }});
  r.push_back({"classify", "5735 has prime divisor 31", [] {
                 auto v = reflect::classify_22(5735);
                 return v.status == Status::No && v.obstruction->kind == ObstructionKind::PrimeDivisor3Mod4 && v.obstruction->prime == 31;
               }});
  r.push_back({"gcd3", "7 of type (3,3)", [] {
                 auto v = reflect::classify_gcd3(7, {3, 3});
                 return v.status == Status::No && v.obstruction->rule == ObstructionKind::EulerCube;
               }});
  r.push_back({"gcd3", "7 of type (4,4)", [] {
                 auto v = reflect::classify_gcd3(7, {4, 4});
                 return v.status == Status::No && v.obstruction->rule == ObstructionKind::EulerQuartic;
               }});
  r.push_back({"gcd3", "7 of type (6,9)", [] {
                 auto v = reflect::classify_gcd3(7, {6, 9});
                 return v.status == Status::No && v.obstruction->rule == ObstructionKind::EulerCube;
               }});
  return r;
}

/// Runs the rows whose group contains `filter`, printing one line each;
/// returns the number of failures.
inline int run(std::vector<Row> table, std::ostream& out, const std::string& filter = "") {
  int failed = 0, ran = 0;
  for (const auto& row : table) {
    if (!filter.empty() && row.group.find(filter) == std::string::npos) continue;
    ++ran;
    bool ok = false;
    std::string why;
    try {
      ok = row.check();
    } catch (const std::exception& e) {
      why = std::string("  (") + e.what() + ")";
    }
    if (!ok) ++failed;
    out << (ok ? "PASS  " : "FAIL  ") << row.group << ": " << row.name << why << '\n';
  }
  out << ran - failed << "/" << ran << " passed\n";
  return failed;
}

}  // namespace reflectum::paper_check
