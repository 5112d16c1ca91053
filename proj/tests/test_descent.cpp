#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reflectum/descent.hpp"

using namespace reflectum;
using namespace reflectum::descent;
using arith::PadicPlace;
using ecurve::CurveId;
using ecurve::CurvePoint;

namespace reflectum::descent {
void PrintTo(const SelmerElement& e, std::ostream* os) { *os << e.to_string(); }
}  // namespace reflectum::descent

namespace {

CurvePoint pt(long n, const char* x, const char* y) {
  return CurvePoint::affine(CurveId::En(n), parse_rational(x), parse_rational(y));
}

std::vector<SelmerElement> with_torsion(long n, std::vector<std::pair<long, long>> reps) {
  std::vector<SelmerElement> out;
  for (auto [a, b] : reps)
    for (const auto& t : two_torsion_image(n)) out.push_back(SelmerElement::make(a, b) * t);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> squarefree_upto(long limit) {
  std::vector<long> out;
  for (long n = 1; n < limit; ++n)
    if (oracle::squarefree(n)) out.push_back(n);
  return out;
}

}  // namespace

TEST(SquareClasses, Representatives) {
  EXPECT_EQ(SquareClass::of(12).repr(), 3);
  EXPECT_EQ(SquareClass::of(parse_rational("-8/3")).repr(), -6);
  EXPECT_EQ((SquareClass::of(6) * SquareClass::of(10)).repr(), 15);
  EXPECT_EQ(SquareClass::of(parse_rational("245/49"), {5, 41}).repr(), 5);
  EXPECT_THROW(SquareClass::of(21, {5, 41}), Error);
  EXPECT_THROW(SquareClass::of(0), Error);
}

TEST(SquareClasses, GroupForFive) {
  std::vector<Integer> got;
  for (const auto& c : square_class_group(5)) got.push_back(c.repr());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<Integer>{-10, -5, -2, -1, 1, 2, 5, 10}));
  EXPECT_EQ(square_class_group(205).size(), 16u);
  EXPECT_THROW(SquareClassBasis(12), Error);
}

TEST(SquareClasses, BasisMasks) {
  SquareClassBasis b(205);
  for (std::uint64_t m = 0; m < (1u << b.size()); ++m) EXPECT_EQ(b.mask_of(b.element(m)), m);
  for (std::uint64_t m = 0; m < (1u << (2 * b.size())); ++m) EXPECT_EQ(b.mask_of(b.element_pair(m)), m);
}

TEST(Kappa, KnownValues) {
  EXPECT_EQ(kappa(41, pt(41, "-9", "120")), SelmerElement::make(2, -1));
  EXPECT_EQ(kappa(205, pt(205, "245", "2100")), SelmerElement::make(2, 5));
  EXPECT_EQ(kappa(5, CurvePoint::infinity(CurveId::En(5))), SelmerElement::make(1, 1));
  EXPECT_THROW(kappa(5, pt(41, "-9", "120")), Error);
}

TEST(Kappa, TorsionImage) {
  for (long n : {5L, 6L, 41L, 205L}) {
    std::vector<SelmerElement> got;
    for (const auto& t : ecurve::two_torsion(n)) got.push_back(kappa(n, t));
    EXPECT_EQ(got, two_torsion_image(n)) << n;
  }
  EXPECT_EQ(two_torsion_image(5), (std::vector<SelmerElement>{SelmerElement::make(1, 1), SelmerElement::make(2, -5),
                                                              SelmerElement::make(5, -1), SelmerElement::make(10, 5)}));
}

TEST(Kappa, Homomorphism) {
  int cases = 0;
  for (long n : {5L, 6L, 7L, 14L, 15L, 41L, 65L, 157L, 205L}) {
    auto pts = ecurve::search_points(CurveId::En(n), 120);
    for (const auto& p : pts) {
      EXPECT_EQ(kappa(n, ecurve::multiply(2, p)), SelmerElement::make(1, 1));
      for (const auto& q : pts) {
        EXPECT_EQ(kappa(n, ecurve::add(p, q)), kappa(n, p) * kappa(n, q));
        ++cases;
      }
    }
  }
  EXPECT_GE(cases, 100);
}

TEST(LocalSolvability, Infinity) {
  EXPECT_FALSE(locally_solvable({5, SquareClass::of(-1), SquareClass::of(1)}, PadicPlace::infinity()));
  EXPECT_TRUE(locally_solvable({5, SquareClass::of(2), SquareClass::of(-1)}, PadicPlace::infinity()));
}

TEST(LocalSolvability, KnownCases) {
  EXPECT_FALSE(locally_solvable({5, SquareClass::of(1), SquareClass::of(2)}, PadicPlace::prime(2)));
  EXPECT_TRUE(locally_solvable({5, SquareClass::of(1), SquareClass::of(-1)}, PadicPlace::prime(5)));
}

TEST(LocalSolvability, ConicMatchesHilbertOracle) {
  for (long p : {2L, 3L, 5L, 7L})
    for (long a = -15; a <= 15; ++a)
      for (long b = -15; b <= 15; ++b) {
        if (!oracle::squarefree(a) || !oracle::squarefree(b)) continue;
        bool lifted = has_nontrivial_zero({{a, b, -1}}, p);
        EXPECT_EQ(lifted, oracle::hilbert(a, b, p) == 1) << a << "," << b << " at " << p;
      }
}

TEST(LocalSolvability, TwoAdicMatchesCongruenceOracle) {
  for (long n : {1L, 5L, 13L, 41L, 3L}) {
    SquareClassBasis b(n);
    for (const auto& m1 : square_class_group(n))
      for (const auto& m2 : square_class_group(n)) {
        bool lib = locally_solvable({n, m1, m2}, PadicPlace::prime(2));
        bool brute = oracle::descent_system_solvable_mod_2(n, m1.repr().get_si(), m2.repr().get_si(), 6);
        EXPECT_EQ(lib, brute) << "n=" << n << " (" << m1.to_string() << "," << m2.to_string() << ")";
      }
  }
}

TEST(LocalSolvability, OddClosedFormMatchesLifting) {
  for (auto [n, p] : std::vector<std::pair<long, long>>{
           {5, 3}, {5, 5}, {5, 7}, {13, 11}, {6, 3}, {15, 3}, {21, 3}, {39, 3}, {30, 3}}) {
    for (const auto& m1 : square_class_group(n))
      for (const auto& m2 : square_class_group(n)) {
        HomogeneousSpace h{n, m1, m2};
        EXPECT_EQ(locally_solvable(h, PadicPlace::prime(p)), has_nontrivial_zero(h.quadrics(), p))
            << "n=" << n << " p=" << p << " (" << m1.to_string() << "," << m2.to_string() << ")";
      }
  }
}

TEST(Selmer, KnownGroups) {
  auto s13 = selmer_group(13);
  EXPECT_EQ(s13.dim, 3);
  EXPECT_EQ(s13.elements, with_torsion(13, {{1, 1}, {1, -1}}));
  auto s41 = selmer_group(41);
  EXPECT_EQ(s41.dim, 4);
  EXPECT_EQ(s41.elements, with_torsion(41, {{1, 1}, {1, -1}, {1, 41}, {1, -41}}));
  EXPECT_EQ(selmer_group(205).dim, 5);
  EXPECT_EQ(selmer_group(1).dim, 2);
  EXPECT_THROW(selmer_group(12), Error);
  EXPECT_EQ(s41.cosets().size(), 4u);
}

TEST(Selmer, PrimeLemmaSmallSweep) {
  for (long p = 3; p < 300; ++p) {
    if (!oracle::is_prime(p) || p % 4 != 1) continue;
    auto s = selmer_group(p);
    if (p % 8 == 5) EXPECT_EQ(s.elements, with_torsion(p, {{1, 1}, {1, -1}})) << p;
    else EXPECT_EQ(s.elements, with_torsion(p, {{1, 1}, {1, -1}, {1, p}, {1, -p}})) << p;
  }
}

TEST(Selmer, ParityMatchesRootNumber) {
  for (long n : squarefree_upto(400)) {
    auto s = selmer_group(n);
    EXPECT_EQ((s.dim - 2) % 2 == 0 ? 1 : -1, root_number(n)) << n;
  }
}

TEST(Selmer, GlobalPointsAreLocal) {
  for (long n : {5L, 6L, 7L, 14L, 15L, 21L, 30L, 34L, 41L, 65L, 205L}) {
    auto s = selmer_group(n);
    for (const auto& p : ecurve::search_points(CurveId::En(n), 200)) EXPECT_TRUE(s.contains(kappa(n, p))) << n;
  }
}

TEST(RankBounds, WorkedExamples) {
  auto b205 = rank_bounds(205, {pt(205, "245", "2100")});
  EXPECT_EQ(b205.lower, 1);
  EXPECT_EQ(b205.upper, 3);
  auto b41 = rank_bounds(41, ecurve::search_points(CurveId::En(41), 100));
  EXPECT_EQ(b41.lower, 2);
  EXPECT_EQ(b41.upper, 2);
  EXPECT_EQ(rank_bounds(1, {}).upper, 0);
  auto span = kappa_span(205, {pt(205, "245", "2100")});
  EXPECT_EQ(span, with_torsion(205, {{1, 1}, {2, 5}}));
}

TEST(Criterion, CosetAndPreimage) {
  EXPECT_EQ(criterion_coset(5), (std::vector<SelmerElement>{SelmerElement::make(1, -1), SelmerElement::make(2, 5),
                                                           SelmerElement::make(5, 1), SelmerElement::make(10, -5)}));
  for (const auto& e : criterion_coset(41)) EXPECT_TRUE(meets_criterion_coset(41, e));
  EXPECT_FALSE(meets_criterion_coset(41, SelmerElement::make(2, -1)));
  EXPECT_FALSE(preimage_exists(41, parse_rational("881/120"), pt(41, "-9", "120")));
  EXPECT_TRUE(preimage_exists(41, parse_rational("1054721/81840"), ecurve::phi(41, parse_rational("8/5"))));
  EXPECT_THROW(preimage_exists(41, parse_rational("881/120"), pt(41, "-64/25", "8184/125")), Error);
}

TEST(RootNumber, ResidueClasses) {
  EXPECT_EQ(root_number(5), -1);
  EXPECT_EQ(root_number(41), 1);
  EXPECT_EQ(root_number(157), -1);
  for (long n : squarefree_upto(200)) {
    long r = n % 8;
    EXPECT_EQ(root_number(n), (r == 1 || r == 2 || r == 3) ? 1 : -1) << n;
  }
}
