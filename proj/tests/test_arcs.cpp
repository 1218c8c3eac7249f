#include <doctest.h>

#include <set>

#include "nodalarcs/arcs.hpp"

using namespace nodalarcs;
using namespace nodalarcs::arcs;

TEST_CASE("guarantee flags are exact integer comparisons") {
  // 36 * 5^4 = 22500: the first admissible q for m = 5
  GuaranteeFlags f = guarantee_flags(19, 5);
  CHECK_FALSE(f.complete_arc_bound);
  CHECK_FALSE(f.punctured_secant_bound);
  CHECK_FALSE(f.bicovering_bound);
  f = guarantee_flags(22500, 5);
  CHECK(f.complete_arc_bound);
  CHECK_FALSE(guarantee_flags(22499, 5).complete_arc_bound);
  // 256 * 35^4 >> 139
  CHECK_FALSE(guarantee_flags(139, 35).complete_cap_bound);
  // punctured_secant_bound at m=5: q+1-(122)sqrt(q) >= 241; q = 22500: 22501 - 18300 = 4201 >= 241
  CHECK(guarantee_flags(22500, 5).punctured_secant_bound);
}

TEST_CASE("guarantee flags are monotone in q") {
  for (u64 m : {5ull, 7ull, 35ull}) {
    GuaranteeFlags prev{};
    for (u64 q = 5; q < 2000000; q = q * 9 / 8 + 1) {
      GuaranteeFlags f = guarantee_flags(q, m);
      CHECK((!prev.complete_arc_bound || f.complete_arc_bound));
      CHECK((!prev.secant_bound || f.secant_bound));
      CHECK((!prev.punctured_secant_bound || f.punctured_secant_bound));
      CHECK((!prev.bicovering_bound || f.bicovering_bound));
      CHECK((!prev.complete_cap_bound || f.complete_cap_bound));
      prev = f;
    }
  }
}

TEST_CASE("complete-arc candidate at q=19, m=5") {
  gf::Fq F(19);
  gf::Fq2 E(F);
  ArcArtifact arc = build_complete_arc(E, 5);
  // certified two-block set has m + (q+1)/m - 3 = 6 elements, one
  // exceptional point joins for a total of 7 = m + (q+1)/m - 2
  CHECK(arc.curve_points.size() == 6);
  CHECK(arc.exceptional.size() == 1);
  CHECK(arc.points.size() == 7);
  CHECK(geom::is_arc(F, arc.points).ok);
  CHECK_FALSE(arc.flags.complete_arc_bound);
  // member exponents map back into the curve group
  CHECK(arc.member_exponents.size() == 6);
  for (u64 e : arc.member_exponents) CHECK(e < 20);
}

TEST_CASE("complete_arc rejects bad parameters") {
  {
    gf::Fq F(13);
    gf::Fq2 E(F);
    // (q+1)/m = 2 <= 3
    CHECK_THROWS_WITH_AS(build_complete_arc(E, 7), doctest::Contains("factor orders"), Error);
  }
  {
    gf::Fq F(19);
    gf::Fq2 E(F);
    CHECK_THROWS_AS(build_complete_arc(E, 4), Error);   // (m,6) != 1
    CHECK_THROWS_AS(build_complete_arc(E, 3), Error);   // 3 | m
    CHECK_THROWS_AS(build_complete_arc(E, 11), Error);  // m does not divide q+1
  }
  {
    // (m, (q+1)/m) != 1: q = 24 is not a prime power, use q = 49, m = 5
    gf::Fq F(7, 2);
    gf::Fq2 E(F);
    CHECK_THROWS_WITH_AS(build_complete_arc(E, 5), doctest::Contains("(m,(q+1)/m)"), Error);
  }
}

TEST_CASE("almost bicovering arc at q=19, m=5") {
  gf::Fq F(19);
  gf::Fq2 E(F);
  ArcArtifact arc = build_almost_bicovering(E, 5, std::nullopt, std::nullopt);
  // Z_5 has maximal 3-independent sets of size 2 only
  CHECK(arc.coset_labels.size() == 2);
  CHECK(arc.curve_points.size() == 2 * 4);
  CHECK(arc.points.size() == 9);
  CHECK(geom::is_arc(F, arc.points).ok);
  REQUIRE(arc.center.has_value());
  // P0 = (0, -1/beta^2) = (0, -inv(2)) = (0, 9) at q = 19
  CHECK(arc.center->x == F.zero());
  CHECK(arc.center->y == F.from_int(9));
  // the multiset of coset labels of the curve part equals M exactly
  std::set<u64> labels(arc.coset_labels.begin(), arc.coset_labels.end());
  for (u64 e : arc.member_exponents) CHECK(labels.count(e % 5) == 1);
  CHECK(arc.member_exponents.size() == labels.size() * 4);
}

TEST_CASE("bicovering with product factorization at q=139") {
  gf::Fq F(139);
  gf::Fq2 E(F);
  ArcArtifact arc = build_almost_bicovering(E, 35, 5, 7);
  CHECK(arc.coset_labels.size() == 9);  // m1 + m2 - 3
  CHECK(arc.curve_points.size() == 9 * 4);
  CHECK(arc.exceptional.size() == 1);   // 139 = 1 mod 3
  CHECK(arc.points.size() == 37);
  CHECK(geom::is_arc(F, arc.points).ok);
  CHECK_FALSE(arc.flags.bicovering_bound);
  for (u64 c : arc.coset_labels) CHECK(c != 0);
}

TEST_CASE("find_exceptional_collinear_points in the three-point case") {
  for (u64 p : {5ull, 17ull}) {
    gf::Fq F(p);
    gf::Fq2 E(F);
    auto [Q1, Q2] = find_exceptional_collinear_points(E);
    CHECK(Q1.is_affine());
    CHECK(Q2.is_affine());
    auto exc = geom::exceptional_set(F, E.beta_sq());
    REQUIRE(exc.size() == 3);
  }
  gf::Fq F(19);
  gf::Fq2 E(F);
  CHECK_THROWS_AS(find_exceptional_collinear_points(E), Error);
}

TEST_CASE("bicovering in the three-point case avoids the Q1,Q2 cosets") {
  // q = 29: q+1 = 30, proper divisors coprime to 6: m = 5; 29 = 2 mod 3
  gf::Fq F(29);
  gf::Fq2 E(F);
  auto [Q1, Q2] = find_exceptional_collinear_points(E);
  cubic::Curve X(E);
  gf::Ext g = E.mu_generator();
  auto expo_of = [&](const cubic::Point& P) {
    gf::Ext v = X.to_param(P);
    gf::Ext acc = E.one();
    for (u64 j = 0; j <= 30; ++j) {
      if (acc == v) return j;
      acc = E.mul(acc, g);
    }
    REQUIRE(false);
    return u64{0};
  };
  u64 c1 = expo_of(Q1) % 5, c2 = expo_of(Q2) % 5;
  try {
    ArcArtifact arc = build_almost_bicovering(E, 5, std::nullopt, std::nullopt);
    CHECK(arc.exceptional.size() == 3);
    for (u64 c : arc.coset_labels) {
      CHECK(c != c1);
      CHECK(c != c2);
    }
    CHECK(geom::is_arc(F, arc.points).ok);
  } catch (const Error& e) {
    // acceptable outcome: no maximal 3-independent set of Z_5 avoids both
    CHECK(std::string(e.code()) == "NotFound");
  }
}
