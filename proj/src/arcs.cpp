#include "nodalarcs/arcs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nodalarcs::arcs {

GuaranteeFlags guarantee_flags(u64 q, u64 m) {
  GuaranteeFlags f;
  u128 m2 = u128(m) * m;
  u128 m4 = m2 * m2;
  f.complete_arc_bound = 36 * m4 <= q;
  f.complete_cap_bound = 256 * m4 <= q;
  auto holds = [&](u128 c, u128 rhs) {
    if (u128(q) + 1 < rhs) return false;
    u128 lhs = u128(q) + 1 - rhs;
    return lhs * lhs >= c * c * q;
  };
  u128 c_small = 6 * m2 - 6 * m + 2;
  f.secant_bound = holds(c_small, 4 * m2 + 8 * m + 1);
  f.punctured_secant_bound = holds(c_small, 8 * m2 + 8 * m + 1);
  f.bicovering_bound = holds(16 * m2 - 8 * m + 2, 16 * m2 + 24 * m + 1);
  return f;
}

namespace {

void validate_m(const Fq2& E, u64 m, bool need_coprime_index) {
  u64 n = E.q() + 1;
  if (m < 2 || n % m != 0) fail("InvalidParams", "m must be a divisor of q+1 greater than 1");
  if (m == n) fail("InvalidParams", "m must be a proper divisor of q+1");
  if (std::gcd(m, u64{6}) != 1) fail("InvalidParams", "(m,6) must be 1");
  if (need_coprime_index && std::gcd(m, n / m) != 1)
    fail("InvalidParams", "(m,(q+1)/m) must be 1");
}

PlanePoint plane_of(const cubic::Point& P) {
  if (!P.is_affine()) fail("InternalAssertionFailure", "expected an affine curve point");
  return {P.x, P.y};
}

std::vector<PlanePoint> sorted_union(const std::vector<PlanePoint>& a,
                                     const std::vector<PlanePoint>& b) {
  std::set<PlanePoint> s(a.begin(), a.end());
  for (const auto& pt : b) {
    if (s.count(pt)) fail("InternalAssertionFailure", "curve and exceptional points overlap");
    s.insert(pt);
  }
  return {s.begin(), s.end()};
}

void assert_arc(const Fq& F, const std::vector<PlanePoint>& pts, const char* what) {
  if (!geom::is_arc(F, pts).ok)
    fail("InternalAssertionFailure", std::string(what) + " is not an arc");
}

}  // namespace

ArcArtifact build_complete_arc(const Fq2& E, u64 m) {
  const Fq& F = E.base();
  validate_m(E, m, /*need_coprime_index=*/true);
  u64 n = F.q() + 1;
  u64 nK = n / m;                     // order of K, the index-m subgroup
  if (nK <= 3 || m <= 3) fail("OrderTooSmall", "both factor orders must exceed 3");

  // G = K x H on exponents: (i1, i2) -> g^(m i1 + nK i2)
  indep::AbelianGroup Gi{{nK, m}};
  indep::IndepSet A = indep::build_two_block_3indep(Gi, {1, 0}, {0, 1});

  Curve X(E);
  Ext g = E.mu_generator();
  ArcArtifact out;
  out.construction = "arc";
  out.m = m;
  for (const auto& e : A.members) {
    u64 expo = (e[0] * m + e[1] * nK) % n;
    out.member_exponents.push_back(expo);
    out.curve_points.push_back(plane_of(X.from_param(E.pow(g, expo))));
  }
  std::sort(out.member_exponents.begin(), out.member_exponents.end());
  std::sort(out.curve_points.begin(), out.curve_points.end());
  out.exceptional = geom::exceptional_set(F, E.beta_sq());
  out.points = sorted_union(out.curve_points, out.exceptional);
  assert_arc(F, out.points, "complete-arc candidate");
  out.flags = guarantee_flags(F.q(), m);
  return out;
}

ArcArtifact build_almost_bicovering(const Fq2& E, u64 m, std::optional<u64> m1,
                                    std::optional<u64> m2) {
  const Fq& F = E.base();
  validate_m(E, m, /*need_coprime_index=*/false);
  u64 n = F.q() + 1;

  // cosets of Q1 and Q2 are excluded in the three-point exceptional case
  std::vector<u64> forbidden_labels;
  if (F.s() % 2 == 1 && F.p() % 3 == 2) {
    auto [Q1, Q2] = find_exceptional_collinear_points(E);
    Curve X(E);
    Ext g = E.mu_generator();
    for (const cubic::Point& Q : {Q1, Q2}) {
      Ext v = X.to_param(Q);
      // exponent of v in the mu generator
      Ext acc = E.one();
      u64 expo = 0;
      while (acc != v) {
        acc = E.mul(acc, g);
        if (++expo > n) fail("InternalAssertionFailure", "parameter outside mu");
      }
      forbidden_labels.push_back(expo % m);
    }
  }

  std::vector<u64> labels;
  if (m1 || m2) {
    if (!m1 || !m2 || *m1 * *m2 != m) fail("InvalidParams", "need m = m1*m2");
    if (std::gcd(*m1, *m2) != 1) fail("InvalidParams", "(m1,m2) must be 1");
    std::vector<indep::AbelianGroup::Elem> forbidden;
    for (u64 c : forbidden_labels) forbidden.push_back({c % *m1, c % *m2});
    indep::IndepSet M = indep::build_product_3indep(*m1, *m2, forbidden);
    for (const auto& e : M.members) labels.push_back(crt_pair(e[0], *m1, e[1], *m2));
  } else {
    std::vector<indep::AbelianGroup::Elem> forbidden;
    for (u64 c : forbidden_labels) forbidden.push_back({c});
    indep::IndepSet M = indep::smallest_maximal_3indep(indep::AbelianGroup{{m}}, forbidden);
    for (const auto& e : M.members) labels.push_back(e[0]);
  }
  std::sort(labels.begin(), labels.end());

  Curve X(E);
  Ext g = E.mu_generator();
  ArcArtifact out;
  out.construction = "bicovering";
  out.m = m;
  out.m1 = m1;
  out.m2 = m2;
  out.coset_labels = labels;
  std::set<u64> label_set(labels.begin(), labels.end());
  Ext v = E.one();
  for (u64 j = 0; j < n; ++j) {
    if (label_set.count(j % m)) {
      out.member_exponents.push_back(j);
      out.curve_points.push_back(plane_of(X.from_param(v)));
    }
    v = E.mul(v, g);
  }
  std::sort(out.curve_points.begin(), out.curve_points.end());
  out.tbar = E.pow(g, labels.front());

  // the union of the selected cosets must be maximal 3-independent in G
  if (n <= 10000) {
    indep::AbelianGroup G{{n}};
    std::vector<indep::AbelianGroup::Elem> members;
    for (u64 e : out.member_exponents) members.push_back({e});
    if (!indep::is_maximal_3indep(G, members).maximal)
      fail("InternalAssertionFailure", "coset union is not maximal 3-independent");
  }

  out.exceptional = geom::exceptional_set(F, E.beta_sq());
  out.points = sorted_union(out.curve_points, out.exceptional);
  assert_arc(F, out.points, "bicovering arc");
  out.center = plane_of(X.from_param(E.neg(E.one())));  // P0 = (0, -1/beta^2)
  out.flags = guarantee_flags(F.q(), m);
  return out;
}

std::pair<cubic::Point, cubic::Point> find_exceptional_collinear_points(const Fq2& E) {
  const Fq& F = E.base();
  if (!(F.s() % 2 == 1 && F.p() % 3 == 2))
    fail("InvalidParams", "needs the three-point exceptional case (s odd, p = 2 mod 3)");
  auto exc = geom::exceptional_set(F, E.beta_sq());
  // e0 = (0, -9/(8 beta^2)); the companion is (r, 0) with r = sqrt(-3 beta^2)
  PlanePoint e0{F.zero(), F.div(F.from_int(-9), F.mul(F.from_int(8), E.beta_sq()))};
  Fel r = F.sqrt(F.mul(F.from_int(-3), E.beta_sq()));
  PlanePoint ep{r, F.zero()}, em{F.neg(r), F.zero()};
  (void)exc;

  Curve X(E);
  auto unique_collinear = [&](const PlanePoint& e2) {
    std::optional<cubic::Point> found;
    for (const Ext& v : X.group_params()) {
      cubic::Point P = X.from_param(v);
      if (!P.is_affine()) continue;  // lines through Xinf are horizontal, e0e2 is not
      if (geom::collinear3(F, {P.x, P.y}, e0, e2)) {
        if (found) fail("InternalAssertionFailure", "collinear point in G is not unique");
        found = P;
      }
    }
    if (!found) fail("InternalAssertionFailure", "no point of G collinear with the pair");
    return *found;
  };
  return {unique_collinear(ep), unique_collinear(em)};
}

}  // namespace nodalarcs::arcs
