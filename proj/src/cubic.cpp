#include "nodalarcs/cubic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nodalarcs::cubic {

namespace {
bool proportional(const Fq& F, const Fel* A, const Fel* B) {
  return F.sub(F.mul(A[0], B[1]), F.mul(A[1], B[0])).v == 0 &&
         F.sub(F.mul(A[0], B[2]), F.mul(A[2], B[0])).v == 0 &&
         F.sub(F.mul(A[1], B[2]), F.mul(A[2], B[1])).v == 0;
}
}  // namespace

Curve::Curve(const Fq2& ext) : F_(&ext.base()), E_(&ext), n_(ext.beta_sq()) {}

bool Curve::on_curve(const Point& P) const {
  if (!P.is_affine()) return true;
  // y (x^2 - beta^2) = 1
  Fel lhs = F_->mul(P.y, F_->sub(F_->mul(P.x, P.x), n_));
  return lhs == F_->one();
}

Point Curve::from_param(Ext v) const {
  if (!E_->in_mu(v)) fail("NotInMu", "parameter is not in mu_{q+1}");
  if (v == E_->one()) return Point::xinf();
  // For v = a + b*beta of norm 1:
  //   x = beta (v+1)/(v-1) = -2 b beta^2 / N(v-1)
  //   y = (v-1)^2 / (4 v beta^2),  with (v-1)^2/v = v + v^{-1} - 2 = 2a - 2
  const Fq& F = *F_;
  Fel a = v.c0, b = v.c1;
  Fel nv1 = E_->norm(E_->sub(v, E_->one()));
  Fel x = F.div(F.neg(F.mul(F.from_int(2), F.mul(b, n_))), nv1);
  Fel y = F.div(F.sub(F.mul(F.from_int(2), a), F.from_int(2)),
                F.mul(F.from_int(4), n_));
  Point P = Point::affine(x, y);
  if (!on_curve(P)) fail("InternalAssertionFailure", "from_param left the curve");
  return P;
}

Ext Curve::to_param(const Point& P) const {
  if (P.kind == PointKind::Yinf) fail("SingularPoint", "Yinf has no group parameter");
  if (P.kind == PointKind::Xinf) return E_->one();
  if (!on_curve(P)) fail("InvalidParams", "point is not on the cubic");
  // (x+beta)/(x-beta) = ((x^2+n) + 2x beta) / (x^2 - n)
  const Fq& F = *F_;
  Fel x2 = F.mul(P.x, P.x);
  Fel d = F.inv(F.sub(x2, n_));
  return E_->make(F.mul(F.add(x2, n_), d), F.mul(F.add(P.x, P.x), d));
}

Fel Curve::eval_cubic(const Proj& P) const {
  // X^2 Y - beta^2 Y Z^2 - Z^3
  const Fq& F = *F_;
  Fel z2 = F.mul(P.Z, P.Z);
  Fel t = F.mul(F.mul(P.X, P.X), P.Y);
  t = F.sub(t, F.mul(n_, F.mul(P.Y, z2)));
  return F.sub(t, F.mul(z2, P.Z));
}

// Third intersection of the line PQ (tangent line at P when tangent=true)
// with the cubic: C(mu P + la Q) factors as mu la (c1 mu + c2 la), resp.
// la^2 (c2 mu + c3 la) in the tangent case, since the known intersections
// are roots.
Curve::Proj Curve::third_intersection(const Proj& P, const Proj& Q, bool tangent) const {
  const Fq& F = *F_;
  auto comb = [&](Fel a, const Proj& U, Fel b, const Proj& V) {
    return Proj{F.add(F.mul(a, U.X), F.mul(b, V.X)),
                F.add(F.mul(a, U.Y), F.mul(b, V.Y)),
                F.add(F.mul(a, U.Z), F.mul(b, V.Z))};
  };
  if (!tangent) {
    Fel s = eval_cubic(comb(F.one(), P, F.one(), Q));         // c1 + c2
    Fel d = eval_cubic(comb(F.one(), P, F.neg(F.one()), Q));  // -c1 + c2
    Fel two_inv = F.inv(F.from_int(2));
    Fel c1 = F.mul(F.sub(s, d), two_inv);
    Fel c2 = F.mul(F.add(s, d), two_inv);
    if (c1.v == 0 && c2.v == 0)
      fail("InternalAssertionFailure", "line contained in the cubic");
    return comb(c2, P, F.neg(c1), Q);
  }
  // gradient (2XY, X^2 - n Z^2, -2n Y Z - 3 Z^2)
  Fel l0 = F.mul(F.from_int(2), F.mul(P.X, P.Y));
  Fel l1 = F.sub(F.mul(P.X, P.X), F.mul(n_, F.mul(P.Z, P.Z)));
  Fel l2 = F.neg(F.add(F.mul(F.from_int(2), F.mul(n_, F.mul(P.Y, P.Z))),
                       F.mul(F.from_int(3), F.mul(P.Z, P.Z))));
  if (l0.v == 0 && l1.v == 0 && l2.v == 0)
    fail("SingularPoint", "tangent undefined at a singular point");
  Fel Pv[3] = {P.X, P.Y, P.Z};
  Proj T0{};
  bool found = false;
  const Proj cands[3] = {{F.zero(), l2, F.neg(l1)},
                         {l2, F.zero(), F.neg(l0)},
                         {l1, F.neg(l0), F.zero()}};
  for (const Proj& cand : cands) {
    if (cand.X.v == 0 && cand.Y.v == 0 && cand.Z.v == 0) continue;
    Fel Cv[3] = {cand.X, cand.Y, cand.Z};
    if (proportional(F, Cv, Pv)) continue;
    T0 = cand;
    found = true;
    break;
  }
  if (!found) fail("InternalAssertionFailure", "no second point on tangent line");
  Fel c3 = eval_cubic(T0);
  Fel c2 = F.sub(eval_cubic(comb(F.one(), P, F.one(), T0)), c3);
  if (c2.v == 0) return P;  // triple contact: inflection
  return comb(F.neg(c3), P, c2, T0);
}

Point Curve::normalize(const Proj& P) const {
  const Fq& F = *F_;
  if (P.Z.v != 0) {
    Fel zi = F.inv(P.Z);
    return Point::affine(F.mul(P.X, zi), F.mul(P.Y, zi));
  }
  if (P.X.v != 0) return Point::xinf();
  if (P.Y.v != 0) return Point::yinf();
  fail("InternalAssertionFailure", "zero projective vector");
}

Point Curve::add_geometric(const Point& P, const Point& Q) const {
  if (P.kind == PointKind::Yinf || Q.kind == PointKind::Yinf)
    fail("SingularPoint", "chord-tangent sum needs non-singular points");
  if (!on_curve(P) || !on_curve(Q)) fail("InvalidParams", "point is not on the cubic");
  const Fq& F = *F_;
  auto proj = [&](const Point& A) {
    if (A.kind == PointKind::Xinf) return Proj{F.one(), F.zero(), F.zero()};
    return Proj{A.x, A.y, F.one()};
  };
  Proj p = proj(P), q = proj(Q);
  Proj r = third_intersection(p, q, P == Q);
  Proj xinf{F.one(), F.zero(), F.zero()};
  Fel Rv[3] = {r.X, r.Y, r.Z};
  Fel Iv[3] = {xinf.X, xinf.Y, xinf.Z};
  Proj s = third_intersection(xinf, r, proportional(F, Iv, Rv));
  Point out = normalize(s);
  if (out.kind == PointKind::Yinf)
    fail("InternalAssertionFailure", "sum of non-singular points hit Yinf");
  return out;
}

std::vector<Ext> Curve::group_params() const {
  std::vector<Ext> out;
  out.reserve(F_->q() + 1);
  Ext g = E_->mu_generator();
  Ext v = E_->one();
  for (u64 j = 0; j <= F_->q(); ++j) {
    out.push_back(v);
    v = E_->mul(v, g);
  }
  return out;
}

std::vector<Ext> Curve::subgroup_params(u64 m) const {
  u64 order = F_->q() + 1;
  if (m == 0 || order % m != 0) fail("InvalidParams", "m must divide q+1");
  Ext gm = E_->pow(E_->mu_generator(), m);
  std::vector<Ext> out;
  out.reserve(order / m);
  Ext v = E_->one();
  for (u64 j = 0; j < order / m; ++j) {
    out.push_back(v);
    v = E_->mul(v, gm);
  }
  return out;
}

void validate_coset_spec(const Fq2& E, const CosetSpec& spec) {
  u64 order = E.q() + 1;
  if (spec.m < 2 || order % spec.m != 0)
    fail("InvalidParams", "m must be a divisor of q+1 greater than 1");
  if (std::gcd(spec.m, u64{6}) != 1) fail("InvalidParams", "(m,6) must be 1");
  if (E.is_mth_power_in_mu(spec.tbar, spec.m))
    fail("NotACosetRep", "tbar is an m-th power in mu_{q+1}");
}

std::vector<Ext> Curve::coset_params(const CosetSpec& spec) const {
  validate_coset_spec(*E_, spec);
  const Fq& F = *F_;
  // route 1: tbar ((u+beta)/(u-beta))^m over u in F_q, plus tbar itself
  std::set<Ext> route1;
  for (u64 uv = 0; uv < F.q(); ++uv) {
    Fel u{uv};
    Fel u2 = F.mul(u, u);
    Fel d = F.inv(F.sub(u2, n_));
    Ext w = E_->make(F.mul(F.add(u2, n_), d), F.mul(F.add(u, u), d));
    route1.insert(E_->mul(spec.tbar, E_->pow(w, spec.m)));
  }
  route1.insert(spec.tbar);
  // route 2: tbar * K
  std::set<Ext> route2;
  for (const Ext& k : subgroup_params(spec.m)) route2.insert(E_->mul(spec.tbar, k));
  if (route1 != route2) fail("InternalAssertionFailure", "coset parametrizations disagree");
  if (route1.size() != (F.q() + 1) / spec.m)
    fail("InternalAssertionFailure", "coset has wrong size");
  return {route1.begin(), route1.end()};
}

std::vector<Point> Curve::coset_points(const CosetSpec& spec) const {
  std::vector<Point> out;
  for (const Ext& v : coset_params(spec)) out.push_back(from_param(v));
  return out;
}

Ext Curve::default_tbar(u64 m) const {
  Ext g = E_->mu_generator();
  Ext v = g;
  for (u64 j = 1;; ++j) {
    if (j % m != 0) return v;
    v = E_->mul(v, g);
  }
}

}  // namespace nodalarcs::cubic
