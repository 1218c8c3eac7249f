#pragma once

#include <vector>

#include "nodalarcs/gf.hpp"

namespace nodalarcs::cubic {

using gf::Ext;
using gf::Fel;
using gf::Fq;
using gf::Fq2;

enum class PointKind { Xinf, Yinf, Affine };

// Point of the cubic Y(X^2 - beta^2) = 1. Xinf is the inflection at
// infinity (neutral element), Yinf the isolated double point.
struct Point {
  PointKind kind = PointKind::Xinf;
  Fel x{}, y{};

  static Point xinf() { return {PointKind::Xinf, {}, {}}; }
  static Point yinf() { return {PointKind::Yinf, {}, {}}; }
  static Point affine(Fel x, Fel y) { return {PointKind::Affine, x, y}; }
  bool is_affine() const { return kind == PointKind::Affine; }
  friend bool operator==(const Point&, const Point&) = default;
};

struct CosetSpec {
  u64 m = 0;   // index of the subgroup K in G; m | q+1, (m,6) = 1
  Ext tbar{};  // coset representative parameter, not an m-th power in mu
};

class Curve {
 public:
  explicit Curve(const Fq2& ext);

  const Fq& field() const { return *F_; }
  const Fq2& ext() const { return *E_; }
  Fel beta_sq() const { return E_->beta_sq(); }

  bool on_curve(const Point& P) const;

  // v = 1 -> Xinf; otherwise ((v+1)/(v-1) beta, (v-1)^2 / (4 v beta^2)),
  // which lands in F_q x F_q for v in mu_{q+1}.
  Point from_param(Ext v) const;
  // inverse of from_param; the x-coordinate is the u of G's
  // u-parametrization, so the parameter is (x+beta)/(x-beta)
  Ext to_param(const Point& P) const;

  // group law transported to mu: Q_v + Q_w = Q_{vw}
  Ext add_params(Ext v, Ext w) const { return E_->mul(v, w); }

  // independent chord-tangent sum with neutral Xinf, computed projectively
  // on X^2 Y - beta^2 Y Z^2 - Z^3 = 0
  Point add_geometric(const Point& P, const Point& Q) const;

  // all q+1 points of G as powers of the mu generator, index = exponent
  std::vector<Ext> group_params() const;

  // subgroup K of index m: the m-th powers of mu
  std::vector<Ext> subgroup_params(u64 m) const;
  // coset K_T computed both by the u-parametrization of eq. K_T and by
  // multiplying tbar into K; throws InternalAssertionFailure on mismatch
  std::vector<Ext> coset_params(const CosetSpec& spec) const;
  std::vector<Point> coset_points(const CosetSpec& spec) const;

  // default coset representative: least power g^j, j >= 1, j not a
  // multiple of m
  Ext default_tbar(u64 m) const;

 private:
  const Fq* F_;
  const Fq2* E_;
  Fel n_;  // beta^2

  struct Proj {
    Fel X, Y, Z;
  };
  Fel eval_cubic(const Proj& P) const;
  Proj third_intersection(const Proj& P, const Proj& Q, bool tangent) const;
  Point normalize(const Proj& P) const;
};

void validate_coset_spec(const Fq2& E, const CosetSpec& spec);

}  // namespace nodalarcs::cubic
