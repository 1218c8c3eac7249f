#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodalarcs/cubic.hpp"
#include "nodalarcs/geom.hpp"
#include "nodalarcs/indep.hpp"

namespace nodalarcs::arcs {

using cubic::Curve;
using geom::PlanePoint;
using gf::Ext;
using gf::Fel;
using gf::Fq;
using gf::Fq2;

// Exact integer-arithmetic truth of the arithmetic hypotheses; square
// roots are compared by squaring, never through floating point.
struct GuaranteeFlags {
  bool complete_arc_bound = false;        // 36 m^4 <= q
  bool secant_bound = false;  // q+1-(6m^2-6m+2)sqrt(q) >= 4m^2+8m+1
  bool punctured_secant_bound = false;         // q+1-(6m^2-6m+2)sqrt(q) >= 8m^2+8m+1
  bool bicovering_bound = false;        // q+1-(16m^2-8m+2)sqrt(q) >= 16m^2+24m+1
  bool complete_cap_bound = false;      // 256 m^4 <= q
};
GuaranteeFlags guarantee_flags(u64 q, u64 m);

struct ArcArtifact {
  std::string construction;            // "arc" | "bicovering"
  u64 m = 0;
  std::optional<u64> m1, m2;
  std::vector<PlanePoint> curve_points;  // the part living on the cubic
  std::vector<PlanePoint> exceptional;   // the excluded-coordinate points
  std::vector<PlanePoint> points;        // sorted union (the arc itself)
  std::vector<u64> coset_labels;         // bicovering: the set M in Z_m
  std::vector<u64> member_exponents;     // exponents of the mu generator
  std::optional<PlanePoint> center;      // bicovering: P0 = (0, -1/beta^2)
  Ext tbar{};                            // coset anchor: complete_arc's T, else
                                         // the representative of the first label
  GuaranteeFlags flags;
};

// Theorem-style complete-arc candidate: G = K x H via CRT on exponents,
// R and R' the deterministic factor generators, the certified
// 3-independent set mapped through the curve, union the exceptional set.
ArcArtifact build_complete_arc(const Fq2& E, u64 m);

// Union of the cosets selected by a maximal 3-independent subset M of
// G/K = Z_m (built from m1, m2 when supplied), union the exceptional
// set; declares center P0. In the three-point exceptional case the
// cosets of Q1 and Q2 are excluded from M.
ArcArtifact build_almost_bicovering(const Fq2& E, u64 m, std::optional<u64> m1,
                                    std::optional<u64> m2);

// The unique points of G collinear with (0,-9/(8 beta^2)) and
// (beta sqrt(-3), 0), resp. (-beta sqrt(-3), 0); requires the
// three-point exceptional case (s odd, p = 2 mod 3).
std::pair<cubic::Point, cubic::Point> find_exceptional_collinear_points(const Fq2& E);

}  // namespace nodalarcs::arcs
