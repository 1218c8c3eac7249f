#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nodalarcs/gf.hpp"

namespace nodalarcs::geom {

using gf::Fel;
using gf::Fq;
using gf::Fq2;

struct PlanePoint {
  Fel x{}, y{};
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  friend auto operator<=>(const PlanePoint& a, const PlanePoint& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

bool collinear3(const Fq& F, const PlanePoint& P, const PlanePoint& Q, const PlanePoint& R);

enum class SegPos { External, Internal, Endpoint, NotCollinear };

// Segre's classification: in any affine frame of the line, P is external
// to P1P2 when (x-x1)(x-x2) is a non-zero square, internal when it is a
// non-square; zero marks an endpoint. The square class is frame-free.
SegPos segment_position(const Fq& F, const PlanePoint& P, const PlanePoint& P1,
                        const PlanePoint& P2);

struct ArcCheck {
  bool ok = true;
  std::array<PlanePoint, 3> witness{};  // a collinear triple when !ok
};

// no-three-collinear, by duplicate-direction detection per base point
ArcCheck is_arc(const Fq& F, std::span<const PlanePoint> S);

enum class VerifyMode { Exhaustive, Sample };

struct BicoverReport {
  std::size_t arc_size = 0;
  VerifyMode mode = VerifyMode::Exhaustive;
  u64 samples = 0;  // sample mode only
  u64 seed = 0;
  u64 scanned = 0;          // ambient points actually classified
  u64 bicovered_count = 0;
  std::vector<PlanePoint> uncovered;
  std::vector<PlanePoint> external_only;
  std::vector<PlanePoint> internal_only;
  bool is_bicovering = false;                  // exhaustive mode only
  bool almost_bicovering = false;              // exhaustive mode only
  std::optional<PlanePoint> center_candidate;  // the unique non-bicovered point
};

// Classifies every ambient point off S (exhaustive), or a seeded stream of
// n points (sample), against all secants of S through it. S must be an arc.
BicoverReport bicover_classify(const Fq& F, std::span<const PlanePoint> S, VerifyMode mode,
                               u64 samples = 0, u64 seed = 0, unsigned threads = 1);

// { (0, -9/(8 beta^2)) } plus (+-beta sqrt(-3), 0) exactly when -3 is a
// non-square in F_q; the latter is asserted to agree with the criterion
// "s odd and p = 2 mod 3".
std::vector<PlanePoint> exceptional_set(const Fq& F, Fel beta_sq);

// each exceptional point is collinear with no two distinct affine
// F_q-rational points of the cubic (exhaustive pair scan; q <= 10^4)
bool exceptional_points_clear(const Fq& F, Fel beta_sq);

}  // namespace nodalarcs::geom
