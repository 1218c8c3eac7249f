#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nodalarcs/arcs.hpp"
#include "nodalarcs/geom.hpp"

namespace nodalarcs::caps {

using geom::PlanePoint;
using gf::Fel;
using gf::Fq;
using gf::Fq2;

// F_{q'} = F_q[xi]/(modulus) with q' = q^ext_degree; elements are packed
// base q (digit i = packed F_q coefficient of xi^i). The default modulus
// is the lexicographically least monic irreducible of its degree.
class LiftField {
 public:
  LiftField(const Fq& base, u64 ext_degree,
            std::optional<std::vector<Fel>> modulus = std::nullopt);

  const Fq& base() const { return *F_; }
  u64 ext_degree() const { return e_; }
  u64 qp() const { return qp_; }  // q^e
  const std::vector<Fel>& modulus() const { return mod_; }

  using El = u64;  // packed value in [0, q^e)

  std::vector<Fel> flatten(El a) const;       // length-e coefficient vector
  El unflatten(std::span<const Fel> c) const;

  El add(El a, El b) const;
  El sub(El a, El b) const;
  El neg(El a) const;
  El mul(El a, El b) const;
  El pow(El a, u64 e) const;
  El inv(El a) const;
  bool is_square(El a) const;  // Euler criterion; a != 0
  El least_nonsquare() const { return tau_; }

 private:
  const Fq* F_;
  u64 e_;
  u64 qp_;
  std::vector<Fel> mod_;                  // monic, little-endian, length e+1
  std::vector<std::vector<Fel>> xred_;    // xi^(e+j) mod modulus
  El tau_;
};

struct Cap {
  u64 N = 0;
  std::vector<std::vector<Fel>> points;   // each of length N
  std::string completion = "none";        // none | tau | tau2

  u64 size() const { return points.size(); }
};

// C_A = {(alpha, alpha^2, u, v)}: |A| * q^((N-2)/2) points; N = 0 mod 4
Cap lift_arc(const LiftField& L, std::span<const PlanePoint> arc, u64 N);

enum class CenterClass { External, Internal };

// appends {(alpha, alpha^2 - tau, x0, y0)} for an external-only center,
// alpha^2 - tau^2 for internal-only; tau = least non-square of F_{q'}
Cap complete_with_center(const LiftField& L, const Cap& cap, const PlanePoint& center,
                         CenterClass cls);

struct CapCheck {
  bool ok = true;
  std::array<std::vector<Fel>, 3> witness{};  // a collinear triple when !ok
};
CapCheck is_cap(const Fq& F, const Cap& cap);

struct CoverageReport {
  geom::VerifyMode mode = geom::VerifyMode::Exhaustive;
  u64 samples = 0, seed = 0;
  u64 scanned = 0;   // ambient points off the cap actually tested
  u64 covered = 0;   // on at least one secant
  bool exhaustive_complete = false;  // exhaustive mode: covered == scanned
  double fraction() const { return scanned ? double(covered) / double(scanned) : 0.0; }
};
// exhaustive mode marks all secants (guard q^N <= 10^9); sample mode
// draws seeded ambient points and tests for a duplicated direction
CoverageReport cap_coverage(const Fq& F, const Cap& cap, geom::VerifyMode mode,
                            u64 samples = 0, u64 seed = 0, unsigned threads = 1);

struct CapArtifact {
  Cap cap;
  arcs::ArcArtifact arc;
  u64 N = 0;
  std::vector<Fel> lift_modulus;
  std::string center_class;  // "external" | "internal"
  LiftField::El tau = 0;
  arcs::GuaranteeFlags flags;
};

// pipeline: almost-bicovering arc, exhaustive center classification,
// lift, tau/tau^2 completion
CapArtifact build_complete_cap(const Fq2& E, u64 m1, u64 m2, u64 N, unsigned threads = 1);

}  // namespace nodalarcs::caps
