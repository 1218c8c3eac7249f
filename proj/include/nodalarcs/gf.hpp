#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "nodalarcs/error.hpp"
#include "nodalarcs/numutil.hpp"

namespace nodalarcs::gf {

// Element of F_q, q = p^s, packed little-endian base p:
//   value = sum coeffs[i] * p^i,  coeffs = coordinates in the power basis.
// Packed order coincides with lexicographic order on coefficient vectors,
// most-significant coefficient first, which is the canonical element order.
struct Fel {
  u64 v = 0;
  friend bool operator==(const Fel&, const Fel&) = default;
  friend auto operator<=>(const Fel&, const Fel&) = default;
};

class Fq {
 public:
  static constexpr int kMaxS = 8;
  using Digits = std::array<u64, kMaxS>;

  // p prime > 3, s >= 1. For s > 1 the modulus is the lexicographically
  // least monic irreducible of degree s over F_p (deterministic search);
  // a caller-supplied modulus must be monic irreducible of degree s.
  explicit Fq(u64 p, int s = 1, std::optional<std::vector<u64>> modulus = std::nullopt);

  u64 p() const noexcept { return p_; }
  int s() const noexcept { return s_; }
  u64 q() const noexcept { return q_; }
  // little-endian, length s+1, leading coefficient 1 (for s=1: {0,1} slot unused upstream)
  const std::vector<u64>& modulus() const noexcept { return mod_; }

  Fel zero() const noexcept { return {0}; }
  Fel one() const noexcept { return {1}; }
  bool valid(Fel x) const noexcept { return x.v < q_; }
  Fel from_packed(u64 v) const;
  // embeds an integer as a constant polynomial (reduces mod p)
  Fel from_int(i64 n) const;

  Fel add(Fel a, Fel b) const;
  Fel sub(Fel a, Fel b) const;
  Fel neg(Fel a) const;
  Fel mul(Fel a, Fel b) const;
  Fel inv(Fel a) const;
  Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
  Fel pow(Fel a, u64 e) const;

  // Euler criterion x^((q-1)/2); zero input is rejected (code ZeroInput).
  bool is_square(Fel x) const;
  // least non-square in the canonical (packed) order; cached
  Fel nonsquare() const { return nonsquare_; }
  // Tonelli-Shanks; precondition is_square(x) (x = 0 allowed, returns 0)
  Fel sqrt(Fel x) const;

  Digits unpack(Fel x) const;
  Fel pack(const Digits& d) const;

 private:
  u64 p_ = 0;
  int s_ = 1;
  u64 q_ = 0;
  std::vector<u64> mod_;                 // monic, little-endian, length s+1
  std::array<Digits, kMaxS> xred_{};     // x^(s+j) mod modulus, j in [0, s-1)
  Fel nonsquare_{0};
  std::vector<u64> inv_table_;           // packed inverses, built for small q

  void build_reduction_rows();
  Fel find_nonsquare() const;
};

// Element of F_{q^2} = F_q(beta), beta^2 = n a fixed non-square of F_q.
// Canonical order: (c1, c0) packed pair (beta-coefficient most significant).
struct Ext {
  Fel c0, c1;  // c0 + c1*beta
  friend bool operator==(const Ext&, const Ext&) = default;
  friend auto operator<=>(const Ext& a, const Ext& b) {
    if (auto c = a.c1 <=> b.c1; c != 0) return c;
    return a.c0 <=> b.c0;
  }
};

class Fq2 {
 public:
  // beta_sq defaults to base.nonsquare(); overrides must be non-squares.
  explicit Fq2(const Fq& base, std::optional<Fel> beta_sq = std::nullopt);

  const Fq& base() const noexcept { return *F_; }
  Fel beta_sq() const noexcept { return n_; }
  u64 q() const noexcept { return F_->q(); }

  Ext zero() const { return {F_->zero(), F_->zero()}; }
  Ext one() const { return {F_->one(), F_->zero()}; }
  Ext beta() const { return {F_->zero(), F_->one()}; }
  Ext embed(Fel x) const { return {x, F_->zero()}; }
  Ext make(Fel c0, Fel c1) const { return {c0, c1}; }
  bool is_zero(Ext a) const { return a.c0.v == 0 && a.c1.v == 0; }

  Ext add(Ext a, Ext b) const { return {F_->add(a.c0, b.c0), F_->add(a.c1, b.c1)}; }
  Ext sub(Ext a, Ext b) const { return {F_->sub(a.c0, b.c0), F_->sub(a.c1, b.c1)}; }
  Ext neg(Ext a) const { return {F_->neg(a.c0), F_->neg(a.c1)}; }
  Ext mul(Ext a, Ext b) const;
  Ext inv(Ext a) const;
  Ext div(Ext a, Ext b) const { return mul(a, inv(b)); }
  Ext pow(Ext a, u64 e) const;
  // Frobenius x -> x^q, i.e. c0 - c1*beta
  Ext conj(Ext a) const { return {a.c0, F_->neg(a.c1)}; }
  // a * conj(a) = c0^2 - n*c1^2 in F_q
  Fel norm(Ext a) const;

  bool in_mu(Ext v) const;  // v^(q+1) == 1
  // deterministic generator of mu_{q+1}: least primitive element of
  // F_{q^2} raised to the power q-1
  Ext mu_generator() const { return mu_gen_; }
  // membership test v = w^m with w in mu_{q+1}; requires m | q+1
  bool is_mth_power_in_mu(Ext v, u64 m) const;

 private:
  const Fq* F_;
  Fel n_;
  Ext mu_gen_;

  Ext find_mu_generator() const;
};

}  // namespace nodalarcs::gf
