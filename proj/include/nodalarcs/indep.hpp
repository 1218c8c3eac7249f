#pragma once

#include <vector>

#include "nodalarcs/error.hpp"
#include "nodalarcs/numutil.hpp"

namespace nodalarcs::indep {

// Finite abelian group as a product of cyclic factors; elements are
// vectors of residues, indexed lexicographically (first coordinate most
// significant) for the deterministic search order.
struct AbelianGroup {
  std::vector<u64> factors;

  u64 order() const {
    u64 n = 1;
    for (u64 f : factors) n *= f;
    return n;
  }

  using Elem = std::vector<u64>;

  bool valid(const Elem& e) const {
    if (e.size() != factors.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] >= factors[i]) return false;
    return true;
  }

  u64 index_of(const Elem& e) const;
  Elem elem_at(u64 idx) const;

  u64 add(u64 a, u64 b) const;
  u64 neg(u64 a) const;
  u64 scalar(i64 c, u64 a) const;  // c*x with c possibly negative
  u64 order_of(u64 a) const;

  Elem add_e(const Elem& a, const Elem& b) const;
  Elem neg_e(const Elem& a) const;
  Elem scalar_e(i64 c, const Elem& a) const;
  u64 order_of_e(const Elem& a) const;
};

struct IndepSet {
  AbelianGroup group;
  std::vector<AbelianGroup::Elem> members;  // sorted by index
  bool good = false;
};

struct Indep3Check {
  bool maximal = false;  // conditions (a) and (b)
  bool good = false;     // distinct witnesses for every outside element
};

// (a) no three members (repetition allowed) sum to zero; (b) every outside
// element y has members x1, x2 with x1+x2+y = 0; good when x1 != x2 can
// always be chosen.
Indep3Check is_maximal_3indep(const AbelianGroup& G,
                              const std::vector<AbelianGroup::Elem>& members);

// The literal set (K+T setminus {T}) union (H+R setminus {-2T+R}) with
// T = Rp - 2R, for G = K x H in the product basis (K the first factor,
// H the second, coprime orders), certified before being returned.
IndepSet build_two_block_3indep(const AbelianGroup& G, const AbelianGroup::Elem& R,
                       const AbelianGroup::Elem& Rp);

// Deterministic backtracking for a certified good maximal 3-independent
// set of exactly target_size elements avoiding `forbidden`; |G| <= 10^4.
IndepSet exhaustive_3indep_search(const AbelianGroup& G, u64 target_size,
                                  const std::vector<AbelianGroup::Elem>& forbidden = {});

// Good maximal 3-independent subset of Z_m1 x Z_m2 of size exactly
// m1+m2-3 (m1, m2 > 4 and coprime), avoiding `forbidden`.
IndepSet build_product_3indep(u64 m1, u64 m2,
                              const std::vector<AbelianGroup::Elem>& forbidden = {});

// Smallest-size certified good maximal 3-independent subset found by
// increasing-target search; used when no product factorization is given.
IndepSet smallest_maximal_3indep(const AbelianGroup& G,
                                 const std::vector<AbelianGroup::Elem>& forbidden = {});

}  // namespace nodalarcs::indep
