#include <doctest.h>

#include <set>

#include "nodalarcs/gf.hpp"

using namespace nodalarcs;
using namespace nodalarcs::gf;

TEST_CASE("prime field basics") {
  Fq F(19);
  CHECK(F.q() == 19);
  CHECK(F.add(F.from_int(15), F.from_int(7)) == F.from_int(3));
  CHECK(F.mul(F.from_int(7), F.from_int(11)) == F.from_int(77 % 19));
  CHECK(F.mul(F.from_int(5), F.inv(F.from_int(5))) == F.one());
  CHECK(F.sub(F.zero(), F.one()) == F.from_int(18));
}

TEST_CASE("is_square examples") {
  Fq F(19);
  CHECK(F.is_square(F.from_int(4)));
  // oracle: enumerate all squares mod 19
  std::set<u64> squares;
  for (u64 x = 1; x < 19; ++x) squares.insert(x * x % 19);
  CHECK(squares.count(2) == 0);
  CHECK_FALSE(F.is_square(F.from_int(2)));
  CHECK_THROWS_WITH_AS(F.is_square(F.zero()), doctest::Contains("zero"), Error);
  for (u64 x = 1; x < 19; ++x) CHECK(F.is_square(Fel{x}) == (squares.count(x) > 0));
}

TEST_CASE("find_nonsquare is the least non-square") {
  // squares mod 13 are {1,3,4,9,10,12}, mod 5 are {1,4}
  CHECK(Fq(13).nonsquare() == Fel{2});
  CHECK(Fq(19).nonsquare() == Fel{2});
  CHECK(Fq(5).nonsquare() == Fel{2});
  CHECK(Fq(7).nonsquare() == Fel{3});
}

TEST_CASE("square count and multiplicativity") {
  for (u64 p : {5ull, 13ull, 19ull, 23ull}) {
    Fq F(p);
    Fel n = F.nonsquare();
    u64 count = 0;
    for (u64 x = 1; x < F.q(); ++x) {
      bool sq = F.is_square(Fel{x});
      if (sq) ++count;
      // non-square times square is non-square
      CHECK(sq != F.is_square(F.mul(n, Fel{x})));
    }
    CHECK(count == (F.q() - 1) / 2);
  }
}

TEST_CASE("extension field F_25") {
  Fq F(5, 2);
  CHECK(F.q() == 25);
  // x^2+2 is the least monic irreducible over F_5 (x^2, x^2+1=(x+2)(x+3) reducible)
  CHECK(F.modulus() == std::vector<u64>{2, 0, 1});
  // arithmetic: (x+1)(x+2) = x^2 + 3x + 2 = -2 + 3x + 2 = 3x
  Fel a = F.from_packed(1 + 5 * 1);  // 1 + x
  Fel b = F.from_packed(2 + 5 * 1);  // 2 + x
  CHECK(F.mul(a, b) == F.from_packed(5 * 3));
  for (u64 v = 1; v < 25; ++v) {
    CHECK(F.mul(Fel{v}, F.inv(Fel{v})) == F.one());
  }
  // exhaustive square count
  u64 count = 0;
  for (u64 v = 1; v < 25; ++v)
    if (F.is_square(Fel{v})) ++count;
  CHECK(count == 12);
}

TEST_CASE("sqrt round-trip") {
  for (u64 p : {5ull, 13ull, 19ull}) {
    Fq F(p);
    for (u64 x = 1; x < p; ++x) {
      if (!F.is_square(Fel{x})) continue;
      Fel r = F.sqrt(Fel{x});
      CHECK(F.mul(r, r) == Fel{x});
    }
  }
  Fq F25(5, 2);
  for (u64 v = 1; v < 25; ++v) {
    if (!F25.is_square(Fel{v})) continue;
    Fel r = F25.sqrt(Fel{v});
    CHECK(F25.mul(r, r) == Fel{v});
  }
}

TEST_CASE("quadratic extension and Frobenius") {
  Fq F(19);
  Fq2 E(F);
  CHECK(E.beta_sq() == Fel{2});
  Ext beta = E.beta();
  // beta^q = -beta
  CHECK(E.pow(beta, 19) == E.neg(beta));
  // Frobenius fixes exactly F_q, and z^{q^2} = z for all z
  for (u64 c1 = 0; c1 < 19; ++c1) {
    for (u64 c0 = 0; c0 < 19; c0 += 5) {
      Ext z = E.make(Fel{c0}, Fel{c1});
      if (E.is_zero(z)) continue;
      CHECK(E.pow(z, 19 * 19) == z);
      CHECK(E.pow(z, 19) == E.conj(z));
    }
  }
}

TEST_CASE("mu generator has order exactly q+1") {
  for (u64 p : {5ull, 13ull, 19ull}) {
    Fq F(p);
    Fq2 E(F);
    Ext g = E.mu_generator();
    CHECK(E.pow(g, p + 1) == E.one());
    for (auto [r, e] : factorize(p + 1)) {
      (void)e;
      CHECK(E.pow(g, (p + 1) / r) != E.one());
    }
    // norm of anything in mu is 1, and z^q = z^{-1} on mu
    Ext z = E.pow(g, 3);
    CHECK(E.norm(z) == F.one());
    CHECK(E.pow(z, p) == E.inv(z));
  }
  // q = 19: g^10 = -1
  Fq F(19);
  Fq2 E(F);
  CHECK(E.pow(E.mu_generator(), 10) == E.neg(E.one()));
}

TEST_CASE("m-th powers inside mu") {
  Fq F(19);
  Fq2 E(F);
  Ext g = E.mu_generator();
  CHECK(E.is_mth_power_in_mu(E.pow(g, 5), 5));
  CHECK_FALSE(E.is_mth_power_in_mu(g, 5));
  CHECK(E.is_mth_power_in_mu(E.one(), 5));
  CHECK(E.is_mth_power_in_mu(E.one(), 4));
  CHECK_THROWS_AS(E.is_mth_power_in_mu(E.make(Fel{3}, Fel{0}), 5), Error);

  // membership in mu agrees with being an m-th power of the full group
  // where m | q+1 and the element lies in mu (small exhaustive check)
  for (u64 j = 0; j <= 19; ++j) {
    Ext v = E.pow(g, j);
    bool expect = (j % 5 == 0) || ((j * 4) % 20 == 0 && false);
    CHECK(E.is_mth_power_in_mu(v, 5) == (j % 5 == 0));
    (void)expect;
  }
}

TEST_CASE("mu membership in F_25") {
  Fq F(5, 2);
  Fq2 E(F);
  Ext g = E.mu_generator();
  CHECK(E.pow(g, 26) == E.one());
  u64 count = 0;
  for (u64 c1 = 0; c1 < 25; ++c1)
    for (u64 c0 = 0; c0 < 25; ++c0) {
      Ext z = E.make(Fel{c0}, Fel{c1});
      if (!E.is_zero(z) && E.in_mu(z)) ++count;
    }
  CHECK(count == 26);
}
