#include <doctest.h>

#include <set>

#include "nodalarcs/cubic.hpp"
#include "nodalarcs/geom.hpp"

using namespace nodalarcs;
using namespace nodalarcs::cubic;

TEST_CASE("parametrization basics") {
  gf::Fq F(19);
  gf::Fq2 E(F);
  Curve X(E);

  CHECK(X.from_param(E.one()) == Point::xinf());
  // v = -1 maps to (0, -1/beta^2)
  gf::Ext minus1 = E.neg(E.one());
  Point P = X.from_param(minus1);
  CHECK(P.is_affine());
  CHECK(P.x == F.zero());
  CHECK(P.y == F.neg(F.inv(E.beta_sq())));
  CHECK(X.to_param(P) == minus1);
  CHECK(X.to_param(Point::xinf()) == E.one());
  CHECK_THROWS_AS(X.to_param(Point::yinf()), Error);

  // v = (3+beta)/(3-beta): both coordinates in F_19 and on the curve
  gf::Ext v = E.div(E.add(E.embed(F.from_int(3)), E.beta()),
                    E.sub(E.embed(F.from_int(3)), E.beta()));
  Point Q = X.from_param(v);
  CHECK(Q.is_affine());
  CHECK(X.on_curve(Q));
}

TEST_CASE("from_param is a bijection onto G") {
  for (u64 p : {5ull, 13ull, 19ull}) {
    gf::Fq F(p);
    gf::Fq2 E(F);
    Curve X(E);
    auto params = X.group_params();
    CHECK(params.size() == p + 1);
    std::set<std::pair<u64, u64>> seen;
    for (const auto& v : params) {
      Point P = X.from_param(v);
      CHECK(X.on_curve(P));
      CHECK(X.to_param(P) == v);
      seen.insert(P.is_affine() ? std::pair{P.x.v, P.y.v} : std::pair{~u64{0}, ~u64{0}});
    }
    CHECK(seen.size() == p + 1);
  }
}

TEST_CASE("group law matches the chord-tangent sum on all pairs") {
  // every prime power q <= 50 with p > 3 (full (q+1)^2 table each)
  std::vector<std::pair<u64, int>> fields = {{5, 1},  {7, 1},  {11, 1}, {13, 1}, {17, 1},
                                             {19, 1}, {23, 1}, {29, 1}, {31, 1}, {37, 1},
                                             {41, 1}, {43, 1}, {47, 1}, {5, 2},  {7, 2}};
  for (auto [p, s] : fields) {
    gf::Fq F(p, s);
    gf::Fq2 E(F);
    Curve X(E);
    auto params = X.group_params();
    REQUIRE(params.size() == F.q() + 1);
    for (const auto& v : params) {
      Point Pv = X.from_param(v);
      for (const auto& w : params) {
        Point Pw = X.from_param(w);
        Point sum = X.add_geometric(Pv, Pw);
        CHECK(sum == X.from_param(X.add_params(v, w)));
      }
    }
  }
}

TEST_CASE("neutral element and inverses") {
  gf::Fq F(13);
  gf::Fq2 E(F);
  Curve X(E);
  gf::Ext g = E.mu_generator();
  Point P = X.from_param(g);
  CHECK(X.add_geometric(P, Point::xinf()) == P);
  CHECK(X.add_geometric(Point::xinf(), Point::xinf()) == Point::xinf());
  Point Pinv = X.from_param(E.inv(g));
  CHECK(X.add_geometric(P, Pinv) == Point::xinf());
  CHECK_THROWS_AS(X.add_geometric(P, Point::yinf()), Error);
}

TEST_CASE("order-3 point sums to the neutral element") {
  // 3 | q+1 at q = 5
  gf::Fq F(5);
  gf::Fq2 E(F);
  Curve X(E);
  gf::Ext v = E.pow(E.mu_generator(), 2);  // order 3 in mu_6
  Point P = X.from_param(v);
  CHECK(X.add_geometric(P, X.add_geometric(P, P)) == Point::xinf());
}

TEST_CASE("collinearity of affine group points is the product-1 rule") {
  for (u64 p : {13ull, 19ull}) {
    gf::Fq F(p);
    gf::Fq2 E(F);
    Curve X(E);
    auto params = X.group_params();
    std::vector<gf::Ext> affine(params.begin() + 1, params.end());  // drop v = 1
    for (std::size_t i = 0; i < affine.size(); ++i)
      for (std::size_t j = i + 1; j < affine.size(); ++j)
        for (std::size_t k = j + 1; k < affine.size(); ++k) {
          geom::PlanePoint A, B, C;
          Point PA = X.from_param(affine[i]);
          Point PB = X.from_param(affine[j]);
          Point PC = X.from_param(affine[k]);
          A = {PA.x, PA.y};
          B = {PB.x, PB.y};
          C = {PC.x, PC.y};
          bool product_one =
              E.mul(affine[i], E.mul(affine[j], affine[k])) == E.one();
          CHECK(geom::collinear3(F, A, B, C) == product_one);
        }
    // with Xinf: Q_u, Q_v, Xinf collinear iff the chord is horizontal iff uv = 1
    for (std::size_t i = 0; i < affine.size(); ++i)
      for (std::size_t j = i + 1; j < affine.size(); ++j) {
        Point PA = X.from_param(affine[i]);
        Point PB = X.from_param(affine[j]);
        bool horizontal = PA.y == PB.y;
        CHECK(horizontal == (E.mul(affine[i], affine[j]) == E.one()));
      }
  }
}

TEST_CASE("cosets partition G and have the right size") {
  gf::Fq F(19);
  gf::Fq2 E(F);
  Curve X(E);
  gf::Ext g = E.mu_generator();

  CHECK(X.default_tbar(5) == g);
  CosetSpec spec{5, g};
  auto coset = X.coset_params(spec);
  CHECK(coset.size() == 4);

  // K itself: 4 elements, closed under multiplication
  auto K = X.subgroup_params(5);
  CHECK(K.size() == 4);
  std::set<gf::Ext> Kset(K.begin(), K.end());
  for (const auto& a : K)
    for (const auto& b : K) CHECK(Kset.count(E.mul(a, b)) == 1);

  // the five cosets K, Kg, Kg^2, Kg^3, Kg^4 partition G
  std::set<gf::Ext> all;
  for (u64 j = 0; j < 5; ++j) {
    std::set<gf::Ext> coset_j;
    for (const auto& k : K) coset_j.insert(E.mul(E.pow(g, j), k));
    if (j > 0) {
      CosetSpec sj{5, E.pow(g, j)};
      auto via_op = X.coset_params(sj);
      CHECK(std::set<gf::Ext>(via_op.begin(), via_op.end()) == coset_j);
    }
    all.insert(coset_j.begin(), coset_j.end());
  }
  CHECK(all.size() == 20);

  // tbar an m-th power is rejected
  CHECK_THROWS_AS(X.coset_params({5, E.pow(g, 5)}), Error);
  CHECK_THROWS_AS(X.coset_params({5, E.pow(g, 10)}), Error);
}

TEST_CASE("two-element coset at q=13, m=7") {
  gf::Fq F(13);
  gf::Fq2 E(F);
  Curve X(E);
  gf::Ext g = E.mu_generator();
  auto coset = X.coset_params({7, g});
  CHECK(coset.size() == 2);
  std::set<gf::Ext> expect{g, E.mul(g, E.pow(g, 7))};  // g and g * (order-2 element)
  CHECK(std::set<gf::Ext>(coset.begin(), coset.end()) == expect);
}
