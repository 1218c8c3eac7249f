#include "nodalarcs/gf.hpp"

#include <algorithm>
#include <numeric>

namespace nodalarcs::gf {

namespace {

constexpr u64 kMaxQ = u64{1} << 40;

// Polynomial arithmetic mod p on small vectors, used only by the
// deterministic irreducible-modulus search.
using Poly = std::vector<u64>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  std::vector<u64> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  // reduce by monic f of degree d
  size_t d = f.size() - 1;
  for (size_t k = c.size(); k-- > d;) {
    u64 coef = c[k];
    if (coef == 0) continue;
    c[k] = 0;
    for (size_t i = 0; i < d; ++i) {
      u64 t = coef * (p - f[i] % p) % p;
      c[k - d + i] = (c[k - d + i] + t) % p;
    }
  }
  c.resize(d);
  return c;
}

Poly poly_pow_x(u64 e, const Poly& f, u64 p) {
  size_t d = f.size() - 1;
  Poly result(d, 0), base(d, 0);
  result[0] = 1;
  if (d == 1) {
    // x mod f is a constant
    base[0] = (p - f[0] % p) % p;
  } else {
    base[1] = 1;
  }
  while (e) {
    if (e & 1) result = poly_mul_mod(result, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  auto deg = [](const Poly& x) -> int {
    for (int i = int(x.size()) - 1; i >= 0; --i)
      if (x[i]) return i;
    return -1;
  };
  while (deg(b) >= 0) {
    int da = deg(a), db = deg(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    // a -= lc(a)/lc(b) * x^(da-db) * b
    u64 lcB = b[db];
    u64 invB = 1;
    {  // Fermat inverse mod p
      u64 e = p - 2, base = lcB;
      while (e) {
        if (e & 1) invB = invB * base % p;
        base = base * base % p;
        e >>= 1;
      }
    }
    u64 fac = a[da] * invB % p;
    for (int i = 0; i <= db; ++i) {
      u64 t = fac * b[i] % p;
      a[da - db + i] = (a[da - db + i] + p - t) % p;
    }
  }
  return a;
}

bool poly_irreducible(const Poly& f, u64 p) {
  size_t d = f.size() - 1;
  if (d == 1) return true;
  // x^(p^d) == x mod f, and gcd(x^(p^(d/r)) - x, f) = 1 for prime r | d
  u64 pd = 1;
  for (size_t i = 0; i < d; ++i) pd *= p;
  Poly xq = poly_pow_x(pd, f, p);
  Poly x(d, 0);
  if (d >= 2) x[1] = 1;
  if (xq != x) return false;
  for (auto [r, e] : factorize(d)) {
    u64 pe = 1;
    for (size_t i = 0; i < d / r; ++i) pe *= p;
    Poly g = poly_pow_x(pe, f, p);
    // g - x
    g[1] = (g[1] + p - 1) % p;
    Poly gc = poly_gcd(f, g, p);
    int dg = -1;
    for (int i = int(gc.size()) - 1; i >= 0; --i)
      if (gc[i]) {
        dg = i;
        break;
      }
    if (dg != 0) return false;
  }
  return true;
}

}  // namespace

Fq::Fq(u64 p, int s, std::optional<std::vector<u64>> modulus) : p_(p), s_(s) {
  if (!is_prime_u64(p) || p <= 3) fail("InvalidParams", "p must be a prime > 3");
  if (s < 1 || s > kMaxS) fail("InvalidParams", "extension degree out of range");
  q_ = 1;
  for (int i = 0; i < s; ++i) {
    if (q_ > kMaxQ / p) fail("InvalidParams", "q too large");
    q_ *= p;
  }
  if (s == 1) {
    mod_ = {0, 1};  // slot unused
  } else if (modulus) {
    mod_ = *modulus;
    if (mod_.size() != size_t(s) + 1 || mod_[s] != 1)
      fail("InvalidParams", "modulus must be monic of degree s");
    for (auto& c : mod_) c %= p;
    if (!poly_irreducible(mod_, p)) fail("InvalidParams", "modulus is reducible");
  } else {
    // least monic irreducible: scan x^s + c, c packed ascending
    for (u64 c = 0;; ++c) {
      if (c >= q_) fail("InternalAssertionFailure", "no irreducible modulus found");
      Poly f(s + 1, 0);
      f[s] = 1;
      u64 t = c;
      for (int i = 0; i < s; ++i) {
        f[i] = t % p;
        t /= p;
      }
      if (poly_irreducible(f, p)) {
        mod_ = f;
        break;
      }
    }
  }
  build_reduction_rows();
  nonsquare_ = find_nonsquare();
  if (q_ <= (u64{1} << 12)) {
    inv_table_.assign(q_, 0);
    for (u64 v = 1; v < q_; ++v) inv_table_[v] = pow(Fel{v}, q_ - 2).v;
  }
}

void Fq::build_reduction_rows() {
  if (s_ == 1) return;
  // xred_[0] = x^s mod f = -(low part of f)
  Digits row{};
  for (int i = 0; i < s_; ++i) row[i] = (p_ - mod_[i] % p_) % p_;
  xred_[0] = row;
  for (int j = 1; j < s_ - 1; ++j) {
    // multiply previous row by x and reduce
    Digits next{};
    u64 carry = row[s_ - 1];
    for (int i = s_ - 1; i > 0; --i) next[i] = row[i - 1];
    next[0] = 0;
    if (carry) {
      for (int i = 0; i < s_; ++i) next[i] = (next[i] + carry * xred_[0][i]) % p_;
    }
    xred_[j] = next;
    row = next;
  }
}

Fq::Digits Fq::unpack(Fel x) const {
  Digits d{};
  u64 v = x.v;
  for (int i = 0; i < s_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

Fel Fq::pack(const Digits& d) const {
  u64 v = 0;
  for (int i = s_ - 1; i >= 0; --i) v = v * p_ + d[i];
  return {v};
}

Fel Fq::from_packed(u64 v) const {
  if (v >= q_) fail("InvalidParams", "element encoding out of range");
  return {v};
}

Fel Fq::from_int(i64 n) const {
  i64 r = n % i64(p_);
  if (r < 0) r += i64(p_);
  return {u64(r)};
}

Fel Fq::add(Fel a, Fel b) const {
  if (s_ == 1) {
    u64 t = a.v + b.v;
    return {t >= p_ ? t - p_ : t};
  }
  Digits da = unpack(a), db = unpack(b), dc{};
  for (int i = 0; i < s_; ++i) {
    u64 t = da[i] + db[i];
    dc[i] = t >= p_ ? t - p_ : t;
  }
  return pack(dc);
}

Fel Fq::sub(Fel a, Fel b) const {
  if (s_ == 1) {
    u64 t = a.v + p_ - b.v;
    return {t >= p_ ? t - p_ : t};
  }
  Digits da = unpack(a), db = unpack(b), dc{};
  for (int i = 0; i < s_; ++i) {
    u64 t = da[i] + p_ - db[i];
    dc[i] = t >= p_ ? t - p_ : t;
  }
  return pack(dc);
}

Fel Fq::neg(Fel a) const { return sub(zero(), a); }

Fel Fq::mul(Fel a, Fel b) const {
  if (s_ == 1) return {a.v * b.v % p_};
  Digits da = unpack(a), db = unpack(b);
  std::array<u64, 2 * kMaxS> conv{};
  for (int i = 0; i < s_; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < s_; ++j) conv[i + j] += da[i] * db[j] % p_;
  }
  Digits dc{};
  for (int i = 0; i < s_; ++i) dc[i] = conv[i] % p_;
  for (int k = s_; k <= 2 * (s_ - 1); ++k) {
    u64 coef = conv[k] % p_;
    if (!coef) continue;
    const Digits& row = xred_[k - s_];
    for (int i = 0; i < s_; ++i) dc[i] = (dc[i] + coef * row[i]) % p_;
  }
  return pack(dc);
}

Fel Fq::pow(Fel a, u64 e) const {
  Fel r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Fel Fq::inv(Fel a) const {
  if (a.v == 0) fail("ZeroInput", "inverse of zero");
  if (!inv_table_.empty()) return {inv_table_[a.v]};
  return pow(a, q_ - 2);
}

bool Fq::is_square(Fel x) const {
  if (x.v == 0) fail("ZeroInput", "zero is neither a square nor a non-square");
  return pow(x, (q_ - 1) / 2) == one();
}

Fel Fq::find_nonsquare() const {
  for (u64 v = 1; v < q_; ++v) {
    if (pow(Fel{v}, (q_ - 1) / 2) != one()) return {v};
  }
  fail("InternalAssertionFailure", "no non-square found");
}

Fel Fq::sqrt(Fel x) const {
  if (x.v == 0) return zero();
  if (!is_square(x)) fail("InvalidParams", "sqrt of a non-square");
  // Tonelli-Shanks in the cyclic group F_q^*
  u64 m = q_ - 1;
  int e = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  Fel z = pow(nonsquare_, m);  // order 2^e
  Fel y = pow(x, (m + 1) / 2);
  Fel b = pow(x, m);
  int r = e;
  while (b != one()) {
    int k = 0;
    Fel t = b;
    while (t != one()) {
      t = mul(t, t);
      ++k;
    }
    Fel zz = z;
    for (int i = 0; i < r - k - 1; ++i) zz = mul(zz, zz);
    y = mul(y, zz);
    z = mul(zz, zz);
    b = mul(b, z);
    r = k;
  }
  return y;
}

Fq2::Fq2(const Fq& base, std::optional<Fel> beta_sq) : F_(&base) {
  n_ = beta_sq.value_or(base.nonsquare());
  if (n_.v == 0 || base.is_square(n_)) fail("InvalidParams", "beta^2 must be a non-square of F_q");
  mu_gen_ = find_mu_generator();
}

Ext Fq2::mul(Ext a, Ext b) const {
  const Fq& F = *F_;
  Fel t0 = F.mul(a.c0, b.c0);
  Fel t1 = F.mul(a.c1, b.c1);
  Fel c0 = F.add(t0, F.mul(n_, t1));
  Fel c1 = F.add(F.mul(a.c0, b.c1), F.mul(a.c1, b.c0));
  return {c0, c1};
}

Fel Fq2::norm(Ext a) const {
  const Fq& F = *F_;
  return F.sub(F.mul(a.c0, a.c0), F.mul(n_, F.mul(a.c1, a.c1)));
}

Ext Fq2::inv(Ext a) const {
  if (is_zero(a)) fail("ZeroInput", "inverse of zero");
  Fel ninv = F_->inv(norm(a));
  return {F_->mul(a.c0, ninv), F_->neg(F_->mul(a.c1, ninv))};
}

Ext Fq2::pow(Ext a, u64 e) const {
  Ext r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

bool Fq2::in_mu(Ext v) const {
  if (is_zero(v)) return false;
  return pow(v, q() + 1) == one();
}

Ext Fq2::find_mu_generator() const {
  // least primitive element of F_{q^2} in canonical (c1, c0) order
  u64 qq = q();
  u64 order = qq * qq - 1;
  auto fac = factorize(order);
  for (u64 v1 = 0; v1 < qq; ++v1) {
    for (u64 v0 = 0; v0 < qq; ++v0) {
      if (v0 == 0 && v1 == 0) continue;
      Ext g{Fel{v0}, Fel{v1}};
      bool primitive = true;
      for (auto [r, e] : fac) {
        if (pow(g, order / r) == one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) return pow(g, qq - 1);
    }
  }
  fail("InternalAssertionFailure", "no primitive element found");
}

bool Fq2::is_mth_power_in_mu(Ext v, u64 m) const {
  if (!in_mu(v)) fail("NotInMu", "element is not in mu_{q+1}");
  if (m == 0 || (q() + 1) % m != 0) fail("InvalidParams", "m must divide q+1");
  return pow(v, (q() + 1) / m) == one();
}

}  // namespace nodalarcs::gf
