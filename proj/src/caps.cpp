#include "nodalarcs/caps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "nodalarcs/sampling.hpp"

namespace nodalarcs::caps {

namespace {

using FqPoly = std::vector<Fel>;

FqPoly fq_poly_mul_mod(const Fq& F, const FqPoly& a, const FqPoly& b, const FqPoly& f) {
  FqPoly c(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  std::size_t d = f.size() - 1;
  for (std::size_t k = c.size(); k-- > d;) {
    Fel coef = c[k];
    if (coef.v == 0) continue;
    c[k] = F.zero();
    for (std::size_t i = 0; i < d; ++i)
      c[k - d + i] = F.sub(c[k - d + i], F.mul(coef, f[i]));
  }
  c.resize(d, F.zero());
  return c;
}

FqPoly fq_poly_pow_x(const Fq& F, u64 e, const FqPoly& f) {
  std::size_t d = f.size() - 1;
  FqPoly result(d, F.zero()), base(d, F.zero());
  result[0] = F.one();
  if (d == 1) {
    base[0] = F.neg(f[0]);
  } else {
    base[1] = F.one();
  }
  while (e) {
    if (e & 1) result = fq_poly_mul_mod(F, result, base, f);
    base = fq_poly_mul_mod(F, base, base, f);
    e >>= 1;
  }
  return result;
}

int fq_poly_deg(const FqPoly& p) {
  for (int i = int(p.size()) - 1; i >= 0; --i)
    if (p[i].v) return i;
  return -1;
}

FqPoly fq_poly_gcd(const Fq& F, FqPoly a, FqPoly b) {
  while (fq_poly_deg(b) >= 0) {
    int da = fq_poly_deg(a), db = fq_poly_deg(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    Fel fac = F.div(a[da], b[db]);
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = F.sub(a[da - db + i], F.mul(fac, b[i]));
  }
  return a;
}

bool fq_poly_irreducible(const Fq& F, const FqPoly& f) {
  std::size_t d = f.size() - 1;
  if (d == 1) return true;
  u64 qd = 1;
  for (std::size_t i = 0; i < d; ++i) qd *= F.q();
  FqPoly xq = fq_poly_pow_x(F, qd, f);
  FqPoly x(d, F.zero());
  x[1] = F.one();
  if (xq != x) return false;
  for (auto [r, e] : factorize(d)) {
    (void)e;
    u64 qe = 1;
    for (std::size_t i = 0; i < d / r; ++i) qe *= F.q();
    FqPoly g = fq_poly_pow_x(F, qe, f);
    g[1] = F.sub(g[1], F.one());
    if (fq_poly_deg(fq_poly_gcd(F, f, g)) != 0) return false;
  }
  return true;
}

}  // namespace

LiftField::LiftField(const Fq& base, u64 ext_degree, std::optional<std::vector<Fel>> modulus)
    : F_(&base), e_(ext_degree) {
  if (e_ < 1 || e_ > 8) fail("InvalidParams", "lift degree out of range");
  qp_ = 1;
  for (u64 i = 0; i < e_; ++i) {
    if (qp_ > (u64{1} << 40) / base.q()) fail("InvalidParams", "q' too large");
    qp_ *= base.q();
  }
  if (modulus) {
    mod_ = *modulus;
    if (mod_.size() != e_ + 1 || mod_[e_] != base.one())
      fail("InvalidParams", "modulus must be monic of the lift degree");
    if (e_ > 1 && !fq_poly_irreducible(base, mod_))
      fail("InvalidParams", "modulus is reducible over F_q");
  } else if (e_ == 1) {
    mod_ = {base.zero(), base.one()};  // slot unused
  } else {
    // least monic irreducible, constant block scanned in packed order
    for (u64 c = 0;; ++c) {
      if (c >= qp_) fail("InternalAssertionFailure", "no irreducible modulus found");
      FqPoly f(e_ + 1, base.zero());
      f[e_] = base.one();
      u64 t = c;
      for (u64 i = 0; i < e_; ++i) {
        f[i] = Fel{t % base.q()};
        t /= base.q();
      }
      if (fq_poly_irreducible(base, f)) {
        mod_ = f;
        break;
      }
    }
  }
  if (e_ > 1) {
    xred_.resize(e_ - 1);
    FqPoly row(e_);
    for (u64 i = 0; i < e_; ++i) row[i] = F_->neg(mod_[i]);
    xred_[0] = row;
    for (u64 j = 1; j + 1 < e_; ++j) {
      FqPoly next(e_, F_->zero());
      Fel carry = row[e_ - 1];
      for (u64 i = e_ - 1; i > 0; --i) next[i] = row[i - 1];
      if (carry.v) {
        for (u64 i = 0; i < e_; ++i)
          next[i] = F_->add(next[i], F_->mul(carry, xred_[0][i]));
      }
      xred_[j] = next;
      row = next;
    }
  }
  // least non-square under the packed order
  tau_ = 0;
  for (El a = 1; a < qp_; ++a) {
    if (!is_square(a)) {
      tau_ = a;
      break;
    }
  }
  if (tau_ == 0) fail("InternalAssertionFailure", "no non-square found in F_{q'}");
}

std::vector<Fel> LiftField::flatten(El a) const {
  std::vector<Fel> c(e_);
  for (u64 i = 0; i < e_; ++i) {
    c[i] = Fel{a % F_->q()};
    a /= F_->q();
  }
  return c;
}

LiftField::El LiftField::unflatten(std::span<const Fel> c) const {
  if (c.size() != e_) fail("InvalidParams", "wrong coefficient count");
  El a = 0;
  for (u64 i = e_; i-- > 0;) a = a * F_->q() + c[i].v;
  return a;
}

LiftField::El LiftField::add(El a, El b) const {
  auto ca = flatten(a), cb = flatten(b);
  for (u64 i = 0; i < e_; ++i) ca[i] = F_->add(ca[i], cb[i]);
  return unflatten(ca);
}

LiftField::El LiftField::sub(El a, El b) const {
  auto ca = flatten(a), cb = flatten(b);
  for (u64 i = 0; i < e_; ++i) ca[i] = F_->sub(ca[i], cb[i]);
  return unflatten(ca);
}

LiftField::El LiftField::neg(El a) const { return sub(0, a); }

LiftField::El LiftField::mul(El a, El b) const {
  if (e_ == 1) return F_->mul(Fel{a}, Fel{b}).v;
  auto ca = flatten(a), cb = flatten(b);
  std::vector<Fel> conv(2 * e_ - 1, F_->zero());
  for (u64 i = 0; i < e_; ++i) {
    if (!ca[i].v) continue;
    for (u64 j = 0; j < e_; ++j) conv[i + j] = F_->add(conv[i + j], F_->mul(ca[i], cb[j]));
  }
  std::vector<Fel> out(conv.begin(), conv.begin() + e_);
  for (u64 k = e_; k < conv.size(); ++k) {
    if (!conv[k].v) continue;
    const FqPoly& row = xred_[k - e_];
    for (u64 i = 0; i < e_; ++i) out[i] = F_->add(out[i], F_->mul(conv[k], row[i]));
  }
  return unflatten(out);
}

LiftField::El LiftField::pow(El a, u64 e) const {
  El r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

LiftField::El LiftField::inv(El a) const {
  if (a == 0) fail("ZeroInput", "inverse of zero");
  return pow(a, qp_ - 2);
}

bool LiftField::is_square(El a) const {
  if (a == 0) fail("ZeroInput", "zero is neither a square nor a non-square");
  return pow(a, (qp_ - 1) / 2) == 1;
}

Cap lift_arc(const LiftField& L, std::span<const PlanePoint> arc, u64 N) {
  if (N % 4 != 0 || N < 4) fail("InvalidParams", "N must be a positive multiple of 4");
  if (L.ext_degree() != (N - 2) / 2)
    fail("InvalidParams", "lift degree must equal (N-2)/2");
  if (!geom::is_arc(L.base(), arc).ok) fail("NotAnArc", "lift input is not an arc");
  Cap cap;
  cap.N = N;
  cap.points.reserve(arc.size() * L.qp());
  for (LiftField::El alpha = 0; alpha < L.qp(); ++alpha) {
    auto a1 = L.flatten(alpha);
    auto a2 = L.flatten(L.mul(alpha, alpha));
    for (const PlanePoint& uv : arc) {
      std::vector<Fel> pt;
      pt.reserve(N);
      pt.insert(pt.end(), a1.begin(), a1.end());
      pt.insert(pt.end(), a2.begin(), a2.end());
      pt.push_back(uv.x);
      pt.push_back(uv.y);
      cap.points.push_back(std::move(pt));
    }
  }
  return cap;
}

Cap complete_with_center(const LiftField& L, const Cap& cap, const PlanePoint& center,
                         CenterClass cls) {
  if (cap.completion != "none") fail("InvalidParams", "cap is already completed");
  LiftField::El tau = L.least_nonsquare();
  LiftField::El shift = (cls == CenterClass::External) ? tau : L.mul(tau, tau);
  Cap out = cap;
  out.completion = (cls == CenterClass::External) ? "tau" : "tau2";
  for (LiftField::El alpha = 0; alpha < L.qp(); ++alpha) {
    auto a1 = L.flatten(alpha);
    auto a2 = L.flatten(L.sub(L.mul(alpha, alpha), shift));
    std::vector<Fel> pt;
    pt.reserve(cap.N);
    pt.insert(pt.end(), a1.begin(), a1.end());
    pt.insert(pt.end(), a2.begin(), a2.end());
    pt.push_back(center.x);
    pt.push_back(center.y);
    out.points.push_back(std::move(pt));
  }
  return out;
}

namespace {

// canonical index of a projective direction in F_q^N: leading coordinate
// scaled to 1, remaining digits read as a base-q number, blocks stacked
// by the position of the leading 1
struct DirIndexer {
  u64 N, q, total = 0;
  std::vector<u64> offset;

  DirIndexer(u64 n, u64 qq) : N(n), q(qq), offset(n) {
    for (u64 l = 0; l < N; ++l) {
      offset[l] = total;
      u64 block = 1;
      for (u64 i = l + 1; i < N; ++i) block *= q;
      total += block;
    }
  }

  // d has at least one non-zero coordinate
  u64 index(const Fq& F, const Fel* d) const {
    u64 l = 0;
    while (d[l].v == 0) ++l;
    Fel s = F.inv(d[l]);
    u64 idx = 0;
    for (u64 i = l + 1; i < N; ++i) idx = idx * q + F.mul(d[i], s).v;
    return offset[l] + idx;
  }
};

u64 point_index(const std::vector<Fel>& pt, u64 q) {
  u64 idx = 0;
  for (std::size_t t = pt.size(); t-- > 0;) idx = idx * q + pt[t].v;
  return idx;
}

}  // namespace

CapCheck is_cap(const Fq& F, const Cap& cap) {
  const u64 N = cap.N, q = F.q();
  const std::size_t k = cap.points.size();
  DirIndexer DI(N, q);
  const bool stamped = DI.total <= (u64{1} << 23);
  std::vector<std::uint32_t> stamp, firstj;
  if (stamped) {
    stamp.assign(DI.total, 0);
    firstj.assign(DI.total, 0);
  }
  std::unordered_map<u64, std::size_t> seen;  // large-space fallback
  std::vector<Fel> d(N);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& Pi = cap.points[i];
    if (!stamped) seen.clear();
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& Pj = cap.points[j];
      bool zero = true;
      for (u64 t = 0; t < N; ++t) {
        d[t] = F.sub(Pj[t], Pi[t]);
        zero = zero && d[t].v == 0;
      }
      if (zero) return {false, {Pi, Pj, Pj}};
      u64 idx = DI.index(F, d.data());
      if (stamped) {
        if (stamp[idx] == std::uint32_t(i + 1))
          return {false, {Pi, cap.points[firstj[idx]], Pj}};
        stamp[idx] = std::uint32_t(i + 1);
        firstj[idx] = std::uint32_t(j);
      } else {
        auto [it, inserted] = seen.emplace(idx, j);
        if (!inserted) return {false, {Pi, cap.points[it->second], Pj}};
      }
    }
  }
  return {};
}

CoverageReport cap_coverage(const Fq& F, const Cap& cap, geom::VerifyMode mode, u64 samples,
                            u64 seed, unsigned threads) {
  const u64 N = cap.N, q = F.q();
  if (!is_cap(F, cap).ok) fail("NotACap", "coverage input is not a cap");
  CoverageReport rep;
  rep.mode = mode;
  rep.seed = seed;

  std::vector<u64> members;
  members.reserve(cap.points.size());
  for (const auto& pt : cap.points) members.push_back(point_index(pt, q));
  std::sort(members.begin(), members.end());
  auto in_cap = [&](u64 idx) {
    return std::binary_search(members.begin(), members.end(), idx);
  };

  if (mode == geom::VerifyMode::Exhaustive) {
    u128 ambient = 1;
    for (u64 t = 0; t < N; ++t) ambient *= q;
    if (ambient > 1000000000ull) fail("InvalidParams", "exhaustive guard: q^N <= 10^9");
    u64 total = u64(ambient);
    std::vector<u64> bits((total + 63) / 64, 0);
    std::vector<Fel> d(N), pt(N);
    const std::size_t k = cap.points.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        for (u64 t = 0; t < N; ++t) d[t] = F.sub(cap.points[j][t], cap.points[i][t]);
        for (u64 lv = 0; lv < q; ++lv) {
          Fel lambda{lv};
          u64 idx = 0;
          for (u64 t = N; t-- > 0;)
            idx = idx * q + F.add(cap.points[i][t], F.mul(lambda, d[t])).v;
          bits[idx >> 6] |= u64{1} << (idx & 63);
        }
      }
    }
    u64 covered = 0;
    for (u64 idx = 0; idx < total; ++idx) {
      if ((bits[idx >> 6] >> (idx & 63)) & 1) {
        if (!in_cap(idx)) ++covered;
      }
    }
    rep.scanned = total - cap.points.size();
    rep.covered = covered;
    rep.exhaustive_complete = (covered == rep.scanned);
    return rep;
  }

  // sampled mode: seeded point stream, one draw per coordinate
  rep.samples = samples;
  LcgStream rng(seed);
  std::vector<u64> coords(samples * N);
  for (u64 i = 0; i < samples * N; ++i) coords[i] = rng.next_mod(q);

  DirIndexer DI(N, q);
  if (DI.total > (u64{1} << 23))
    fail("InvalidParams", "direction space too large for sampled coverage");
  const std::size_t k = cap.points.size();

  // flat cap coordinates for the hot loop
  std::vector<std::uint32_t> flat(k * N);
  for (std::size_t i = 0; i < k; ++i)
    for (u64 t = 0; t < N; ++t) flat[i * N + t] = std::uint32_t(cap.points[i][t].v);

  std::size_t nchunks = std::min<std::size_t>(threads ? threads : 1, samples ? samples : 1);
  std::vector<u64> covered_per(nchunks, 0), scanned_per(nchunks, 0);

  const bool fast = (F.s() == 1 && q <= 1024);
  std::vector<std::uint16_t> multab;
  std::vector<std::uint16_t> invtab;
  if (fast) {
    multab.resize(q * q);
    for (u64 a = 0; a < q; ++a)
      for (u64 b = 0; b < q; ++b) multab[a * q + b] = std::uint16_t(a * b % q);
    invtab.resize(q);
    for (u64 a = 1; a < q; ++a) invtab[a] = std::uint16_t(F.inv(Fel{a}).v);
  }

  // direction-duplicate detection per sample: direct stamps for small
  // direction spaces, a generation-stamped open-addressing table (kept
  // cache-resident) for large ones
  const bool direct = DI.total <= (u64{1} << 20);
  std::uint32_t tab_size = 1024;
  while (tab_size < 4 * k) tab_size <<= 1;
  const std::uint32_t tab_mask = tab_size - 1;
  struct Slot {
    std::uint32_t gen, key;
  };

  run_chunks(threads, samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> stamp(direct ? DI.total : 0, 0);
    std::vector<Slot> tab(direct ? 0 : tab_size, Slot{0, 0});
    std::uint32_t gen = 0;
    std::vector<Fel> dfel(N);
    auto probe = [&](u64 idx) {
      // returns true when idx was already recorded for this sample
      if (direct) {
        if (stamp[idx] == gen) return true;
        stamp[idx] = gen;
        return false;
      }
      std::uint32_t key = std::uint32_t(idx);
      std::uint32_t h = (key * 2654435761u) & tab_mask;
      while (tab[h].gen == gen) {
        if (tab[h].key == key) return true;
        h = (h + 1) & tab_mask;
      }
      tab[h] = {gen, key};
      return false;
    };
    for (std::size_t sidx = begin; sidx < end; ++sidx) {
      const u64* pc = &coords[sidx * N];
      u64 pidx = 0;
      for (u64 t = N; t-- > 0;) pidx = pidx * q + pc[t];
      if (in_cap(pidx)) continue;
      ++scanned_per[c];
      ++gen;
      bool covered = false;
      if (fast) {
        for (std::size_t i = 0; i < k && !covered; ++i) {
          const std::uint32_t* cp = &flat[i * N];
          u64 l = N;
          std::uint32_t d[16];
          for (u64 t = 0; t < N; ++t) {
            std::uint32_t dv = cp[t] + std::uint32_t(q) - std::uint32_t(pc[t]);
            if (dv >= q) dv -= std::uint32_t(q);
            d[t] = dv;
            if (dv != 0 && l == N) l = t;
          }
          const std::uint16_t* row = &multab[u64(invtab[d[l]]) * q];
          u64 idx = 0;
          for (u64 t = l + 1; t < N; ++t) idx = idx * q + row[d[t]];
          idx += DI.offset[l];
          covered = probe(idx);
        }
      } else {
        for (std::size_t i = 0; i < k && !covered; ++i) {
          for (u64 t = 0; t < N; ++t) dfel[t] = F.sub(cap.points[i][t], Fel{pc[t]});
          covered = probe(DI.index(F, dfel.data()));
        }
      }
      if (covered) ++covered_per[c];
    }
  });
  for (std::size_t c = 0; c < nchunks; ++c) {
    rep.scanned += scanned_per[c];
    rep.covered += covered_per[c];
  }
  return rep;
}

CapArtifact build_complete_cap(const Fq2& E, u64 m1, u64 m2, u64 N, unsigned threads) {
  const Fq& F = E.base();
  if (N % 4 != 0 || N < 4) fail("InvalidParams", "N must be a positive multiple of 4");
  CapArtifact out;
  out.N = N;
  out.arc = arcs::build_almost_bicovering(E, m1 * m2, m1, m2);
  if (!out.arc.center) fail("InternalAssertionFailure", "bicovering arc lacks a center");
  geom::BicoverReport rep =
      geom::bicover_classify(F, out.arc.points, geom::VerifyMode::Exhaustive, 0, 0, threads);
  const PlanePoint center = *out.arc.center;
  bool ext = std::find(rep.external_only.begin(), rep.external_only.end(), center) !=
             rep.external_only.end();
  bool intr = std::find(rep.internal_only.begin(), rep.internal_only.end(), center) !=
              rep.internal_only.end();
  if (!ext && !intr)
    fail("CenterNotACenter",
         "declared center is not classified external-only or internal-only");
  CenterClass cls = ext ? CenterClass::External : CenterClass::Internal;
  out.center_class = ext ? "external" : "internal";

  LiftField L(F, (N - 2) / 2);
  out.lift_modulus = L.modulus();
  out.tau = L.least_nonsquare();
  Cap lifted = lift_arc(L, out.arc.points, N);
  out.cap = complete_with_center(L, lifted, center, cls);
  out.flags = out.arc.flags;
  return out;
}

}  // namespace nodalarcs::caps
