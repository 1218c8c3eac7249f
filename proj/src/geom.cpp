#include "nodalarcs/geom.hpp"

#include <algorithm>
#include <set>

#include "nodalarcs/sampling.hpp"

namespace nodalarcs::geom {

bool collinear3(const Fq& F, const PlanePoint& P, const PlanePoint& Q, const PlanePoint& R) {
  // det [[xP,yP,1],[xQ,yQ,1],[xR,yR,1]]
  Fel a = F.mul(F.sub(Q.x, P.x), F.sub(R.y, P.y));
  Fel b = F.mul(F.sub(R.x, P.x), F.sub(Q.y, P.y));
  return a == b;
}

SegPos segment_position(const Fq& F, const PlanePoint& P, const PlanePoint& P1,
                        const PlanePoint& P2) {
  if (!collinear3(F, P, P1, P2)) return SegPos::NotCollinear;
  // coordinate functional on the line: x unless the line is vertical
  bool use_y = (P.x == P1.x && P.x == P2.x);
  Fel a = use_y ? P.y : P.x;
  Fel a1 = use_y ? P1.y : P1.x;
  Fel a2 = use_y ? P2.y : P2.x;
  Fel t = F.mul(F.sub(a, a1), F.sub(a, a2));
  if (t.v == 0) return SegPos::Endpoint;
  return F.is_square(t) ? SegPos::External : SegPos::Internal;
}

namespace {

// normalized direction key in [0, q]: slope dy/dx, or q for vertical
inline u64 direction_key(const Fq& F, const PlanePoint& from, const PlanePoint& to) {
  Fel dx = F.sub(to.x, from.x);
  Fel dy = F.sub(to.y, from.y);
  if (dx.v == 0) return F.q();
  return F.mul(dy, F.inv(dx)).v;
}

}  // namespace

ArcCheck is_arc(const Fq& F, std::span<const PlanePoint> S) {
  const std::size_t k = S.size();
  const std::size_t none = ~std::size_t{0};
  std::vector<std::size_t> stamp(F.q() + 1, none);
  std::vector<std::size_t> first(F.q() + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (S[i] == S[j]) return {false, {S[i], S[j], S[j]}};
      u64 key = direction_key(F, S[i], S[j]);
      if (stamp[key] == i) return {false, {S[i], S[first[key]], S[j]}};
      stamp[key] = i;
      first[key] = j;
    }
  }
  return {};
}

namespace {

struct Classified {
  std::vector<PlanePoint> uncovered, external_only, internal_only;
  u64 bicovered = 0;
  u64 scanned = 0;
};

// classify one ambient point off S against all secants of S through it;
// an arc puts at most two points on any line, so each direction bucket
// holds at most one earlier point
void classify_point(const Fq& F, std::span<const PlanePoint> S, const PlanePoint& P,
                    std::vector<u64>& keys, std::vector<std::size_t>& partner,
                    Classified& out) {
  bool has_ext = false, has_int = false;
  const std::size_t none = ~std::size_t{0};
  for (std::size_t i = 0; i < S.size(); ++i) {
    u64 key = direction_key(F, P, S[i]);
    keys[i] = key;
    std::size_t prev = partner[key];
    if (prev != none) {
      SegPos pos = segment_position(F, P, S[prev], S[i]);
      if (pos == SegPos::External) has_ext = true;
      else if (pos == SegPos::Internal) has_int = true;
    }
    partner[key] = i;
  }
  for (std::size_t i = 0; i < S.size(); ++i) partner[keys[i]] = none;
  ++out.scanned;
  if (has_ext && has_int) ++out.bicovered;
  else if (has_ext) out.external_only.push_back(P);
  else if (has_int) out.internal_only.push_back(P);
  else out.uncovered.push_back(P);
}

}  // namespace

BicoverReport bicover_classify(const Fq& F, std::span<const PlanePoint> S, VerifyMode mode,
                               u64 samples, u64 seed, unsigned threads) {
  if (!is_arc(F, S).ok) fail("NotAnArc", "bicover_classify input is not an arc");
  const u64 q = F.q();
  std::vector<u64> members;
  members.reserve(S.size());
  for (const auto& s : S) members.push_back(s.x.v * q + s.y.v);
  std::sort(members.begin(), members.end());
  auto in_S = [&](const PlanePoint& P) {
    return std::binary_search(members.begin(), members.end(), P.x.v * q + P.y.v);
  };

  BicoverReport rep;
  rep.arc_size = S.size();
  rep.mode = mode;
  rep.seed = seed;

  std::vector<PlanePoint> sample_points;
  std::size_t total;
  if (mode == VerifyMode::Sample) {
    rep.samples = samples;
    LcgStream rng(seed);
    sample_points.reserve(samples);
    for (u64 i = 0; i < samples; ++i) {
      Fel x{rng.next_mod(q)};
      Fel y{rng.next_mod(q)};
      sample_points.push_back({x, y});
    }
    total = sample_points.size();
  } else {
    total = std::size_t(q) * q;
  }

  std::size_t nchunks = std::min<std::size_t>(threads ? threads : 1, total ? total : 1);
  std::vector<Classified> parts(nchunks);
  run_chunks(threads, total, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Classified& out = parts[c];
    std::vector<u64> keys(S.size());
    std::vector<std::size_t> partner(q + 2, ~std::size_t{0});
    for (std::size_t idx = begin; idx < end; ++idx) {
      PlanePoint P = (mode == VerifyMode::Sample)
                         ? sample_points[idx]
                         : PlanePoint{Fel{u64(idx) / q}, Fel{u64(idx) % q}};
      if (in_S(P)) continue;
      classify_point(F, S, P, keys, partner, out);
    }
  });

  for (const auto& part : parts) {
    rep.scanned += part.scanned;
    rep.bicovered_count += part.bicovered;
    rep.uncovered.insert(rep.uncovered.end(), part.uncovered.begin(), part.uncovered.end());
    rep.external_only.insert(rep.external_only.end(), part.external_only.begin(),
                             part.external_only.end());
    rep.internal_only.insert(rep.internal_only.end(), part.internal_only.begin(),
                             part.internal_only.end());
  }

  if (mode == VerifyMode::Exhaustive) {
    std::size_t not_bicovered =
        rep.uncovered.size() + rep.external_only.size() + rep.internal_only.size();
    rep.is_bicovering = (not_bicovered == 0);
    rep.almost_bicovering = (not_bicovered == 1);
    if (rep.almost_bicovering) {
      if (!rep.uncovered.empty()) rep.center_candidate = rep.uncovered.front();
      else if (!rep.external_only.empty()) rep.center_candidate = rep.external_only.front();
      else rep.center_candidate = rep.internal_only.front();
    }
  }
  return rep;
}

std::vector<PlanePoint> exceptional_set(const Fq& F, Fel beta_sq) {
  std::vector<PlanePoint> out;
  // (0, -9/(8 beta^2))
  Fel y0 = F.div(F.from_int(-9), F.mul(F.from_int(8), beta_sq));
  out.push_back({F.zero(), y0});
  bool m3_nonsquare = !F.is_square(F.from_int(-3));
  bool criterion = (F.s() % 2 == 1) && (F.p() % 3 == 2);
  if (m3_nonsquare != criterion)
    fail("InternalAssertionFailure", "-3 square criterion mismatch");
  if (m3_nonsquare) {
    // beta sqrt(-3) lies in F_q: it is a square root of -3 beta^2,
    // a product of two non-squares
    Fel r = F.sqrt(F.mul(F.from_int(-3), beta_sq));
    out.push_back({r, F.zero()});
    out.push_back({F.neg(r), F.zero()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool exceptional_points_clear(const Fq& F, Fel beta_sq) {
  if (F.q() > 10000) fail("InvalidParams", "exhaustive guard: q <= 10^4");
  std::vector<PlanePoint> curve;
  curve.reserve(F.q());
  for (u64 uv = 0; uv < F.q(); ++uv) {
    Fel u{uv};
    curve.push_back({u, F.inv(F.sub(F.mul(u, u), beta_sq))});
  }
  for (const PlanePoint& e : exceptional_set(F, beta_sq)) {
    for (std::size_t i = 0; i < curve.size(); ++i)
      for (std::size_t j = i + 1; j < curve.size(); ++j)
        if (collinear3(F, e, curve[i], curve[j])) return false;
  }
  return true;
}

}  // namespace nodalarcs::geom
