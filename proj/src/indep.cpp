#include "nodalarcs/indep.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nodalarcs::indep {

u64 AbelianGroup::index_of(const Elem& e) const {
  u64 idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i] + e[i];
  return idx;
}

AbelianGroup::Elem AbelianGroup::elem_at(u64 idx) const {
  Elem e(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    e[i] = idx % factors[i];
    idx /= factors[i];
  }
  return e;
}

u64 AbelianGroup::add(u64 a, u64 b) const { return index_of(add_e(elem_at(a), elem_at(b))); }
u64 AbelianGroup::neg(u64 a) const { return index_of(neg_e(elem_at(a))); }
u64 AbelianGroup::scalar(i64 c, u64 a) const { return index_of(scalar_e(c, elem_at(a))); }
u64 AbelianGroup::order_of(u64 a) const { return order_of_e(elem_at(a)); }

AbelianGroup::Elem AbelianGroup::add_e(const Elem& a, const Elem& b) const {
  Elem c(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    c[i] = a[i] + b[i];
    if (c[i] >= factors[i]) c[i] -= factors[i];
  }
  return c;
}

AbelianGroup::Elem AbelianGroup::neg_e(const Elem& a) const {
  Elem c(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) c[i] = a[i] ? factors[i] - a[i] : 0;
  return c;
}

AbelianGroup::Elem AbelianGroup::scalar_e(i64 c, const Elem& a) const {
  Elem out(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    i64 m = i64(factors[i]);
    i64 r = (i64(a[i]) % m) * (c % m) % m;
    if (r < 0) r += m;
    out[i] = u64(r);
  }
  return out;
}

u64 AbelianGroup::order_of_e(const Elem& a) const {
  u64 ord = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    u64 oi = factors[i] / std::gcd(factors[i], a[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

namespace {

std::vector<u64> member_indices(const AbelianGroup& G,
                                const std::vector<AbelianGroup::Elem>& members) {
  std::vector<u64> idx;
  idx.reserve(members.size());
  for (const auto& e : members) {
    if (!G.valid(e)) fail("InvalidParams", "element outside the group");
    idx.push_back(G.index_of(e));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

Indep3Check check_indices(const AbelianGroup& G, const std::vector<u64>& m) {
  const u64 n = G.order();
  Indep3Check out;
  if (m.empty()) return out;
  // (a) with repetition
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      u64 sij = G.add(m[i], m[j]);
      for (std::size_t k = j; k < m.size(); ++k)
        if (G.add(sij, m[k]) == 0) return out;
    }
  // (b): -(x1+x2) covers everything outside M
  std::vector<char> in(n, 0), any(n, 0), distinct(n, 0);
  for (u64 x : m) in[x] = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      u64 y = G.neg(G.add(m[i], m[j]));
      any[y] = 1;
      if (i != j) distinct[y] = 1;
    }
  bool maximal = true, good = true;
  for (u64 y = 0; y < n; ++y) {
    if (in[y]) continue;
    if (!any[y]) maximal = false;
    if (!distinct[y]) good = false;
  }
  out.maximal = maximal;
  out.good = maximal && good;
  return out;
}

IndepSet make_set(const AbelianGroup& G, std::vector<u64> idx, bool good) {
  std::sort(idx.begin(), idx.end());
  IndepSet out;
  out.group = G;
  out.good = good;
  for (u64 i : idx) out.members.push_back(G.elem_at(i));
  return out;
}

}  // namespace

Indep3Check is_maximal_3indep(const AbelianGroup& G,
                              const std::vector<AbelianGroup::Elem>& members) {
  return check_indices(G, member_indices(G, members));
}

IndepSet build_two_block_3indep(const AbelianGroup& G, const AbelianGroup::Elem& R,
                       const AbelianGroup::Elem& Rp) {
  if (G.factors.size() != 2) fail("InvalidParams", "need a two-factor product group");
  u64 nK = G.factors[0], nH = G.factors[1];
  if (std::gcd(nK, nH) != 1) fail("InvalidParams", "factor orders must be coprime");
  if (!G.valid(R) || !G.valid(Rp) || R[1] != 0 || Rp[0] != 0)
    fail("InvalidParams", "R must lie in the first factor, Rp in the second");
  if (G.order_of_e(R) <= 3 || G.order_of_e(Rp) <= 3)
    fail("OrderTooSmall", "R and Rp must have order greater than 3");

  AbelianGroup::Elem T = G.add_e(Rp, G.scalar_e(-2, R));
  auto assemble = [&](const AbelianGroup::Elem& cut) {
    std::set<u64> members;
    for (u64 k = 0; k < nK; ++k) {
      AbelianGroup::Elem e = G.add_e({k, 0}, T);
      if (e != T) members.insert(G.index_of(e));
    }
    for (u64 h = 0; h < nH; ++h) {
      AbelianGroup::Elem e = G.add_e({0, h}, R);
      if (e != cut) members.insert(G.index_of(e));
    }
    return std::vector<u64>(members.begin(), members.end());
  };

  // The stated removal -2T+R = 5R - 2Rp blocks the mixed triple
  // (k1+T) + (k2+T) + (h+R) = 0, which needs k1+k2 = 3R and h = -2Rp,
  // only when 4R = 0. The element forced out in general is R - 2Rp; try
  // the stated set first, then the repaired one, certifying each.
  std::vector<u64> stated = assemble(G.add_e(G.scalar_e(-2, T), R));
  Indep3Check chk = check_indices(G, stated);
  if (chk.good) return make_set(G, stated, true);
  std::vector<u64> repaired = assemble(G.add_e(R, G.scalar_e(-2, Rp)));
  chk = check_indices(G, repaired);
  if (chk.good) return make_set(G, repaired, true);
  fail("ConstructionUncertified", "two-block set failed certification");
}

namespace {

struct Search {
  const AbelianGroup& G;
  u64 n, target;
  bool require_good = true;
  std::vector<u64> neg2;       // index of -(2x)
  std::vector<char> tri;       // 3x == 0
  std::vector<char> forbid;    // excluded elements
  std::vector<char> inS;
  std::vector<char> B;         // -(S+S), repetition allowed
  std::vector<u64> S;
  std::vector<u64> undo;       // flattened with level marks below
  std::vector<std::size_t> undo_mark;
  std::vector<std::vector<u64>> addrow;  // add table when affordable

  explicit Search(const AbelianGroup& g, u64 tgt, const std::vector<char>& forb)
      : G(g), n(g.order()), target(tgt), forbid(forb) {
    neg2.resize(n);
    tri.resize(n);
    for (u64 x = 0; x < n; ++x) {
      neg2[x] = G.neg(G.add(x, x));
      tri[x] = (G.add(G.add(x, x), x) == 0);
    }
    inS.assign(n, 0);
    B.assign(n, 0);
    if (n <= 2048) {
      addrow.assign(n, {});
      for (u64 a = 0; a < n; ++a) {
        addrow[a].resize(n);
        for (u64 b = 0; b < n; ++b) addrow[a][b] = G.add(a, b);
      }
    }
  }

  u64 add(u64 a, u64 b) const { return addrow.empty() ? G.add(a, b) : addrow[a][b]; }

  void push(u64 w) {
    undo_mark.push_back(undo.size());
    S.push_back(w);
    inS[w] = 1;
    for (u64 x : S) {
      u64 y = G.neg(add(w, x));
      if (!B[y]) {
        B[y] = 1;
        undo.push_back(y);
      }
    }
  }

  void pop() {
    u64 w = S.back();
    S.pop_back();
    inS[w] = 0;
    std::size_t mark = undo_mark.back();
    undo_mark.pop_back();
    while (undo.size() > mark) {
      B[undo.back()] = 0;
      undo.pop_back();
    }
  }

  mutable std::vector<u64> any_gen, distinct_gen;
  mutable u64 gen = 0;

  bool leaf_good_maximal() const {
    if (any_gen.empty()) {
      any_gen.assign(n, 0);
      distinct_gen.assign(n, 0);
    }
    ++gen;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i; j < S.size(); ++j) {
        u64 y = G.neg(add(S[i], S[j]));
        any_gen[y] = gen;
        if (i != j) distinct_gen[y] = gen;
      }
    for (u64 y = 0; y < n; ++y) {
      if (inS[y]) continue;
      if (any_gen[y] != gen) return false;
      if (require_good && distinct_gen[y] != gen) return false;
    }
    return true;
  }

  bool rec(u64 start) {
    if (S.size() == target) return leaf_good_maximal();
    if (S.size() + (n - start) < target) return false;
    for (u64 w = start; w < n; ++w) {
      if (forbid[w] || B[w] || tri[w] || inS[neg2[w]]) continue;
      push(w);
      if (rec(w + 1)) return true;
      pop();
    }
    return false;
  }
};

}  // namespace

IndepSet exhaustive_3indep_search(const AbelianGroup& G, u64 target_size,
                                  const std::vector<AbelianGroup::Elem>& forbidden) {
  if (G.order() > 10000) fail("InvalidParams", "search guard: |G| <= 10^4");
  std::vector<char> forb(G.order(), 0);
  for (const auto& e : forbidden) {
    if (!G.valid(e)) fail("InvalidParams", "forbidden element outside the group");
    forb[G.index_of(e)] = 1;
  }
  Search s(G, target_size, forb);
  if (!s.rec(0)) fail("NotFound", "no good maximal 3-independent set of that size");
  return make_set(G, s.S, true);
}

IndepSet build_product_3indep(u64 m1, u64 m2,
                              const std::vector<AbelianGroup::Elem>& forbidden) {
  if (m1 <= 4 || m2 <= 4) fail("OrderTooSmall", "factors must exceed 4");
  if (std::gcd(m1, m2) != 1) fail("InvalidParams", "factors must be coprime");
  AbelianGroup G{{m1, m2}};
  const u64 want = m1 + m2 - 3;

  std::vector<char> forb(G.order(), 0);
  for (const auto& e : forbidden) {
    if (!G.valid(e)) fail("InvalidParams", "forbidden element outside the group");
    forb[G.index_of(e)] = 1;
  }
  auto admissible = [&](const IndepSet& set) {
    if (set.members.size() != want) return false;
    for (const auto& e : set.members)
      if (forb[G.index_of(e)]) return false;
    return true;
  };

  // attempt 1: the two-block pattern with K = {0} x Z_{m2}, H = Z_{m1} x {0}
  // (its size lands at m1+m2-2 for factor orders above 4, so this is
  // expected to fall through; kept as the documented first try)
  try {
    AbelianGroup Gsw{{m2, m1}};
    IndepSet sw = build_two_block_3indep(Gsw, {1, 0}, {0, 1});
    IndepSet candidate;
    candidate.group = G;
    candidate.good = sw.good;
    std::vector<u64> idx;
    for (const auto& e : sw.members) idx.push_back(G.index_of({e[1], e[0]}));
    candidate = make_set(G, idx, sw.good);
    if (admissible(candidate)) return candidate;
  } catch (const Error&) {
  }

  // attempt 2: deterministic backtracking for the exact target size
  return exhaustive_3indep_search(G, want, forbidden);
}

IndepSet smallest_maximal_3indep(const AbelianGroup& G,
                                 const std::vector<AbelianGroup::Elem>& forbidden) {
  if (G.order() > 10000) fail("InvalidParams", "search guard: |G| <= 10^4");
  std::vector<char> forb(G.order(), 0);
  for (const auto& e : forbidden) {
    if (!G.valid(e)) fail("InvalidParams", "forbidden element outside the group");
    forb[G.index_of(e)] = 1;
  }
  for (u64 target = 2; target <= G.order(); ++target) {
    Search s(G, target, forb);
    s.require_good = false;  // maximality suffices for coset selection
    if (s.rec(0)) {
      IndepSet out = make_set(G, s.S, false);
      out.good = is_maximal_3indep(G, out.members).good;
      return out;
    }
  }
  fail("NotFound", "no maximal 3-independent set exists");
}

}  // namespace nodalarcs::indep
