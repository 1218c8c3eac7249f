#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace nodalarcs {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  // trial division; inputs here stay far below 2^40
  for (u64 d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 isqrt_floor(u128 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::min<u128>(n, ~u64{0}));
  // Newton iterations on a 64-bit seed, then exact fix-up.
  u64 x = r;
  for (int i = 0; i < 64; ++i) {
    u64 y = static_cast<u64>((x + n / x) / 2);
    if (y >= x) break;
    x = y;
  }
  while (u128(x) * x > n) --x;
  while (u128(x + 1) * (x + 1) <= n) ++x;
  return x;
}

inline u64 isqrt_ceil(u128 n) {
  u64 f = isqrt_floor(n);
  return (u128(f) * f == n) ? f : f + 1;
}

// Extended gcd on signed 128-bit, for CRT coefficients.
inline i128 egcd(i128 a, i128 b, i128& x, i128& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i128 x1, y1;
  i128 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Unique j mod n1*n2 with j = r1 mod n1, j = r2 mod n2; requires (n1,n2)=1.
inline u64 crt_pair(u64 r1, u64 n1, u64 r2, u64 n2) {
  i128 x, y;
  egcd(i128(n1), i128(n2), x, y);
  i128 n = i128(n1) * n2;
  i128 j = i128(r1) * n2 % n * y % n + i128(r2) * n1 % n * x % n;
  j %= n;
  if (j < 0) j += n;
  return static_cast<u64>(j);
}

}  // namespace nodalarcs
