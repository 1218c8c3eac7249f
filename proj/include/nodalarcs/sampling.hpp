#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "nodalarcs/numutil.hpp"

namespace nodalarcs {

// Seeded 64-bit LCG: state' = a*state + c mod 2^64 with
//   a = 6364136223846793005, c = 1442695040888963407.
// Draws are the raw state reduced mod the requested range, one draw per
// coordinate, so identical seeds reproduce identical point streams across
// implementations.
class LcgStream {
 public:
  explicit LcgStream(u64 seed) : state_(seed) {}

  u64 next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return state_;
  }

  u64 next_mod(u64 q) { return next() % q; }

 private:
  u64 state_;
};

// Deterministic contiguous partition of [0, total) into at most `threads`
// chunks; fn(chunk_index, begin, end) runs on worker threads. Results must
// be merged by chunk index by the caller, so the output is independent of
// the thread count.
template <typename Fn>
inline std::size_t run_chunks(unsigned threads, std::size_t total, Fn&& fn) {
  if (threads == 0) threads = 1;
  std::size_t nchunks = std::min<std::size_t>(threads, total ? total : 1);
  std::size_t per = total / nchunks, rem = total % nchunks;
  std::vector<std::thread> pool;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t len = per + (c < rem ? 1 : 0);
    std::size_t end = begin + len;
    if (nchunks == 1) {
      fn(c, begin, end);
    } else {
      pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    }
    begin = end;
  }
  for (auto& t : pool) t.join();
  return nchunks;
}

}  // namespace nodalarcs
