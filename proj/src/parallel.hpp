#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gradflow {

// Shared-memory loops below use OpenMP when available. Reductions always go
// through the fixed-size chunk scheme so a result depends only on the chunk
// size, never on the thread count or schedule.

inline constexpr std::size_t kReduceChunk = 4096;

template <class Body>
inline void parallel_for(std::size_t n, Body&& body) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
}

// Deterministic reduction: per-chunk partials computed independently, then
// combined serially in chunk order.  `body(acc, i)` accumulates element i.
template <class T, class Body>
inline T chunked_reduce(std::size_t n, T init, Body&& body,
                        std::size_t chunk = kReduceChunk) {
  if (n == 0) return init;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(nchunks, T{});
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    T acc{};
    for (std::size_t i = begin; i < end; ++i) body(acc, i);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  T total = init;
  for (const T& p : partial) total += p;
  return total;
}

// Unordered-pair index space {(p,q) : p < q < n}, visited as fixed-size
// blocks of the linearized index so pair loops parallelize deterministically.
inline constexpr std::size_t kPairBlock = 1u << 17;

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// First pair (p,q) of linear index k; pairs are ordered (0,1),(0,2),...,(1,2),...
inline void pair_from_index(std::size_t k, std::size_t n, std::size_t& p,
                            std::size_t& q) {
  // closed-form row then fix up against rounding
  double nd = static_cast<double>(n);
  double disc = (2.0 * nd - 1.0) * (2.0 * nd - 1.0) - 8.0 * static_cast<double>(k);
  std::size_t row = static_cast<std::size_t>(
      std::max(0.0, (2.0 * nd - 1.0 - std::sqrt(std::max(0.0, disc))) / 2.0));
  // row_start(r) = index of pair (r, r+1)
  auto row_start = [n](std::size_t r) { return r * (n - 1) - r * (r - 1) / 2; };
  while (row > 0 && row_start(row) > k) --row;
  while (row + 1 < n && row_start(row + 1) <= k) ++row;
  p = row;
  q = row + 1 + (k - row_start(row));
}

// Visits every unordered pair exactly once.  body(block, p, q) runs with
// blocks processed in parallel and pairs within a block in ascending order.
template <class Body>
inline void for_each_pair_block(std::size_t n, Body&& body,
                                std::size_t block = kPairBlock) {
  const std::size_t npairs = pair_count(n);
  if (npairs == 0) return;
  const std::size_t nblocks = (npairs + block - 1) / block;
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * block;
    const std::size_t end = std::min(npairs, begin + block);
    std::size_t p, q;
    pair_from_index(begin, n, p, q);
    for (std::size_t k = begin; k < end; ++k) {
      body(static_cast<std::size_t>(b), p, q);
      if (++q == n) {
        ++p;
        q = p + 1;
      }
    }
  }
}

// Deterministic scalar reduction over unordered pairs.
template <class Body>
inline double pair_reduce(std::size_t n, Body&& body,
                          std::size_t block = kPairBlock) {
  const std::size_t npairs = pair_count(n);
  if (npairs == 0) return 0.0;
  const std::size_t nblocks = (npairs + block - 1) / block;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * block;
    const std::size_t end = std::min(npairs, begin + block);
    std::size_t p, q;
    pair_from_index(begin, n, p, q);
    double acc = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      acc += body(p, q);
      if (++q == n) {
        ++p;
        q = p + 1;
      }
    }
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace gradflow
