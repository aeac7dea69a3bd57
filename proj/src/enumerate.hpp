#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

// Internal helper: minimise a cut value over all (destination, relay-subset)
// pairs. The comparison is a strict total order on (value, dest, mask), so the
// argmin is independent of iteration order and of how the mask range is
// partitioned across workers.

namespace relaycap::detail {

struct CutCandidate {
  double value = 0.0;
  int dest = 0;
  std::uint32_t mask = 0;
};

inline bool better(const CutCandidate& a, const CutCandidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dest != b.dest) return a.dest < b.dest;
  return a.mask < b.mask;
}

template <typename Fn>
CutCandidate min_over_cuts(int n, int l, int threads, Fn&& fn) {
  const std::uint64_t total = std::uint64_t{1} << n;
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    CutCandidate best;
    bool first = true;
    for (int d = 0; d < l; ++d) {
      for (std::uint64_t m = lo; m < hi; ++m) {
        CutCandidate c{fn(d, static_cast<std::uint32_t>(m)), d, static_cast<std::uint32_t>(m)};
        if (first || better(c, best)) {
          best = c;
          first = false;
        }
      }
    }
    return best;
  };

  if (threads <= 1 || total < 1024) {
    return scan(0, total);
  }

  const std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (std::uint64_t lo = 0; lo < total; lo += chunk) {
    ranges.emplace_back(lo, std::min(total, lo + chunk));
  }
  std::vector<CutCandidate> results(ranges.size());
  std::vector<std::thread> pool;
  pool.reserve(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    pool.emplace_back([&, w] { results[w] = scan(ranges[w].first, ranges[w].second); });
  }
  for (auto& t : pool) t.join();
  CutCandidate best = results[0];
  for (std::size_t w = 1; w < results.size(); ++w) {
    if (better(results[w], best)) best = results[w];
  }
  return best;
}

}  // namespace relaycap::detail
