#pragma once

#include <cstdint>
#include <functional>

#include "relaycap/core_model.hpp"

// Brute-force minimisation over every (destination, relay-subset) cut, plus
// the regression check that the O(LN) prefix bounds agree with it. Slow and
// obviously correct is the point.

namespace relaycap {

/// A cut value function over L destinations and N relays (as a sorted-index
/// bitmask). The evaluator must be pure.
class CutValueFn {
 public:
  CutValueFn(int num_relays, int num_destinations,
             std::function<double(int dest, std::uint32_t mask)> evaluator);

  int num_relays() const noexcept { return n_; }
  int num_destinations() const noexcept { return l_; }
  double operator()(int dest, std::uint32_t mask) const;

 private:
  int n_;
  int l_;
  std::function<double(int, std::uint32_t)> eval_;
};

/// Minimum cut over all L 2^N pairs. Ties resolve to the smallest value, then
/// destination, then bitmask, independent of thread count. Throws
/// ResourceError when N exceeds the limit.
BoundResult enumerate_min_cut(const CutValueFn& fn,
                              int exhaustive_limit = kDefaultExhaustiveLimit, int threads = 1);

struct PrefixReductionReport {
  bool input_sorted = false;      // profile satisfied the nonincreasing invariant
  bool chain_min_matches = false; // brute-force chain-cut min equals pdf_dms_lower
  bool restriction_holds = false; // cutset_upper_exhaustive <= cutset_upper_prefix
  double chain_bruteforce_bits = 0.0;
  double pdf_dms_bits = 0.0;
  double cutset_exhaustive_bits = 0.0;
  double cutset_prefix_bits = 0.0;

  bool ok() const { return input_sorted && chain_min_matches && restriction_holds; }
};

/// Checks, by full enumeration, that the prefix-restricted bounds are what
/// they claim: (a) minimising the relaxed decode-and-forward cut value
/// C((1/N) sum_{j not in J} S_j) + C(sum_{j <= max J} S~_dj) over all L 2^N
/// cuts lands on pdf_dms_lower (within 1e-9), and (b) the exhaustive cutset
/// minimum never exceeds the prefix-restricted one. Also reports whether the
/// profile actually satisfies the sorted invariant the prefix bounds assume.
PrefixReductionReport verify_prefix_reduction(const SnrProfile& p,
                                              int exhaustive_limit = kDefaultExhaustiveLimit,
                                              int threads = 1);

}  // namespace relaycap
