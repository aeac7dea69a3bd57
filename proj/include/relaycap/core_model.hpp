#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

// Core model for the Gaussian two-hop relay network: one source broadcasts to
// N relays, every destination listens to all N relays. All rates are in bits
// per channel use.

namespace relaycap {

/// Hard cap on ground-set size for anything that enumerates subsets as 32-bit masks.
inline constexpr int kMaxGroundSize = 30;

/// Default ceiling for 2^N enumerations; exhaustive operations refuse larger
/// instances unless the caller raises the limit explicitly.
inline constexpr int kDefaultExhaustiveLimit = 24;

/// C(x) = 1/2 log2(1 + x). Uses log1p so values near zero keep full relative
/// precision. Throws DomainError for negative or non-finite input.
double gaussian_capacity(double snr);

/// Sum of values[j] over the set bits of mask, accumulated in ascending index
/// order. Every caller that sums the same subset reproduces the same double.
double subset_sum(std::span<const double> values, std::uint32_t mask);

struct Network {
  int num_relays = 0;
  int num_destinations = 0;
  double power = 0.0;
  std::vector<double> source_gains;                   // g_j, one per relay
  std::vector<std::vector<double>> relay_dest_gains;  // [destination][relay]

  /// Builds a Network with counts inferred from the vectors, then validates.
  static Network from_gains(double power, std::vector<double> source_gains,
                            std::vector<std::vector<double>> relay_dest_gains);

  /// Throws ShapeError on dimension mismatch, DomainError on non-finite gains
  /// or non-positive power.
  void validate() const;

  bool operator==(const Network&) const = default;
};

/// SNR view of a Network with relays permuted so the source-to-relay SNRs are
/// nonincreasing. Destination columns carry the same permutation. Running
/// prefix/suffix sums are precomputed so prefix-cut bounds run in O(LN).
class SnrProfile {
 public:
  int num_relays() const noexcept { return n_; }
  int num_destinations() const noexcept { return l_; }
  double power() const noexcept { return power_; }

  /// Source-to-relay SNRs, sorted nonincreasing.
  std::span<const double> snr_relay() const noexcept { return snr_relay_; }
  double snr_relay(int j) const { return snr_relay_[static_cast<std::size_t>(j)]; }

  /// Relay-to-destination SNRs for destination d, columns in sorted relay order.
  std::span<const double> snr_dest_row(int d) const;
  double snr_dest(int d, int j) const;

  /// Maps sorted relay index to the relay's index in the originating Network.
  std::span<const int> ordering() const noexcept { return ordering_; }

  /// Sum of snr_relay[j] for j in [k, N), k in [0, N]. The source side of the
  /// prefix cut that assigns the first k sorted relays to the destination side.
  double src_suffix_sum(int k) const;

  /// Sum of snr_dest(d, j) for j in [0, k).
  double dest_prefix_sum(int d, int k) const;

  /// Sum of sqrt(snr_dest(d, j)) for j in [0, k).
  double dest_sqrt_prefix_sum(int d, int k) const;

  /// (sum of sqrt(snr_dest(d, j)) for j in [0, k))^2: the coherent combining
  /// term, computed as the square of the sum of roots so it cannot overflow
  /// before the square.
  double dest_prefix_coherent(int d, int k) const;

  /// Assembles a profile from already-derived arrays without sorting or
  /// checking the nonincreasing invariant. Exists so tests can probe what
  /// breaks when the ordering invariant is violated; regular code should use
  /// build_snr_profile.
  static SnrProfile from_parts_unchecked(int num_destinations, double power,
                                         std::vector<double> snr_relay,
                                         std::vector<double> snr_dest_row_major,
                                         std::vector<int> ordering);

 private:
  SnrProfile() = default;
  void build_running_sums();

  int n_ = 0;
  int l_ = 0;
  double power_ = 0.0;
  std::vector<double> snr_relay_;       // size n
  std::vector<double> snr_dest_;        // l rows of n, row-major
  std::vector<int> ordering_;           // sorted index -> original index
  std::vector<double> src_suffix_;      // size n+1
  std::vector<double> dest_prefix_;     // l rows of n+1, row-major
  std::vector<double> dest_sqrt_prefix_;  // l rows of n+1, row-major

  friend SnrProfile build_snr_profile(const Network&);
};

/// Validates the network, squares and scales gains into SNRs, and sorts relays
/// by source SNR (stable: ties keep original order). O(LN + N log N).
SnrProfile build_snr_profile(const Network& network);

enum class BoundKind {
  cutset_exhaustive,
  cutset_prefix,
  pdf_co,
  pdf_dms,
  ddf,
  capacity_approx,
  exact,
  edmonds,
  oracle,
};

std::string_view to_string(BoundKind kind) noexcept;

/// A bound value plus the cut that attains it. Prefix-style results carry
/// witness_prefix (number of sorted relays on the destination side);
/// subset-style results carry witness_mask over sorted relay indices.
struct BoundResult {
  double value_bits = 0.0;
  std::optional<int> witness_dest;             // destination index, 0-based
  std::optional<std::uint32_t> witness_mask;   // relay subset over sorted indices
  std::optional<int> witness_prefix;           // prefix length k
  BoundKind kind = BoundKind::exact;
  std::uint64_t eval_count = 0;                // cut evaluations performed
  double elapsed_seconds = 0.0;
};

/// Exact capacity of the single-relay network: min of the source link rate and
/// the weakest destination link rate. Throws PreconditionError unless N == 1.
BoundResult capacity_n1(const SnrProfile& profile);

/// If sqrt(S_N) >= min_d sum_j sqrt(S~_dj), decode-and-forward everywhere is
/// optimal and the capacity equals min_d C((sum_j sqrt(S~_dj))^2). Returns that
/// capacity in bits, or nullopt when the condition does not hold.
std::optional<double> detect_df_optimal(const SnrProfile& profile);

/// If sqrt(S_1) <= min_d sqrt(S~_d1), routing through the strongest relay
/// alone achieves C(S_1), which sits within 1/2 log2 N bits of capacity.
/// Returns that rate, or nullopt when the condition does not hold.
std::optional<double> detect_best_relay_regime(const SnrProfile& profile);

}  // namespace relaycap
