#pragma once

#include <cstdint>
#include <optional>

#include "relaycap/core_model.hpp"

// Upper and lower bounds on the multicast capacity, each returned with the
// cut that attains it. Per-cut value functions are exposed so a reported
// witness can be re-evaluated independently of the enumeration that found it.

namespace relaycap {

enum class DdfPenalty {
  exact,           // per-relay 1/2 log2((1 + (1+1/N) S_k) / (1 + S_k))
  paper_constant,  // per-relay (1/(2N)) log2 e, an upper bound on the exact term
};

/// Decode cost of relay k staying silent a fraction of the time under
/// decode-and-forward scheduling, in bits. Zero SNR costs zero.
double ddf_relay_penalty(double snr, int num_relays, DdfPenalty mode);

// Per-cut values. dest is 0-based, mac_mask selects sorted relays on the
// destination (MAC) side of the cut, k is a prefix length in [0, N].
double cutset_cut_value(const SnrProfile& p, int dest, std::uint32_t mac_mask);
double cutset_prefix_cut_value(const SnrProfile& p, int dest, int k);
double pdf_co_cut_value(const SnrProfile& p, std::uint32_t mac_mask);
double pdf_dms_cut_value(const SnrProfile& p, int dest, int k);
double ddf_cut_value(const SnrProfile& p, int dest, std::uint32_t mac_mask, DdfPenalty mode);
double capacity_approx_cut_value(const SnrProfile& p, int dest, int k);

/// Cutset upper bound over all L 2^N cuts:
/// min over (d, J) of C(sum_{j not in J} S_j) + C((sum_{j in J} sqrt(S~_dj))^2).
BoundResult cutset_upper_exhaustive(const SnrProfile& p,
                                    int exhaustive_limit = kDefaultExhaustiveLimit,
                                    int threads = 1);

/// Cutset upper bound restricted to the L (N+1) prefix cuts. Never below
/// cutset_upper_exhaustive; within log2 N of the best lower bound. O(LN).
BoundResult cutset_upper_prefix(const SnrProfile& p);

/// Partial decode-and-forward lower bound for a single destination (L == 1):
/// min over J of C((1/N) sum_{j not in J} S_j) + C(sum_{j in J} S~_1j).
/// Agrees bit for bit with edmonds_min over the matching MAC and scaled-BC
/// subset functions. Throws PreconditionError when L >= 2.
BoundResult pdf_co_lower_diamond(const SnrProfile& p,
                                 int exhaustive_limit = kDefaultExhaustiveLimit,
                                 int threads = 1);

/// Multicast partial decode-and-forward lower bound over prefix cuts:
/// min over (d, k) of C((1/N) sum_{j > k} S_j) + C(sum_{j <= k} S~_dj). O(LN).
BoundResult pdf_dms_lower(const SnrProfile& p);

/// Distributed decode-and-forward lower bound:
/// min over (d, J) of C((1/N) sum_{j not in J} S_j) + C(sum_{j in J} S~_dj)
/// minus the per-relay penalty over the complement, clamped below at 0.
/// The exact penalty mode never returns less than paper_constant mode.
BoundResult ddf_lower(const SnrProfile& p, DdfPenalty mode = DdfPenalty::exact,
                      int exhaustive_limit = kDefaultExhaustiveLimit, int threads = 1);

struct ApproxCapacity {
  BoundResult bound;        // min over (d, k) of C(sum_{j > k} S_j) + C(sum_{j <= k} S~_dj)
  double radius_bits = 0.0; // capacity lies within +- radius of bound.value_bits
};

/// Capacity approximation with radius 1/2 log2 N. O(LN).
ApproxCapacity capacity_approx(const SnrProfile& p);

struct BoundReportOptions {
  int exhaustive_limit = kDefaultExhaustiveLimit;
  bool include_exhaustive = true;  // run the 2^N bounds (throws if N exceeds the limit)
  DdfPenalty penalty = DdfPenalty::exact;
  int threads = 1;
};

/// Everything bound_report computed for one network, with gap certificates.
struct GapReport {
  int n = 0;
  int l = 0;
  double power = 0.0;
  bool exhaustive_used = false;
  DdfPenalty penalty = DdfPenalty::exact;

  BoundResult cutset_prefix;
  BoundResult pdf_dms;
  BoundResult capprox;
  double capprox_radius = 0.0;
  std::optional<BoundResult> cutset_exhaustive;
  std::optional<BoundResult> pdf_co;   // only when L == 1 and exhaustive ran
  std::optional<BoundResult> ddf;
  std::optional<BoundResult> exact;    // N == 1 capacity
  std::optional<double> df_optimal_bits;    // exact capacity when DF is optimal
  std::optional<double> best_relay_bits;    // best-relay routing rate when it applies

  double gap_pdf_dms = 0.0;               // cutset_prefix - pdf_dms
  std::optional<double> gap_ddf;          // cutset bound - ddf
  std::optional<double> gap_pdf_co;       // cutset_exhaustive - pdf_co
  bool cert_pdf_dms = false;              // gap_pdf_dms <= log2 N
  std::optional<bool> cert_ddf;           // gap_ddf <= log2 N + 1/2 log2 e
  std::optional<bool> cert_pdf_co;        // gap_pdf_co <= log2 N
};

/// Runs every applicable bound on the network and certifies the gap guarantees.
/// With include_exhaustive set and N over the limit, throws ResourceError.
GapReport bound_report(const Network& network, const BoundReportOptions& options = {});

}  // namespace relaycap
