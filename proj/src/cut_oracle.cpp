#include "relaycap/cut_oracle.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "enumerate.hpp"
#include "relaycap/bounds.hpp"
#include "relaycap/errors.hpp"

namespace relaycap {

CutValueFn::CutValueFn(int num_relays, int num_destinations,
                       std::function<double(int, std::uint32_t)> evaluator)
    : n_(num_relays), l_(num_destinations), eval_(std::move(evaluator)) {
  if (n_ < 1 || n_ > kMaxGroundSize) {
    throw ShapeError("CutValueFn: relay count must be in [1, " + std::to_string(kMaxGroundSize) +
                     "], got " + std::to_string(n_));
  }
  if (l_ < 1) {
    throw ShapeError("CutValueFn: need at least one destination");
  }
  if (!eval_) {
    throw DomainError("CutValueFn: evaluator must be callable");
  }
}

double CutValueFn::operator()(int dest, std::uint32_t mask) const {
  if (dest < 0 || dest >= l_) {
    throw DomainError("CutValueFn: destination index out of range");
  }
  const std::uint32_t full = (std::uint32_t{1} << n_) - 1u;
  if ((mask & ~full) != 0) {
    throw DomainError("CutValueFn: mask has bits outside the relay set");
  }
  return eval_(dest, mask);
}

BoundResult enumerate_min_cut(const CutValueFn& fn, int exhaustive_limit, int threads) {
  const int n = fn.num_relays();
  if (n > exhaustive_limit || n > kMaxGroundSize) {
    throw ResourceError("enumerate_min_cut: N = " + std::to_string(n) +
                        " exceeds the exhaustive limit " +
                        std::to_string(std::min(exhaustive_limit, kMaxGroundSize)));
  }
  const auto started = std::chrono::steady_clock::now();
  const detail::CutCandidate c = detail::min_over_cuts(
      n, fn.num_destinations(), threads,
      [&fn](int d, std::uint32_t mask) { return fn(d, mask); });
  BoundResult best;
  best.kind = BoundKind::oracle;
  best.value_bits = c.value;
  best.witness_dest = c.dest;
  best.witness_mask = c.mask;
  best.eval_count = static_cast<std::uint64_t>(fn.num_destinations()) << n;
  best.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return best;
}

PrefixReductionReport verify_prefix_reduction(const SnrProfile& p, int exhaustive_limit,
                                              int threads) {
  const int n = p.num_relays();
  if (n > exhaustive_limit || n > kMaxGroundSize) {
    throw ResourceError("verify_prefix_reduction: N = " + std::to_string(n) +
                        " exceeds the exhaustive limit " +
                        std::to_string(std::min(exhaustive_limit, kMaxGroundSize)));
  }
  constexpr double kTol = 1e-9;

  PrefixReductionReport report;
  report.input_sorted = true;
  for (int j = 1; j < n; ++j) {
    if (p.snr_relay(j) > p.snr_relay(j - 1)) {
      report.input_sorted = false;
      break;
    }
  }

  // Claim (a). The brute-force evaluator touches only the raw SNR arrays via
  // subset_sum, so it shares nothing with the compensated running sums that
  // pdf_dms_lower reads.
  const std::uint32_t full = (std::uint32_t{1} << n) - 1u;
  const CutValueFn chain_cut(n, p.num_destinations(), [&p, full, n](int d, std::uint32_t mask) {
    const double bc = gaussian_capacity(subset_sum(p.snr_relay(), full & ~mask) / n);
    const int prefix_len = (mask == 0) ? 0 : std::bit_width(mask);
    const std::uint32_t prefix =
        (prefix_len == 0) ? 0u : (std::uint32_t{1} << prefix_len) - 1u;
    const double mac = gaussian_capacity(subset_sum(p.snr_dest_row(d), prefix));
    return bc + mac;
  });
  const BoundResult brute = enumerate_min_cut(chain_cut, exhaustive_limit, threads);
  const BoundResult pdf = pdf_dms_lower(p);
  report.chain_bruteforce_bits = brute.value_bits;
  report.pdf_dms_bits = pdf.value_bits;
  report.chain_min_matches = std::abs(brute.value_bits - pdf.value_bits) <= kTol;

  // Claim (b): adding cuts to the search can only lower the minimum.
  const BoundResult exhaustive = cutset_upper_exhaustive(p, exhaustive_limit, threads);
  const BoundResult prefix = cutset_upper_prefix(p);
  report.cutset_exhaustive_bits = exhaustive.value_bits;
  report.cutset_prefix_bits = prefix.value_bits;
  report.restriction_holds = exhaustive.value_bits <= prefix.value_bits + kTol;
  return report;
}

}  // namespace relaycap
