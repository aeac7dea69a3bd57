#include "relaycap/bounds.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "relaycap/errors.hpp"

namespace relaycap {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint32_t full_mask(int n) { return (std::uint32_t{1} << n) - 1u; }

void require_enumerable(const char* op, int n, int exhaustive_limit) {
  if (n > exhaustive_limit || n > kMaxGroundSize) {
    throw ResourceError(std::string(op) + ": N = " + std::to_string(n) +
                        " exceeds the exhaustive limit " +
                        std::to_string(std::min(exhaustive_limit, kMaxGroundSize)) +
                        "; use the prefix bounds or raise the limit");
  }
}

double sqrt_subset_sum(std::span<const double> values, std::uint32_t mask) {
  double sum = 0.0;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    sum += std::sqrt(values[static_cast<std::size_t>(std::countr_zero(rest))]);
  }
  return sum;
}

// Shared skeleton for the O(LN) prefix minimisations: the source-side term
// depends only on k, so it is computed once per k and reused across
// destinations. bc(k) and mac(d, k) must match the public per-cut functions
// exactly so witnesses re-evaluate bit for bit.
template <typename BcFn, typename MacFn>
BoundResult min_over_prefixes(const SnrProfile& p, BoundKind kind, BcFn&& bc, MacFn&& mac) {
  const auto started = Clock::now();
  const int n = p.num_relays();
  const int l = p.num_destinations();
  std::vector<double> bc_term(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    bc_term[static_cast<std::size_t>(k)] = bc(k);
  }
  BoundResult best;
  best.kind = kind;
  bool first = true;
  for (int d = 0; d < l; ++d) {
    for (int k = 0; k <= n; ++k) {
      const double v = bc_term[static_cast<std::size_t>(k)] + mac(d, k);
      if (first || v < best.value_bits) {
        best.value_bits = v;
        best.witness_dest = d;
        best.witness_prefix = k;
        first = false;
      }
    }
  }
  best.eval_count = static_cast<std::uint64_t>(l) * static_cast<std::uint64_t>(n + 1);
  best.elapsed_seconds = seconds_since(started);
  return best;
}

template <typename Fn>
BoundResult min_over_subsets(const SnrProfile& p, BoundKind kind, int threads, Fn&& fn) {
  const auto started = Clock::now();
  const int n = p.num_relays();
  const int l = p.num_destinations();
  const detail::CutCandidate c = detail::min_over_cuts(n, l, threads, fn);
  BoundResult best;
  best.kind = kind;
  best.value_bits = c.value;
  best.witness_dest = c.dest;
  best.witness_mask = c.mask;
  best.eval_count = static_cast<std::uint64_t>(l) << n;
  best.elapsed_seconds = seconds_since(started);
  return best;
}

std::vector<double> penalty_vector(const SnrProfile& p, DdfPenalty mode) {
  const int n = p.num_relays();
  std::vector<double> pen(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    pen[static_cast<std::size_t>(j)] = ddf_relay_penalty(p.snr_relay(j), n, mode);
  }
  return pen;
}

}  // namespace

double ddf_relay_penalty(double snr, int num_relays, DdfPenalty mode) {
  if (!std::isfinite(snr) || snr < 0.0) {
    throw DomainError("ddf_relay_penalty: SNR must be finite and nonnegative");
  }
  if (num_relays < 1) {
    throw ShapeError("ddf_relay_penalty: need at least one relay");
  }
  if (mode == DdfPenalty::paper_constant) {
    return 0.5 * std::numbers::log2e / num_relays;
  }
  // (1 + (1+1/N) S) / (1 + S) = 1 + (S/N) / (1 + S), kept in log1p form.
  return 0.5 * std::log1p((snr / num_relays) / (1.0 + snr)) / std::numbers::ln2;
}

double cutset_cut_value(const SnrProfile& p, int dest, std::uint32_t mac_mask) {
  const std::uint32_t full = full_mask(p.num_relays());
  const double bc = gaussian_capacity(subset_sum(p.snr_relay(), full & ~mac_mask));
  const double roots = sqrt_subset_sum(p.snr_dest_row(dest), mac_mask);
  return bc + gaussian_capacity(roots * roots);
}

double cutset_prefix_cut_value(const SnrProfile& p, int dest, int k) {
  return gaussian_capacity(p.src_suffix_sum(k)) +
         gaussian_capacity(p.dest_prefix_coherent(dest, k));
}

double pdf_co_cut_value(const SnrProfile& p, std::uint32_t mac_mask) {
  const std::uint32_t full = full_mask(p.num_relays());
  const double mac = gaussian_capacity(subset_sum(p.snr_dest_row(0), mac_mask));
  const double bc =
      gaussian_capacity(subset_sum(p.snr_relay(), full & ~mac_mask) / p.num_relays());
  return mac + bc;
}

double pdf_dms_cut_value(const SnrProfile& p, int dest, int k) {
  return gaussian_capacity(p.src_suffix_sum(k) / p.num_relays()) +
         gaussian_capacity(p.dest_prefix_sum(dest, k));
}

double ddf_cut_value(const SnrProfile& p, int dest, std::uint32_t mac_mask, DdfPenalty mode) {
  const int n = p.num_relays();
  const std::uint32_t comp = full_mask(n) & ~mac_mask;
  const double bc = gaussian_capacity(subset_sum(p.snr_relay(), comp) / n);
  const double mac = gaussian_capacity(subset_sum(p.snr_dest_row(dest), mac_mask));
  double penalty = 0.0;
  for (std::uint32_t rest = comp; rest != 0; rest &= rest - 1) {
    penalty += ddf_relay_penalty(p.snr_relay(std::countr_zero(rest)), n, mode);
  }
  return std::max(0.0, bc + mac - penalty);
}

double capacity_approx_cut_value(const SnrProfile& p, int dest, int k) {
  return gaussian_capacity(p.src_suffix_sum(k)) + gaussian_capacity(p.dest_prefix_sum(dest, k));
}

BoundResult cutset_upper_exhaustive(const SnrProfile& p, int exhaustive_limit, int threads) {
  require_enumerable("cutset_upper_exhaustive", p.num_relays(), exhaustive_limit);
  return min_over_subsets(p, BoundKind::cutset_exhaustive, threads,
                          [&p](int d, std::uint32_t mask) { return cutset_cut_value(p, d, mask); });
}

BoundResult cutset_upper_prefix(const SnrProfile& p) {
  return min_over_prefixes(
      p, BoundKind::cutset_prefix,
      [&p](int k) { return gaussian_capacity(p.src_suffix_sum(k)); },
      [&p](int d, int k) { return gaussian_capacity(p.dest_prefix_coherent(d, k)); });
}

BoundResult pdf_co_lower_diamond(const SnrProfile& p, int exhaustive_limit, int threads) {
  if (p.num_destinations() != 1) {
    throw PreconditionError(
        "pdf_co_lower_diamond: defined for a single destination only (the per-destination "
        "minimum has no common decoding guarantee for L >= 2); got L = " +
        std::to_string(p.num_destinations()));
  }
  require_enumerable("pdf_co_lower_diamond", p.num_relays(), exhaustive_limit);
  return min_over_subsets(p, BoundKind::pdf_co, threads,
                          [&p](int, std::uint32_t mask) { return pdf_co_cut_value(p, mask); });
}

BoundResult pdf_dms_lower(const SnrProfile& p) {
  const int n = p.num_relays();
  return min_over_prefixes(
      p, BoundKind::pdf_dms,
      [&p, n](int k) { return gaussian_capacity(p.src_suffix_sum(k) / n); },
      [&p](int d, int k) { return gaussian_capacity(p.dest_prefix_sum(d, k)); });
}

BoundResult ddf_lower(const SnrProfile& p, DdfPenalty mode, int exhaustive_limit, int threads) {
  require_enumerable("ddf_lower", p.num_relays(), exhaustive_limit);
  const int n = p.num_relays();
  const std::uint32_t full = full_mask(n);
  const std::vector<double> pen = penalty_vector(p, mode);
  BoundResult r = min_over_subsets(
      p, BoundKind::ddf, threads, [&p, &pen, full, n](int d, std::uint32_t mask) {
        const std::uint32_t comp = full & ~mask;
        const double bc = gaussian_capacity(subset_sum(p.snr_relay(), comp) / n);
        const double mac = gaussian_capacity(subset_sum(p.snr_dest_row(d), mask));
        return std::max(0.0, bc + mac - subset_sum(pen, comp));
      });
  return r;
}

ApproxCapacity capacity_approx(const SnrProfile& p) {
  ApproxCapacity approx;
  approx.bound = min_over_prefixes(
      p, BoundKind::capacity_approx,
      [&p](int k) { return gaussian_capacity(p.src_suffix_sum(k)); },
      [&p](int d, int k) { return gaussian_capacity(p.dest_prefix_sum(d, k)); });
  approx.radius_bits = 0.5 * std::log2(static_cast<double>(p.num_relays()));
  return approx;
}

GapReport bound_report(const Network& network, const BoundReportOptions& options) {
  const SnrProfile p = build_snr_profile(network);
  constexpr double kCertSlack = 1e-9;

  GapReport report;
  report.n = p.num_relays();
  report.l = p.num_destinations();
  report.power = p.power();
  report.penalty = options.penalty;

  report.cutset_prefix = cutset_upper_prefix(p);
  report.pdf_dms = pdf_dms_lower(p);
  const ApproxCapacity approx = capacity_approx(p);
  report.capprox = approx.bound;
  report.capprox_radius = approx.radius_bits;

  if (options.include_exhaustive) {
    report.cutset_exhaustive = cutset_upper_exhaustive(p, options.exhaustive_limit, options.threads);
    report.ddf = ddf_lower(p, options.penalty, options.exhaustive_limit, options.threads);
    if (report.l == 1) {
      report.pdf_co = pdf_co_lower_diamond(p, options.exhaustive_limit, options.threads);
    }
    report.exhaustive_used = true;
  }

  if (report.n == 1) {
    report.exact = capacity_n1(p);
  }
  report.df_optimal_bits = detect_df_optimal(p);
  report.best_relay_bits = detect_best_relay_regime(p);

  const double log2n = std::log2(static_cast<double>(report.n));
  report.gap_pdf_dms = report.cutset_prefix.value_bits - report.pdf_dms.value_bits;
  report.cert_pdf_dms = report.gap_pdf_dms <= log2n + kCertSlack;

  if (report.ddf) {
    const double upper = report.cutset_exhaustive ? report.cutset_exhaustive->value_bits
                                                  : report.cutset_prefix.value_bits;
    report.gap_ddf = upper - report.ddf->value_bits;
    report.cert_ddf = *report.gap_ddf <= log2n + 0.5 * std::numbers::log2e + kCertSlack;
  }
  if (report.pdf_co && report.cutset_exhaustive) {
    report.gap_pdf_co = report.cutset_exhaustive->value_bits - report.pdf_co->value_bits;
    report.cert_pdf_co = *report.gap_pdf_co <= log2n + kCertSlack;
  }
  return report;
}

}  // namespace relaycap
