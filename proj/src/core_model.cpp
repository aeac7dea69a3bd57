#include "relaycap/core_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "relaycap/errors.hpp"

namespace relaycap {

namespace {

// Neumaier-compensated accumulator. Prefix sums over as many as 10^7 terms
// must stay accurate to well under the 1e-12 tolerances used by the tests.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

double require_finite_gain(double g, const char* what) {
  if (!std::isfinite(g)) {
    throw DomainError(std::string(what) + " must be finite");
  }
  return g;
}

}  // namespace

double gaussian_capacity(double snr) {
  if (!std::isfinite(snr) || snr < 0.0) {
    throw DomainError("gaussian_capacity: SNR must be finite and nonnegative, got " +
                      std::to_string(snr));
  }
  return 0.5 * std::log1p(snr) / std::numbers::ln2;
}

double subset_sum(std::span<const double> values, std::uint32_t mask) {
  double sum = 0.0;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    sum += values[static_cast<std::size_t>(std::countr_zero(rest))];
  }
  return sum;
}

Network Network::from_gains(double power, std::vector<double> source_gains,
                            std::vector<std::vector<double>> relay_dest_gains) {
  Network net;
  net.num_relays = static_cast<int>(source_gains.size());
  net.num_destinations = static_cast<int>(relay_dest_gains.size());
  net.power = power;
  net.source_gains = std::move(source_gains);
  net.relay_dest_gains = std::move(relay_dest_gains);
  net.validate();
  return net;
}

void Network::validate() const {
  if (num_relays < 1) {
    throw ShapeError("Network: need at least one relay");
  }
  if (num_destinations < 1) {
    throw ShapeError("Network: need at least one destination");
  }
  if (static_cast<int>(source_gains.size()) != num_relays) {
    throw ShapeError("Network: source_gains has " + std::to_string(source_gains.size()) +
                     " entries, declared num_relays is " + std::to_string(num_relays));
  }
  if (static_cast<int>(relay_dest_gains.size()) != num_destinations) {
    throw ShapeError("Network: relay_dest_gains has " + std::to_string(relay_dest_gains.size()) +
                     " rows, declared num_destinations is " + std::to_string(num_destinations));
  }
  for (std::size_t d = 0; d < relay_dest_gains.size(); ++d) {
    if (static_cast<int>(relay_dest_gains[d].size()) != num_relays) {
      throw ShapeError("Network: relay_dest_gains row " + std::to_string(d) + " has " +
                       std::to_string(relay_dest_gains[d].size()) + " entries, expected " +
                       std::to_string(num_relays));
    }
    for (double g : relay_dest_gains[d]) {
      require_finite_gain(g, "Network: relay-destination gain");
    }
  }
  for (double g : source_gains) {
    require_finite_gain(g, "Network: source gain");
  }
  if (!std::isfinite(power) || power <= 0.0) {
    throw DomainError("Network: power must be finite and positive, got " + std::to_string(power));
  }
}

std::span<const double> SnrProfile::snr_dest_row(int d) const {
  return std::span<const double>(snr_dest_).subspan(
      static_cast<std::size_t>(d) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
}

double SnrProfile::snr_dest(int d, int j) const {
  return snr_dest_[static_cast<std::size_t>(d) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(j)];
}

double SnrProfile::src_suffix_sum(int k) const {
  return src_suffix_[static_cast<std::size_t>(k)];
}

double SnrProfile::dest_prefix_sum(int d, int k) const {
  return dest_prefix_[static_cast<std::size_t>(d) * static_cast<std::size_t>(n_ + 1) +
                      static_cast<std::size_t>(k)];
}

double SnrProfile::dest_sqrt_prefix_sum(int d, int k) const {
  return dest_sqrt_prefix_[static_cast<std::size_t>(d) * static_cast<std::size_t>(n_ + 1) +
                           static_cast<std::size_t>(k)];
}

double SnrProfile::dest_prefix_coherent(int d, int k) const {
  const double s = dest_sqrt_prefix_sum(d, k);
  return s * s;
}

void SnrProfile::build_running_sums() {
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t l = static_cast<std::size_t>(l_);

  src_suffix_.assign(n + 1, 0.0);
  Kahan src;
  for (std::size_t k = n; k-- > 0;) {
    src.add(snr_relay_[k]);
    src_suffix_[k] = src.value();
  }

  dest_prefix_.assign(l * (n + 1), 0.0);
  dest_sqrt_prefix_.assign(l * (n + 1), 0.0);
  for (std::size_t d = 0; d < l; ++d) {
    Kahan plain;
    Kahan roots;
    const std::size_t row = d * (n + 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = snr_dest_[d * n + j];
      plain.add(s);
      roots.add(std::sqrt(s));
      dest_prefix_[row + j + 1] = plain.value();
      dest_sqrt_prefix_[row + j + 1] = roots.value();
    }
  }
}

SnrProfile SnrProfile::from_parts_unchecked(int num_destinations, double power,
                                            std::vector<double> snr_relay,
                                            std::vector<double> snr_dest_row_major,
                                            std::vector<int> ordering) {
  SnrProfile p;
  p.n_ = static_cast<int>(snr_relay.size());
  p.l_ = num_destinations;
  p.power_ = power;
  p.snr_relay_ = std::move(snr_relay);
  p.snr_dest_ = std::move(snr_dest_row_major);
  p.ordering_ = std::move(ordering);
  if (p.n_ < 1 || p.l_ < 1 ||
      p.snr_dest_.size() != static_cast<std::size_t>(p.n_) * static_cast<std::size_t>(p.l_) ||
      p.ordering_.size() != static_cast<std::size_t>(p.n_)) {
    throw ShapeError("SnrProfile::from_parts_unchecked: inconsistent array sizes");
  }
  p.build_running_sums();
  return p;
}

SnrProfile build_snr_profile(const Network& network) {
  network.validate();
  const int n = network.num_relays;
  const int l = network.num_destinations;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(network.source_gains[static_cast<std::size_t>(a)]) >
           std::abs(network.source_gains[static_cast<std::size_t>(b)]);
  });

  SnrProfile p;
  p.n_ = n;
  p.l_ = l;
  p.power_ = network.power;
  p.ordering_ = order;
  p.snr_relay_.resize(static_cast<std::size_t>(n));
  p.snr_dest_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(l));
  for (int j = 0; j < n; ++j) {
    const double g = network.source_gains[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    p.snr_relay_[static_cast<std::size_t>(j)] = g * g * network.power;
  }
  for (int d = 0; d < l; ++d) {
    const auto& row = network.relay_dest_gains[static_cast<std::size_t>(d)];
    for (int j = 0; j < n; ++j) {
      const double g = row[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
      p.snr_dest_[static_cast<std::size_t>(d) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)] = g * g * network.power;
    }
  }
  p.build_running_sums();
  return p;
}

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::cutset_exhaustive: return "cutset-exhaustive";
    case BoundKind::cutset_prefix: return "cutset-prefix";
    case BoundKind::pdf_co: return "pdf-co";
    case BoundKind::pdf_dms: return "pdf-dms";
    case BoundKind::ddf: return "ddf";
    case BoundKind::capacity_approx: return "capacity-approx";
    case BoundKind::exact: return "exact";
    case BoundKind::edmonds: return "edmonds";
    case BoundKind::oracle: return "oracle";
  }
  return "unknown";
}

BoundResult capacity_n1(const SnrProfile& profile) {
  if (profile.num_relays() != 1) {
    throw PreconditionError("capacity_n1: requires exactly one relay, got " +
                            std::to_string(profile.num_relays()));
  }
  BoundResult best;
  best.kind = BoundKind::exact;
  best.value_bits = std::numeric_limits<double>::infinity();
  const double src_rate = gaussian_capacity(profile.snr_relay(0));
  for (int d = 0; d < profile.num_destinations(); ++d) {
    for (int k = 0; k <= 1; ++k) {
      const double v = (k == 0) ? src_rate : gaussian_capacity(profile.snr_dest(d, 0));
      if (v < best.value_bits) {
        best.value_bits = v;
        best.witness_dest = d;
        best.witness_prefix = k;
      }
    }
  }
  best.eval_count = static_cast<std::uint64_t>(profile.num_destinations()) * 2u;
  return best;
}

std::optional<double> detect_df_optimal(const SnrProfile& profile) {
  const int n = profile.num_relays();
  const int l = profile.num_destinations();
  double weakest_dest = std::numeric_limits<double>::infinity();
  for (int d = 0; d < l; ++d) {
    weakest_dest = std::min(weakest_dest, profile.dest_sqrt_prefix_sum(d, n));
  }
  if (std::sqrt(profile.snr_relay(n - 1)) < weakest_dest) {
    return std::nullopt;
  }
  double capacity = std::numeric_limits<double>::infinity();
  for (int d = 0; d < l; ++d) {
    capacity = std::min(capacity, gaussian_capacity(profile.dest_prefix_coherent(d, n)));
  }
  return capacity;
}

std::optional<double> detect_best_relay_regime(const SnrProfile& profile) {
  const double strongest = std::sqrt(profile.snr_relay(0));
  for (int d = 0; d < profile.num_destinations(); ++d) {
    if (strongest > std::sqrt(profile.snr_dest(d, 0))) {
      return std::nullopt;
    }
  }
  return gaussian_capacity(profile.snr_relay(0));
}

}  // namespace relaycap
