#include "relaycap/polymatroid.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "relaycap/errors.hpp"

namespace relaycap {

struct SubsetFn::State {
  int n = 0;
  std::function<double(std::uint32_t)> eval;
  mutable std::unordered_map<std::uint32_t, double> memo;
  mutable std::shared_mutex mutex;
};

SubsetFn::SubsetFn(int ground_size, std::function<double(std::uint32_t)> evaluator)
    : state_(std::make_shared<State>()) {
  if (ground_size < 1 || ground_size > kMaxGroundSize) {
    throw ShapeError("SubsetFn: ground size must be in [1, " + std::to_string(kMaxGroundSize) +
                     "], got " + std::to_string(ground_size));
  }
  if (!evaluator) {
    throw DomainError("SubsetFn: evaluator must be callable");
  }
  state_->n = ground_size;
  state_->eval = std::move(evaluator);
}

int SubsetFn::ground_size() const noexcept { return state_->n; }

std::uint32_t SubsetFn::full_mask() const noexcept {
  return (state_->n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << state_->n) - 1u);
}

double SubsetFn::eval_uncached(std::uint32_t subset) const {
  if ((subset & ~full_mask()) != 0) {
    throw DomainError("SubsetFn: mask has bits outside the ground set");
  }
  return state_->eval(subset);
}

double SubsetFn::operator()(std::uint32_t subset) const {
  if ((subset & ~full_mask()) != 0) {
    throw DomainError("SubsetFn: mask has bits outside the ground set");
  }
  {
    std::shared_lock lock(state_->mutex);
    auto it = state_->memo.find(subset);
    if (it != state_->memo.end()) {
      return it->second;
    }
  }
  const double value = state_->eval(subset);
  std::unique_lock lock(state_->mutex);
  return state_->memo.emplace(subset, value).first->second;
}

namespace {

std::optional<AxiomViolation> check_normalized(const SubsetFn& f, double tol) {
  const double v = f(0);
  if (std::abs(v) > tol) {
    return AxiomViolation{AxiomKind::normalization, 0, 0, v, 0.0};
  }
  return std::nullopt;
}

std::optional<AxiomViolation> monotone_violation_at(const SubsetFn& f, std::uint32_t mask, int a,
                                                    double tol) {
  const std::uint32_t with_a = mask | (std::uint32_t{1} << a);
  const double lo = f(mask);
  const double hi = f(with_a);
  if (hi < lo - tol) {
    return AxiomViolation{AxiomKind::monotonicity, mask, with_a, hi, lo};
  }
  return std::nullopt;
}

std::optional<AxiomViolation> submodular_violation_at(const SubsetFn& f, std::uint32_t mask, int a,
                                                      int b, double tol) {
  const std::uint32_t bit_a = std::uint32_t{1} << a;
  const std::uint32_t bit_b = std::uint32_t{1} << b;
  const double lhs = f(mask | bit_a) + f(mask | bit_b);
  const double rhs = f(mask) + f(mask | bit_a | bit_b);
  if (lhs < rhs - tol) {
    return AxiomViolation{AxiomKind::submodularity, mask | bit_a, mask | bit_b, lhs, rhs};
  }
  return std::nullopt;
}

void record(AxiomReport& report, bool& flag, const std::optional<AxiomViolation>& violation) {
  if (violation) {
    flag = false;
    if (!report.first_violation) {
      report.first_violation = violation;
    }
  }
}

}  // namespace

AxiomReport check_polymatroid_axioms(const SubsetFn& f, double tol) {
  const int n = f.ground_size();
  if (n > kAxiomCheckLimit) {
    throw ResourceError("check_polymatroid_axioms: ground size " + std::to_string(n) +
                        " exceeds the exhaustive limit " + std::to_string(kAxiomCheckLimit) +
                        "; use check_polymatroid_axioms_sampled for a spot check"
                        " (it reports violations but cannot certify)");
  }
  AxiomReport report;
  report.normalized = true;
  report.monotone = true;
  report.submodular = true;
  report.certified = true;

  record(report, report.normalized, check_normalized(f, tol));

  const std::uint32_t limit = f.full_mask();
  for (std::uint32_t mask = 0; mask <= limit && report.monotone; ++mask) {
    for (int a = 0; a < n; ++a) {
      if (mask & (std::uint32_t{1} << a)) continue;
      record(report, report.monotone, monotone_violation_at(f, mask, a, tol));
      if (!report.monotone) break;
    }
    if (mask == limit) break;
  }

  for (std::uint32_t mask = 0; mask <= limit && report.submodular; ++mask) {
    for (int a = 0; a < n && report.submodular; ++a) {
      if (mask & (std::uint32_t{1} << a)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (mask & (std::uint32_t{1} << b)) continue;
        record(report, report.submodular, submodular_violation_at(f, mask, a, b, tol));
        if (!report.submodular) break;
      }
    }
    if (mask == limit) break;
  }
  return report;
}

AxiomReport check_polymatroid_axioms_sampled(const SubsetFn& f, int num_samples,
                                             std::uint64_t seed, double tol) {
  if (num_samples < 1) {
    throw ConfigError("check_polymatroid_axioms_sampled: need at least one sample");
  }
  const int n = f.ground_size();
  AxiomReport report;
  report.normalized = true;
  report.monotone = true;
  report.submodular = true;
  report.certified = false;

  record(report, report.normalized, check_normalized(f, tol));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick_mask(0, f.full_mask());
  std::uniform_int_distribution<int> pick_elem(0, n - 1);
  for (int s = 0; s < num_samples; ++s) {
    const std::uint32_t mask = pick_mask(rng);
    const int a = pick_elem(rng);
    const int b = pick_elem(rng);
    if (!(mask & (std::uint32_t{1} << a))) {
      record(report, report.monotone, monotone_violation_at(f, mask, a, tol));
      if (a != b && !(mask & (std::uint32_t{1} << b))) {
        record(report, report.submodular, submodular_violation_at(f, mask, a, b, tol));
      }
    }
  }
  return report;
}

BoundResult edmonds_min(const SubsetFn& phi, const SubsetFn& psi, int exhaustive_limit) {
  if (phi.ground_size() != psi.ground_size()) {
    throw ShapeError("edmonds_min: ground sizes differ (" + std::to_string(phi.ground_size()) +
                     " vs " + std::to_string(psi.ground_size()) + ")");
  }
  const int n = phi.ground_size();
  if (n > exhaustive_limit || n > kMaxGroundSize) {
    throw ResourceError("edmonds_min: ground size " + std::to_string(n) +
                        " exceeds the exhaustive limit " + std::to_string(exhaustive_limit));
  }
  const auto started = std::chrono::steady_clock::now();
  const std::uint32_t full = phi.full_mask();
  BoundResult best;
  best.kind = BoundKind::edmonds;
  bool first = true;
  std::uint32_t mask = 0;
  while (true) {
    const double v = phi.eval_uncached(mask) + psi.eval_uncached(full ^ mask);
    if (first || v < best.value_bits) {
      best.value_bits = v;
      best.witness_mask = mask;
      first = false;
    }
    if (mask == full) break;
    ++mask;
  }
  best.eval_count = std::uint64_t{1} << n;
  best.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return best;
}

SubsetFn mac_region_fn(std::vector<double> snrs) {
  if (snrs.empty()) {
    throw ShapeError("mac_region_fn: need at least one SNR");
  }
  if (snrs.size() > static_cast<std::size_t>(kMaxGroundSize)) {
    throw ShapeError("mac_region_fn: at most " + std::to_string(kMaxGroundSize) + " SNRs");
  }
  for (double s : snrs) {
    if (!std::isfinite(s) || s < 0.0) {
      throw DomainError("mac_region_fn: SNRs must be finite and nonnegative");
    }
  }
  const int n = static_cast<int>(snrs.size());
  return SubsetFn(n, [values = std::move(snrs)](std::uint32_t mask) {
    return gaussian_capacity(subset_sum(values, mask));
  });
}

SubsetFn chain_fn(std::vector<double> levels) {
  if (levels.empty()) {
    throw ShapeError("chain_fn: need at least one level");
  }
  if (levels.size() > static_cast<std::size_t>(kMaxGroundSize)) {
    throw ShapeError("chain_fn: at most " + std::to_string(kMaxGroundSize) + " levels");
  }
  if (!(levels.front() >= 0.0)) {
    throw DomainError("chain_fn: levels must be nonnegative");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] >= levels[i - 1])) {
      throw DomainError("chain_fn: levels must be nondecreasing (violated at index " +
                        std::to_string(i) + ")");
    }
  }
  const int n = static_cast<int>(levels.size());
  return SubsetFn(n, [values = std::move(levels)](std::uint32_t mask) {
    if (mask == 0) return 0.0;
    return values[static_cast<std::size_t>(std::bit_width(mask)) - 1];
  });
}

std::vector<double> greedy_vertex(const SubsetFn& f, std::span<const int> order) {
  const int n = f.ground_size();
  if (static_cast<int>(order.size()) != n) {
    throw DomainError("greedy_vertex: order has " + std::to_string(order.size()) +
                      " entries, ground size is " + std::to_string(n));
  }
  std::uint32_t seen = 0;
  for (int e : order) {
    if (e < 0 || e >= n || (seen & (std::uint32_t{1} << e))) {
      throw DomainError("greedy_vertex: order is not a permutation of the ground set");
    }
    seen |= std::uint32_t{1} << e;
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  std::uint32_t prefix = 0;
  double prev = f(0);
  for (int e : order) {
    prefix |= std::uint32_t{1} << e;
    const double cur = f(prefix);
    x[static_cast<std::size_t>(e)] = cur - prev;
    prev = cur;
  }
  return x;
}

}  // namespace relaycap
