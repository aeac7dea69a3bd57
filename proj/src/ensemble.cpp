#include "relaycap/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "relaycap/errors.hpp"

namespace relaycap {

namespace {

// splitmix64 finaliser; full-period mixing of distinct inputs.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) with 53 random bits. The samplers below are written out
// explicitly (inverse CDF, Box-Muller) instead of using std::*_distribution so
// drawn gains are identical across standard library versions.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_standard_normal(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gain(const GainDist& dist, std::mt19937_64& rng) {
  switch (dist.kind) {
    case GainDist::Kind::constant:
      return dist.p0;
    case GainDist::Kind::uniform:
      return dist.p0 + (dist.p1 - dist.p0) * uniform01(rng);
    case GainDist::Kind::rayleigh:
      return dist.p0 * std::sqrt(-2.0 * std::log1p(-uniform01(rng)));
    case GainDist::Kind::lognormal:
      return std::exp(dist.p0 + dist.p1 * sample_standard_normal(rng));
  }
  throw ConfigError("GainDist: unknown kind");
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

}  // namespace

GainDist GainDist::constant(double value) { return GainDist{Kind::constant, value, 0.0}; }

GainDist GainDist::uniform(double lo, double hi) { return GainDist{Kind::uniform, lo, hi}; }

GainDist GainDist::rayleigh(double scale) { return GainDist{Kind::rayleigh, scale, 0.0}; }

GainDist GainDist::lognormal(double mu, double sigma) {
  return GainDist{Kind::lognormal, mu, sigma};
}

GainDist GainDist::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    std::stringstream ss{std::string(text.substr(colon + 1))};
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError("GainDist: bad parameter '" + item + "' in '" + std::string(text) + "'");
      }
    }
  }
  auto arity = [&](std::size_t want) {
    if (params.size() != want) {
      throw ConfigError("GainDist: '" + name + "' takes " + std::to_string(want) +
                        " parameter(s), got " + std::to_string(params.size()));
    }
  };
  GainDist dist;
  if (name == "constant") {
    arity(1);
    dist = constant(params[0]);
  } else if (name == "uniform") {
    arity(2);
    dist = uniform(params[0], params[1]);
  } else if (name == "rayleigh") {
    arity(1);
    dist = rayleigh(params[0]);
  } else if (name == "lognormal") {
    arity(2);
    dist = lognormal(params[0], params[1]);
  } else {
    throw ConfigError("GainDist: unknown distribution '" + name +
                      "' (expected constant, uniform, rayleigh, or lognormal)");
  }
  dist.validate();
  return dist;
}

std::string GainDist::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::constant: out << "constant:" << p0; break;
    case Kind::uniform: out << "uniform:" << p0 << "," << p1; break;
    case Kind::rayleigh: out << "rayleigh:" << p0; break;
    case Kind::lognormal: out << "lognormal:" << p0 << "," << p1; break;
  }
  return out.str();
}

void GainDist::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  switch (kind) {
    case Kind::constant:
      if (!finite(p0)) throw ConfigError("GainDist: constant value must be finite");
      return;
    case Kind::uniform:
      if (!finite(p0) || !finite(p1) || p1 < p0) {
        throw ConfigError("GainDist: uniform needs finite lo <= hi");
      }
      return;
    case Kind::rayleigh:
      if (!finite(p0) || p0 <= 0.0) throw ConfigError("GainDist: rayleigh scale must be positive");
      return;
    case Kind::lognormal:
      if (!finite(p0) || !finite(p1) || p1 < 0.0) {
        throw ConfigError("GainDist: lognormal needs finite mu and sigma >= 0");
      }
      return;
  }
  throw ConfigError("GainDist: unknown kind");
}

void EnsembleConfig::validate() const {
  if (trials < 1) throw ConfigError("EnsembleConfig: trials must be >= 1");
  if (n < 1) throw ConfigError("EnsembleConfig: n must be >= 1");
  if (l < 1) throw ConfigError("EnsembleConfig: l must be >= 1");
  if (!std::isfinite(power) || power <= 0.0) {
    throw ConfigError("EnsembleConfig: power must be finite and positive");
  }
  gain_dist.validate();
}

std::uint64_t trial_stream_seed(std::uint64_t seed, int trial) {
  return mix64(seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(trial) + 1));
}

Network sample_network(const EnsembleConfig& config, int trial) {
  config.validate();
  if (trial < 0 || trial >= config.trials) {
    throw ConfigError("sample_network: trial index out of range");
  }
  std::mt19937_64 rng(trial_stream_seed(config.seed, trial));
  std::vector<double> source(static_cast<std::size_t>(config.n));
  for (auto& g : source) g = sample_gain(config.gain_dist, rng);
  std::vector<std::vector<double>> dest(static_cast<std::size_t>(config.l));
  for (auto& row : dest) {
    row.resize(static_cast<std::size_t>(config.n));
    for (auto& g : row) g = sample_gain(config.gain_dist, rng);
  }
  return Network::from_gains(config.power, std::move(source), std::move(dest));
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
  config.validate();
  EnsembleResult result;
  result.records.resize(static_cast<std::size_t>(config.trials));

  BoundReportOptions options;
  options.exhaustive_limit = config.exhaustive_limit;
  options.include_exhaustive = config.include_exhaustive;
  options.penalty = config.penalty;

  for (int t = 0; t < config.trials; ++t) {
    EnsembleRecord& rec = result.records[static_cast<std::size_t>(t)];
    rec.trial = t;
    rec.stream_seed = trial_stream_seed(config.seed, t);
    rec.report = bound_report(sample_network(config, t), options);
  }

  EnsembleSummary& s = result.summary;
  s.trials = config.trials;
  double sum_pdf = 0.0, sum_ddf = 0.0, sum_co = 0.0;
  int n_ddf = 0, n_co = 0;
  for (const EnsembleRecord& rec : result.records) {
    const GapReport& r = rec.report;
    s.max_gap_pdf_dms = std::max(s.max_gap_pdf_dms, r.gap_pdf_dms);
    sum_pdf += r.gap_pdf_dms;
    if (!r.cert_pdf_dms) ++s.cert_violations;
    if (r.gap_ddf) {
      sum_ddf += *r.gap_ddf;
      ++n_ddf;
      s.max_gap_ddf = std::max(s.max_gap_ddf.value_or(*r.gap_ddf), *r.gap_ddf);
      if (r.cert_ddf && !*r.cert_ddf) ++s.cert_violations;
    }
    if (r.gap_pdf_co) {
      sum_co += *r.gap_pdf_co;
      ++n_co;
      s.max_gap_pdf_co = std::max(s.max_gap_pdf_co.value_or(*r.gap_pdf_co), *r.gap_pdf_co);
      if (r.cert_pdf_co && !*r.cert_pdf_co) ++s.cert_violations;
    }
  }
  s.mean_gap_pdf_dms = sum_pdf / config.trials;
  if (n_ddf > 0) s.mean_gap_ddf = sum_ddf / n_ddf;
  if (n_co > 0) s.mean_gap_pdf_co = sum_co / n_co;
  return result;
}

std::vector<BenchRow> bench_scaling(const BenchConfig& config) {
  if (config.n_values.empty()) throw ConfigError("bench_scaling: need at least one n");
  if (config.reps < 1) throw ConfigError("bench_scaling: reps must be >= 1");
  if (config.l < 1) throw ConfigError("bench_scaling: l must be >= 1");
  config.gain_dist.validate();

  std::vector<BenchRow> rows;
  for (const int n : config.n_values) {
    if (n < 1) throw ConfigError("bench_scaling: every n must be >= 1");
    EnsembleConfig sample_cfg;
    sample_cfg.trials = 1;
    sample_cfg.n = n;
    sample_cfg.l = config.l;
    sample_cfg.power = config.power;
    sample_cfg.gain_dist = config.gain_dist;
    sample_cfg.seed = config.seed ^ static_cast<std::uint64_t>(n);
    const SnrProfile p = build_snr_profile(sample_network(sample_cfg, 0));

    std::vector<double> t_pdf, t_prefix, t_exh;
    std::uint64_t e_pdf = 0, e_prefix = 0, e_exh = 0;
    for (int rep = 0; rep < config.reps; ++rep) {
      const BoundResult pdf = pdf_dms_lower(p);
      t_pdf.push_back(pdf.elapsed_seconds);
      e_pdf = pdf.eval_count;
      const BoundResult prefix = cutset_upper_prefix(p);
      t_prefix.push_back(prefix.elapsed_seconds);
      e_prefix = prefix.eval_count;
      if (n <= config.exhaustive_limit && n <= kMaxGroundSize) {
        const BoundResult exh = cutset_upper_exhaustive(p, config.exhaustive_limit);
        t_exh.push_back(exh.elapsed_seconds);
        e_exh = exh.eval_count;
      }
    }
    rows.push_back({n, config.l, "pdf-dms", median_of(t_pdf), e_pdf});
    rows.push_back({n, config.l, "cutset-prefix", median_of(t_prefix), e_prefix});
    if (!t_exh.empty()) {
      rows.push_back({n, config.l, "cutset-exhaustive", median_of(t_exh), e_exh});
    }
  }
  return rows;
}

}  // namespace relaycap
