#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaycap/bounds.hpp"
#include "relaycap/core_model.hpp"

// Random network ensembles for certifying the gap guarantees at scale, plus a
// small scaling benchmark. Sampling is reproducible: trial t of a run with
// seed s always produces the same network, on any platform, regardless of
// which trials run concurrently.

namespace relaycap {

struct GainDist {
  enum class Kind { constant, uniform, rayleigh, lognormal };

  Kind kind = Kind::constant;
  double p0 = 0.0;  // constant: value; uniform: lo; rayleigh: scale; lognormal: mu
  double p1 = 0.0;  // uniform: hi; lognormal: sigma

  static GainDist constant(double value);
  static GainDist uniform(double lo, double hi);
  static GainDist rayleigh(double scale);
  static GainDist lognormal(double mu, double sigma);

  /// Parses "name:params", e.g. "rayleigh:1", "uniform:0,2", "lognormal:0,0.5".
  static GainDist parse(std::string_view text);

  std::string to_string() const;
  void validate() const;  // throws ConfigError
};

struct EnsembleConfig {
  int trials = 100;
  int n = 1;
  int l = 1;
  double power = 1.0;
  GainDist gain_dist = GainDist::rayleigh(1.0);
  std::uint64_t seed = 0;
  int exhaustive_limit = kDefaultExhaustiveLimit;
  bool include_exhaustive = true;
  DdfPenalty penalty = DdfPenalty::exact;

  void validate() const;  // throws ConfigError
};

/// Seed of the per-trial generator stream: splitmix64(seed + GOLDEN * (trial+1)).
/// Documented so archived run records stay reproducible.
std::uint64_t trial_stream_seed(std::uint64_t seed, int trial);

/// Draws the network for one trial. Gains are drawn from the trial's own
/// stream in a fixed order: source gains for relays 0..N-1, then destination
/// rows 0..L-1 each across relays 0..N-1.
Network sample_network(const EnsembleConfig& config, int trial);

struct EnsembleRecord {
  int trial = 0;
  std::uint64_t stream_seed = 0;
  GapReport report;
};

struct EnsembleSummary {
  int trials = 0;
  int cert_violations = 0;
  double max_gap_pdf_dms = 0.0;
  double mean_gap_pdf_dms = 0.0;
  std::optional<double> max_gap_ddf;
  std::optional<double> mean_gap_ddf;
  std::optional<double> max_gap_pdf_co;
  std::optional<double> mean_gap_pdf_co;
};

struct EnsembleResult {
  std::vector<EnsembleRecord> records;  // in trial order
  EnsembleSummary summary;
};

/// Runs bound_report over the ensemble. Records appear in trial order.
EnsembleResult run_ensemble(const EnsembleConfig& config);

struct BenchConfig {
  std::vector<int> n_values;
  int l = 2;
  int reps = 5;
  std::uint64_t seed = 0;
  double power = 1.0;
  GainDist gain_dist = GainDist::rayleigh(1.0);
  int exhaustive_limit = kDefaultExhaustiveLimit;
};

struct BenchRow {
  int n = 0;
  int l = 0;
  std::string algo;  // "pdf-dms", "cutset-prefix", "cutset-exhaustive"
  double median_seconds = 0.0;
  std::uint64_t evals = 0;
};

/// Times the prefix bounds at every n and the exhaustive cutset where it is
/// allowed, on one sampled network per n. Profile construction is excluded
/// from the timed region. Reports the median over reps runs.
std::vector<BenchRow> bench_scaling(const BenchConfig& config);

}  // namespace relaycap
