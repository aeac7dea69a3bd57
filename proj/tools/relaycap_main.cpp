// relaycap: capacity bounds for the Gaussian two-hop relay network.
//
// Subcommands:
//   bounds  compute every applicable bound for one network file
//   verify  re-derive the prefix bounds by brute force on random networks
//   sweep   run a random ensemble and emit one CSV row per trial
//   bench   time the O(LN) bounds against the 2^N enumeration
//
// Exit codes: 0 success, 1 certificate or property failure, 2 parse error,
// 3 resource limit, 4 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaycap/bounds.hpp"
#include "relaycap/cut_oracle.hpp"
#include "relaycap/ensemble.hpp"
#include "relaycap/errors.hpp"
#include "relaycap/network_io.hpp"

namespace {

using namespace relaycap;

constexpr double kTol = 1e-9;

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + *path + "' for writing");
  }
  out << text;
  if (!out) {
    throw IoError("failed while writing '" + *path + "'");
  }
}

DdfPenalty parse_penalty(const std::string& text) {
  if (text == "exact") return DdfPenalty::exact;
  if (text == "paper-constant") return DdfPenalty::paper_constant;
  throw ConfigError("--penalty-mode must be 'exact' or 'paper-constant', got '" + text + "'");
}

struct CommonOpts {
  int exhaustive_limit = kDefaultExhaustiveLimit;
  bool no_exhaustive = false;
  std::string penalty_mode = "exact";
  int precision = 6;
  std::optional<std::string> output;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_penalty = true) {
  cmd->add_option("--exhaustive-limit", opts.exhaustive_limit,
                  "largest N for 2^N enumerations");
  cmd->add_flag("--no-exhaustive", opts.no_exhaustive, "skip the 2^N bounds");
  if (with_penalty) {
    cmd->add_option("--penalty-mode", opts.penalty_mode,
                    "ddf penalty: exact or paper-constant");
  }
  cmd->add_option("--precision", opts.precision, "significant digits in numeric output")
      ->check(CLI::Range(1, 15));
  cmd->add_option("--output", opts.output, "write output to this file instead of stdout");
}

int cmd_bounds(const std::string& input, const std::string& format, bool emit_normalized,
               const CommonOpts& opts) {
  const io::NetworkFile file = io::load_network_file(input);
  if (emit_normalized) {
    write_output(opts.output, io::emit_network_file(file));
    return 0;
  }
  BoundReportOptions options;
  options.exhaustive_limit = opts.exhaustive_limit;
  options.include_exhaustive = !opts.no_exhaustive;
  options.penalty = parse_penalty(opts.penalty_mode);
  const SnrProfile profile = build_snr_profile(file.network);
  const GapReport report = bound_report(file.network, options);

  std::string text;
  if (format == "table") {
    text = io::render_bounds_table(file, profile, report, opts.precision);
  } else if (format == "csv") {
    text = io::sweep_csv_header() + "\n" + io::sweep_csv_row(0, 0, report, opts.precision) + "\n";
  } else if (format == "json") {
    text = io::render_bounds_json(file, profile, report, opts.precision);
  } else {
    throw ConfigError("--format must be table, csv, or json, got '" + format + "'");
  }
  write_output(opts.output, text);

  const bool certs_ok = report.cert_pdf_dms && report.cert_ddf.value_or(true) &&
                        report.cert_pdf_co.value_or(true);
  if (!certs_ok) {
    std::cerr << "certificate failure: a gap exceeded its bound\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const EnsembleConfig& cfg) {
  int prefix_ok = 0;
  int ordering_ok = 0;
  int certs_ok = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const Network net = sample_network(cfg, t);
    const SnrProfile p = build_snr_profile(net);

    const PrefixReductionReport red = verify_prefix_reduction(p, cfg.exhaustive_limit);
    if (red.ok()) ++prefix_ok;

    BoundReportOptions options;
    options.exhaustive_limit = cfg.exhaustive_limit;
    options.penalty = cfg.penalty;
    const GapReport r = bound_report(net, options);
    const double exh = r.cutset_exhaustive->value_bits;
    const bool chain = r.pdf_dms.value_bits <= exh + kTol &&
                       exh <= r.cutset_prefix.value_bits + kTol &&
                       r.pdf_dms.value_bits <= r.capprox.value_bits + kTol &&
                       r.capprox.value_bits <= r.cutset_prefix.value_bits + kTol &&
                       (!r.pdf_co || r.pdf_co->value_bits <= exh + kTol) &&
                       (!r.ddf || r.ddf->value_bits <= exh + kTol);
    if (chain) ++ordering_ok;

    const bool sandwich =
        std::abs(r.capprox.value_bits - r.pdf_dms.value_bits) <= r.capprox_radius + kTol &&
        std::abs(r.cutset_prefix.value_bits - r.capprox.value_bits) <= r.capprox_radius + kTol;
    if (r.cert_pdf_dms && r.cert_ddf.value_or(true) && r.cert_pdf_co.value_or(true) && sandwich) {
      ++certs_ok;
    }
  }
  auto line = [&](const char* label, int ok) {
    std::cout << label << ok << "/" << cfg.trials << (ok == cfg.trials ? " PASS" : " FAIL")
              << "\n";
  };
  line("prefix-reduction: ", prefix_ok);
  line("ordering-chain:   ", ordering_ok);
  line("gap-certificates: ", certs_ok);
  return (prefix_ok == cfg.trials && ordering_ok == cfg.trials && certs_ok == cfg.trials) ? 0 : 1;
}

int cmd_sweep(const EnsembleConfig& cfg, const CommonOpts& opts) {
  const EnsembleResult result = run_ensemble(cfg);
  std::ostringstream out;
  out << io::sweep_csv_header() << "\n";
  for (const EnsembleRecord& rec : result.records) {
    out << io::sweep_csv_row(rec.trial, rec.stream_seed, rec.report, opts.precision) << "\n";
  }
  write_output(opts.output, out.str());
  if (result.summary.cert_violations > 0) {
    std::cerr << "certificate failure in " << result.summary.cert_violations << " trial(s)\n";
    return 1;
  }
  return 0;
}

int cmd_bench(const BenchConfig& cfg, const CommonOpts& opts) {
  const std::vector<BenchRow> rows = bench_scaling(cfg);
  std::ostringstream out;
  out << io::bench_csv_header() << "\n";
  for (const BenchRow& row : rows) {
    out << io::bench_csv_row(row, opts.precision) << "\n";
  }
  write_output(opts.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity bounds for the Gaussian two-hop relay network"};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "bounds for one network file");
  std::string input;
  std::string format = "table";
  bool emit_normalized = false;
  CommonOpts bounds_opts;
  bounds->add_option("--input", input, "network JSON file")->required();
  bounds->add_option("--format", format, "output format: table, csv, or json");
  bounds->add_flag("--emit-normalized", emit_normalized,
                   "re-emit the parsed network as normalized JSON and exit");
  add_common(bounds, bounds_opts);

  // shared ensemble flags
  auto add_ensemble = [](CLI::App* cmd, EnsembleConfig& cfg, std::string& dist,
                         bool n_required) {
    cmd->add_option("--trials", cfg.trials, "number of sampled networks");
    auto* n_opt = cmd->add_option("--n", cfg.n, "relay count");
    if (n_required) n_opt->required();
    cmd->add_option("--l", cfg.l, "destination count");
    cmd->add_option("--seed", cfg.seed, "ensemble seed");
    cmd->add_option("--dist", dist, "gain distribution, e.g. rayleigh:1 uniform:0,2");
    cmd->add_option("--power", cfg.power, "transmit power");
  };

  // verify
  auto* verify = app.add_subcommand("verify", "brute-force verification on random networks");
  EnsembleConfig verify_cfg;
  std::string verify_dist = "rayleigh:1";
  CommonOpts verify_opts;
  add_ensemble(verify, verify_cfg, verify_dist, true);
  verify->add_option("--exhaustive-limit", verify_opts.exhaustive_limit,
                     "largest N for 2^N enumerations");
  verify->add_option("--penalty-mode", verify_opts.penalty_mode,
                     "ddf penalty: exact or paper-constant");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV of bounds over a random ensemble");
  EnsembleConfig sweep_cfg;
  std::string sweep_dist = "rayleigh:1";
  CommonOpts sweep_opts;
  add_ensemble(sweep, sweep_cfg, sweep_dist, true);
  add_common(sweep, sweep_opts);

  // bench
  auto* bench = app.add_subcommand("bench", "scaling benchmark CSV");
  BenchConfig bench_cfg;
  std::string bench_n_list;
  std::string bench_dist = "rayleigh:1";
  CommonOpts bench_opts;
  bench->add_option("--n-list", bench_n_list, "comma-separated relay counts")->required();
  bench->add_option("--l", bench_cfg.l, "destination count");
  bench->add_option("--reps", bench_cfg.reps, "repetitions per timing");
  bench->add_option("--seed", bench_cfg.seed, "sampling seed");
  bench->add_option("--dist", bench_dist, "gain distribution");
  bench->add_option("--power", bench_cfg.power, "transmit power");
  add_common(bench, bench_opts, false);

  try {
    app.parse(argc, argv);

    if (bounds->parsed()) {
      return cmd_bounds(input, format, emit_normalized, bounds_opts);
    }
    if (verify->parsed()) {
      verify_cfg.gain_dist = GainDist::parse(verify_dist);
      verify_cfg.exhaustive_limit = verify_opts.exhaustive_limit;
      verify_cfg.penalty = parse_penalty(verify_opts.penalty_mode);
      verify_cfg.validate();
      return cmd_verify(verify_cfg);
    }
    if (sweep->parsed()) {
      sweep_cfg.gain_dist = GainDist::parse(sweep_dist);
      sweep_cfg.exhaustive_limit = sweep_opts.exhaustive_limit;
      sweep_cfg.include_exhaustive = !sweep_opts.no_exhaustive;
      sweep_cfg.penalty = parse_penalty(sweep_opts.penalty_mode);
      sweep_cfg.validate();
      return cmd_sweep(sweep_cfg, sweep_opts);
    }
    if (bench->parsed()) {
      bench_cfg.gain_dist = GainDist::parse(bench_dist);
      bench_cfg.exhaustive_limit = bench_opts.exhaustive_limit;
      std::stringstream ss(bench_n_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          bench_cfg.n_values.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ConfigError("--n-list: bad entry '" + item + "'");
        }
      }
      return cmd_bench(bench_cfg, bench_opts);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
