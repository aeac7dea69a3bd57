#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "relaycap/bounds.hpp"
#include "relaycap/core_model.hpp"
#include "relaycap/ensemble.hpp"

// Network file format and report rendering. A network file is a JSON object:
//
//   {
//     "name": "optional label",
//     "power": 1.0,
//     "source_gains": [g_1, ..., g_N],
//     "relay_dest_gains": [[g~_11, ..., g~_1N], ..., [g~_L1, ..., g~_LN]]
//   }
//
// N and L are inferred from the array lengths. Non-finite numbers, ragged
// rows, and unknown keys are rejected.

namespace relaycap::io {

struct NetworkFile {
  Network network;
  std::optional<std::string> name;
};

/// Parses JSON text. Throws ParseError; for syntax errors the line and column
/// fields are set.
NetworkFile parse_network_file(const std::string& text);

/// Reads and parses a file. Throws IoError if unreadable, ParseError otherwise.
NetworkFile load_network_file(const std::filesystem::path& path);

/// Normalized emission: the output re-parses to an identical Network (gains
/// and power are written with round-trip precision).
std::string emit_network_file(const NetworkFile& file);

/// Formats a double with the given number of significant digits.
std::string format_value(double value, int precision);

// Stable CSV schemas. Optional columns are left blank when a bound was skipped.
std::string sweep_csv_header();
std::string sweep_csv_row(int trial, std::uint64_t seed, const GapReport& report, int precision);
std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row, int precision);

// cmd_bounds renderers. Witness cuts are reported in sorted relay coordinates;
// the table prints the sorted-to-original permutation alongside.
std::string render_bounds_table(const NetworkFile& file, const SnrProfile& profile,
                                const GapReport& report, int precision);
std::string render_bounds_json(const NetworkFile& file, const SnrProfile& profile,
                               const GapReport& report, int precision);

}  // namespace relaycap::io
