#include "relaycap/network_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "relaycap/errors.hpp"

namespace relaycap::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::pair<int, int> line_column_at(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ParseError("network file: " + where + " must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError("network file: " + where + " is not finite");
  }
  return v;
}

std::string witness_text(const BoundResult& r) {
  std::ostringstream out;
  bool any = false;
  if (r.witness_dest) {
    out << "d=" << (*r.witness_dest + 1);
    any = true;
  }
  if (r.witness_prefix) {
    out << (any ? " " : "") << "k=" << *r.witness_prefix;
    any = true;
  }
  if (r.witness_mask) {
    out << (any ? " " : "") << "J=0x" << std::hex << *r.witness_mask << std::dec;
    any = true;
  }
  if (!any) out << "-";
  return out.str();
}

json bound_to_json(const BoundResult& r, int precision) {
  json j;
  j["bits"] = std::stod(format_value(r.value_bits, precision));
  if (r.witness_dest) j["dest"] = *r.witness_dest + 1;
  if (r.witness_prefix) j["prefix"] = *r.witness_prefix;
  if (r.witness_mask) j["mask"] = *r.witness_mask;
  j["evals"] = r.eval_count;
  return j;
}

}  // namespace

NetworkFile parse_network_file(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column_at(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << "network file: JSON syntax error at line " << line << ", column " << column;
    throw ParseError(msg.str(), line, column);
  }
  if (!root.is_object()) {
    throw ParseError("network file: top-level value must be an object");
  }
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (key != "name" && key != "power" && key != "source_gains" && key != "relay_dest_gains") {
      throw ParseError("network file: unknown key '" + key + "'");
    }
  }
  for (const char* key : {"power", "source_gains", "relay_dest_gains"}) {
    if (!root.contains(key)) {
      throw ParseError(std::string("network file: missing key '") + key + "'");
    }
  }

  NetworkFile file;
  if (root.contains("name")) {
    if (!root["name"].is_string()) {
      throw ParseError("network file: name must be a string");
    }
    file.name = root["name"].get<std::string>();
  }

  const double power = number_at(root["power"], "power");

  const json& src = root["source_gains"];
  if (!src.is_array() || src.empty()) {
    throw ParseError("network file: source_gains must be a nonempty array");
  }
  std::vector<double> source_gains;
  source_gains.reserve(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    source_gains.push_back(number_at(src[j], "source_gains[" + std::to_string(j) + "]"));
  }

  const json& mat = root["relay_dest_gains"];
  if (!mat.is_array() || mat.empty()) {
    throw ParseError("network file: relay_dest_gains must be a nonempty array of rows");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(mat.size());
  for (std::size_t d = 0; d < mat.size(); ++d) {
    const json& row = mat[d];
    if (!row.is_array()) {
      throw ParseError("network file: relay_dest_gains[" + std::to_string(d) +
                       "] must be an array");
    }
    if (row.size() != src.size()) {
      throw ParseError("network file: relay_dest_gains row " + std::to_string(d + 1) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(src.size()));
    }
    std::vector<double> r;
    r.reserve(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      r.push_back(number_at(row[j], "relay_dest_gains[" + std::to_string(d) + "][" +
                                        std::to_string(j) + "]"));
    }
    rows.push_back(std::move(r));
  }

  try {
    file.network = Network::from_gains(power, std::move(source_gains), std::move(rows));
  } catch (const std::runtime_error& e) {
    throw ParseError(std::string("network file: ") + e.what());
  }
  return file;
}

NetworkFile load_network_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed while reading '" + path.string() + "'");
  }
  return parse_network_file(buffer.str());
}

std::string emit_network_file(const NetworkFile& file) {
  file.network.validate();
  ordered_json root;
  if (file.name) root["name"] = *file.name;
  root["power"] = file.network.power;
  root["source_gains"] = file.network.source_gains;
  root["relay_dest_gains"] = file.network.relay_dest_gains;
  return root.dump(2) + "\n";
}

std::string format_value(double value, int precision) {
  const int p = std::clamp(precision, 1, 17);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", p, value);
  return buf;
}

std::string sweep_csv_header() {
  return "trial,seed,n,l,cutset_prefix_bits,cutset_exhaustive_bits,pdf_dms_bits,pdf_co_bits,"
         "ddf_bits,capprox_bits,gap_pdf_dms,gap_ddf,cert_pdf,cert_ddf";
}

std::string sweep_csv_row(int trial, std::uint64_t seed, const GapReport& r, int precision) {
  auto fmt = [precision](double v) { return format_value(v, precision); };
  auto opt = [&fmt](const std::optional<BoundResult>& b) {
    return b ? fmt(b->value_bits) : std::string();
  };
  std::ostringstream out;
  out << trial << ',' << seed << ',' << r.n << ',' << r.l << ','
      << fmt(r.cutset_prefix.value_bits) << ',' << opt(r.cutset_exhaustive) << ','
      << fmt(r.pdf_dms.value_bits) << ',' << opt(r.pdf_co) << ',' << opt(r.ddf) << ','
      << fmt(r.capprox.value_bits) << ',' << fmt(r.gap_pdf_dms) << ','
      << (r.gap_ddf ? fmt(*r.gap_ddf) : std::string()) << ','
      << (r.cert_pdf_dms ? "true" : "false") << ','
      << (r.cert_ddf ? (*r.cert_ddf ? "true" : "false") : "");
  return out.str();
}

std::string bench_csv_header() { return "n,l,algo,median_seconds,evals"; }

std::string bench_csv_row(const BenchRow& row, int precision) {
  std::ostringstream out;
  out << row.n << ',' << row.l << ',' << row.algo << ','
      << format_value(row.median_seconds, precision) << ',' << row.evals;
  return out.str();
}

std::string render_bounds_table(const NetworkFile& file, const SnrProfile& profile,
                                const GapReport& r, int precision) {
  auto fmt = [precision](double v) { return format_value(v, precision); };
  std::ostringstream out;
  out << "network";
  if (file.name) out << " " << *file.name;
  out << ": N=" << r.n << " relays, L=" << r.l << " destinations, P=" << fmt(r.power) << "\n";
  out << "relay order (sorted -> original): ";
  for (int j = 0; j < r.n; ++j) {
    out << (j > 0 ? "," : "") << profile.ordering()[static_cast<std::size_t>(j)] + 1;
  }
  out << "\n\n";

  auto row = [&](std::string_view label, const BoundResult& b) {
    out << std::left << std::setw(19) << label << std::setw(14) << fmt(b.value_bits)
        << std::setw(14) << witness_text(b) << b.eval_count << "\n";
  };
  out << std::left << std::setw(19) << "bound" << std::setw(14) << "bits" << std::setw(14)
      << "witness" << "evals\n";
  row(to_string(r.cutset_prefix.kind), r.cutset_prefix);
  if (r.cutset_exhaustive) row(to_string(r.cutset_exhaustive->kind), *r.cutset_exhaustive);
  row(to_string(r.pdf_dms.kind), r.pdf_dms);
  if (r.pdf_co) row(to_string(r.pdf_co->kind), *r.pdf_co);
  if (r.ddf) row(to_string(r.ddf->kind), *r.ddf);
  row(to_string(r.capprox.kind), r.capprox);
  if (r.exact) row("exact (N=1)", *r.exact);
  out << "\n";

  out << "capacity-approx radius: +/-" << fmt(r.capprox_radius) << " bits\n";
  if (r.df_optimal_bits) {
    out << "decode-forward optimal: capacity = " << fmt(*r.df_optimal_bits) << " bits\n";
  }
  if (r.best_relay_bits) {
    out << "best-relay regime: rate = " << fmt(*r.best_relay_bits) << " bits\n";
  }
  const double log2n = std::log2(static_cast<double>(r.n));
  out << "gap pdf-dms = " << fmt(r.gap_pdf_dms) << " (<= log2 N = " << fmt(log2n)
      << "): " << (r.cert_pdf_dms ? "PASS" : "FAIL") << "\n";
  if (r.gap_ddf) {
    out << "gap ddf = " << fmt(*r.gap_ddf)
        << " (<= log2 N + 1/2 log2 e = " << fmt(log2n + 0.5 * std::numbers::log2e)
        << "): " << (*r.cert_ddf ? "PASS" : "FAIL") << "\n";
  }
  if (r.gap_pdf_co) {
    out << "gap pdf-co = " << fmt(*r.gap_pdf_co) << " (<= log2 N = " << fmt(log2n)
        << "): " << (*r.cert_pdf_co ? "PASS" : "FAIL") << "\n";
  }
  return out.str();
}

std::string render_bounds_json(const NetworkFile& file, const SnrProfile& profile,
                               const GapReport& r, int precision) {
  auto num = [precision](double v) { return std::stod(format_value(v, precision)); };
  json root;
  json net;
  if (file.name) net["name"] = *file.name;
  net["n"] = r.n;
  net["l"] = r.l;
  net["power"] = num(r.power);
  root["network"] = net;

  json order = json::array();
  for (int idx : profile.ordering()) order.push_back(idx + 1);
  root["ordering"] = order;

  json bounds;
  bounds[std::string(to_string(r.cutset_prefix.kind))] = bound_to_json(r.cutset_prefix, precision);
  if (r.cutset_exhaustive) {
    bounds[std::string(to_string(r.cutset_exhaustive->kind))] =
        bound_to_json(*r.cutset_exhaustive, precision);
  }
  bounds[std::string(to_string(r.pdf_dms.kind))] = bound_to_json(r.pdf_dms, precision);
  if (r.pdf_co) bounds[std::string(to_string(r.pdf_co->kind))] = bound_to_json(*r.pdf_co, precision);
  if (r.ddf) bounds[std::string(to_string(r.ddf->kind))] = bound_to_json(*r.ddf, precision);
  bounds[std::string(to_string(r.capprox.kind))] = bound_to_json(r.capprox, precision);
  if (r.exact) bounds["exact"] = bound_to_json(*r.exact, precision);
  root["bounds"] = bounds;

  root["capprox_radius"] = num(r.capprox_radius);
  if (r.df_optimal_bits) root["df_optimal_bits"] = num(*r.df_optimal_bits);
  if (r.best_relay_bits) root["best_relay_bits"] = num(*r.best_relay_bits);

  json gaps;
  gaps["pdf-dms"] = num(r.gap_pdf_dms);
  if (r.gap_ddf) gaps["ddf"] = num(*r.gap_ddf);
  if (r.gap_pdf_co) gaps["pdf-co"] = num(*r.gap_pdf_co);
  root["gaps"] = gaps;

  json certs;
  certs["pdf-dms"] = r.cert_pdf_dms;
  if (r.cert_ddf) certs["ddf"] = *r.cert_ddf;
  if (r.cert_pdf_co) certs["pdf-co"] = *r.cert_pdf_co;
  root["certificates"] = certs;

  return root.dump(2) + "\n";
}

}  // namespace relaycap::io
