// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief State files, report rendering and CSV output.
 *
 *  State file (JSON, version 1):
 *
 *      {
 *        "format": "gdneg-state",
 *        "version": 1,
 *        "m": 2,
 *        "n": 3,
 *        "entries": [[re, im], ...]      // (mn)^2 pairs, row-major
 *      }
 */

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdneg/measures.hpp"
#include "gdneg/state.hpp"

namespace gdneg {

inline constexpr const char* kStateFormat = "gdneg-state";
inline constexpr int kStateVersion = 1;

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline nlohmann::json state_to_json(std::size_t m, std::size_t n, const ComplexMatrix& mat) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& v : mat.entries()) entries.push_back({v.real(), v.imag()});
  return {{"format", kStateFormat},
          {"version", kStateVersion},
          {"m", m},
          {"n", n},
          {"entries", std::move(entries)}};
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
  return state_to_json(rho.m(), rho.n(), rho.matrix());
}

struct RawState {
  std::size_t m = 0;
  std::size_t n = 0;
  ComplexMatrix mat;
};

/// Parses the JSON layout without checking the state invariants.
inline RawState raw_state_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kStateFormat) {
      throw error(errc::parse_error, "unexpected format tag");
    }
    if (j.at("version").get<int>() != kStateVersion) {
      throw error(errc::parse_error, "unsupported version " + j.at("version").dump());
    }
    RawState out;
    out.m = j.at("m").get<std::size_t>();
    out.n = j.at("n").get<std::size_t>();
    const auto& entries = j.at("entries");
    const std::size_t d = out.m * out.n;
    if (!entries.is_array() || entries.size() != d * d) {
      throw error(errc::parse_error, "expected " + std::to_string(d * d) + " entries");
    }
    std::vector<complex> values;
    values.reserve(d * d);
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) {
        throw error(errc::parse_error, "each entry must be a [re, im] pair");
      }
      values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    out.mat = ComplexMatrix(d, d, std::move(values));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

inline DensityMatrix state_from_json(const nlohmann::json& j) {
  RawState raw = raw_state_from_json(j);
  return {raw.m, raw.n, std::move(raw.mat)};
}

inline DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse_error, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, path + ": " + e.what());
  }
  return state_from_json(j);
}

inline void write_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw error(errc::parse_error, "cannot write '" + path + "'");
  out << state_to_json(rho).dump(2) << '\n';
}

inline nlohmann::json report_to_json(const MeasureReport& r) {
  return {{"m", r.m},
          {"n", r.n},
          {"negativity", r.negativity},
          {"negativity_sq", r.negativity_sq},
          {"discord", r.discord},
          {"discord_exact", r.discord_exact},
          {"gap", r.gap()},
          {"pt_negative_count", r.pt_negative_count},
          {"pt_negative_cap", r.pt_negative_cap},
          {"bounds_ok", r.bounds_ok}};
}

inline void render_report(std::ostream& os, const MeasureReport& r) {
  os << "dims               " << r.m << "x" << r.n << '\n'
     << "negativity         " << format_double(r.negativity) << '\n'
     << "negativity_sq      " << format_double(r.negativity_sq) << '\n'
     << "discord            " << format_double(r.discord)
     << (r.discord_exact ? "" : "  (lower bound)") << '\n'
     << "gap (N^2 - D)      " << format_double(r.gap()) << '\n'
     << "pt_negative_count  " << r.pt_negative_count << " (cap " << r.pt_negative_cap << ")\n"
     << "bounds_ok          " << (r.bounds_ok ? "true" : "false") << '\n';
  if (!r.bounds_ok) os << "failure            " << r.failure << '\n';
}

/// One point of a family sweep.
struct SweepRow {
  double param = 0.0;
  double discord = 0.0;
  double negativity_sq = 0.0;
  double gap = 0.0;
  std::optional<double> closed_form_discord;
  std::optional<double> closed_form_negativity_sq;
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const bool closed = !rows.empty() && rows.front().closed_form_discord.has_value();
  os << "param,discord,negativity_sq,gap";
  if (closed) os << ",closed_form_discord,closed_form_negativity_sq";
  os << '\n';
  for (const auto& r : rows) {
    os << format_double(r.param) << ',' << format_double(r.discord) << ','
       << format_double(r.negativity_sq) << ',' << format_double(r.gap);
    if (closed) {
      os << ',' << format_double(r.closed_form_discord.value_or(0.0)) << ','
         << format_double(r.closed_form_negativity_sq.value_or(0.0));
    }
    os << '\n';
  }
}

/// Reads back what write_sweep_csv produced.
inline std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw error(errc::parse_error, "empty CSV");
  const bool closed = line.find("closed_form_discord") != std::string::npos;
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() != (closed ? 6u : 4u)) throw error(errc::parse_error, "bad CSV row: " + line);
    SweepRow r{cells[0], cells[1], cells[2], cells[3], std::nullopt, std::nullopt};
    if (closed) {
      r.closed_form_discord = cells[4];
      r.closed_form_negativity_sq = cells[5];
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gdneg
