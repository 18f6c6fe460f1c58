// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: analyze, sweep, sample, verify, state.
// Exit codes: 0 success, 1 validation/usage failure, 2 theorem violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gdneg/gdneg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitViolation = 2;

struct Dims {
  std::size_t m = 2;
  std::size_t n = 3;
};

Dims parse_dims(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) {
    throw gdneg::error(gdneg::errc::parse_error, "dims must look like MxN, got '" + text + "'");
  }
  try {
    return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw gdneg::error(gdneg::errc::parse_error, "dims must look like MxN, got '" + text + "'");
  }
}

std::vector<double> parse_params(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric discord and negativity of bipartite states"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Render reports as JSON");

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "Report measures of a state file");
  analyze->add_option("file", analyze_path, "State file")->required();

  std::string family_name;
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 1;
  std::string out_path;
  bool allow_out_of_range = false;
  auto* sweep = app.add_subcommand("sweep", "Emit D and N^2 along a family as CSV");
  sweep->add_option("--family", family_name, "rho1 | rho2 | rho3 | rho4")->required();
  sweep->add_option("--from", from, "First parameter value (c = a/b for rho1)")->required();
  sweep->add_option("--to", to, "Last parameter value")->required();
  sweep->add_option("--steps", steps, "Number of grid points, endpoints included")->required();
  sweep->add_option("--out", out_path, "CSV path ('-' for stdout)")->required();
  sweep->add_flag("--allow-out-of-range", allow_out_of_range,
                  "Permit parameters outside the family's validity window");

  std::string dims_text = "2x3";
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string ensemble_name = "hilbert-schmidt";
  unsigned threads = 1;
  auto* sample = app.add_subcommand("sample", "Tally D < N^2 over random states");
  sample->add_option("--dims", dims_text, "MxN")->required();
  sample->add_option("--count", count, "Number of states")->required();
  sample->add_option("--seed", seed, "Seed")->required();
  sample->add_option("--ensemble", ensemble_name, "hilbert-schmidt | pure");
  sample->add_option("--threads", threads, "Worker threads");

  std::string fail_out = "verify_failure.json";
  auto* verify = app.add_subcommand("verify", "Check every invariant on random states");
  verify->add_option("--dims", dims_text, "MxN")->required();
  verify->add_option("--count", count, "Number of states")->required();
  verify->add_option("--seed", seed, "Seed")->required();
  verify->add_option("--ensemble", ensemble_name, "hilbert-schmidt | pure");
  verify->add_option("--fail-out", fail_out, "Where to write the first failing state");

  std::string params_text;
  auto* state = app.add_subcommand("state", "Write a family member as a state file");
  state->add_option("--family", family_name, "rho1 | rho2 | rho3 | rho4 | max")->required();
  state->add_option("--params", params_text, "Comma-separated parameters (a,b | a | m,n)")
      ->required();
  state->add_option("--out", out_path, "State file path")->required();
  state->add_flag("--allow-out-of-range", allow_out_of_range, "Permit out-of-window parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      const auto result = gdneg::analyze_file(analyze_path);
      if (json) {
        std::cout << gdneg::report_to_json(result.report).dump(2) << '\n';
      } else {
        gdneg::render_report(std::cout, result.report);
      }
      return result.report.bounds_ok ? kExitOk : kExitViolation;
    }
    if (*sweep) {
      const gdneg::SweepOptions opt{gdneg::parse_family(family_name), from, to, steps,
                                    allow_out_of_range};
      const auto rows = gdneg::run_sweep(opt);
      if (out_path == "-") {
        gdneg::write_sweep_csv(std::cout, rows);
      } else {
        std::ofstream out(out_path);
        if (!out) throw gdneg::error(gdneg::errc::parse_error, "cannot write '" + out_path + "'");
        gdneg::write_sweep_csv(out, rows);
      }
      return kExitOk;
    }
    if (*sample || *verify) {
      const Dims d = parse_dims(dims_text);
      const gdneg::SampleOptions opt{d.m, d.n, count, seed, gdneg::parse_ensemble(ensemble_name),
                                     threads};
      if (*sample) {
        const auto summary = gdneg::run_sample(opt);
        if (json) {
          std::cout << gdneg::summary_to_json(summary).dump(2) << '\n';
        } else {
          gdneg::render_summary(std::cout, summary);
        }
        return summary.bound_failures == 0 ? kExitOk : kExitViolation;
      }
      const auto report = gdneg::run_verify(opt);
      if (json) {
        std::cout << gdneg::verify_to_json(report).dump(2) << '\n';
      } else {
        gdneg::render_verify(std::cout, report);
      }
      if (report.failure) {
        std::ofstream out(fail_out);
        out << report.failure->state.dump(2) << '\n';
        std::cerr << "failing state written to " << fail_out << '\n';
        return kExitViolation;
      }
      return kExitOk;
    }
    if (*state) {
      const std::vector<double> params = parse_params(params_text);
      if (family_name == "max") {
        if (params.size() != 2) {
          throw gdneg::error(gdneg::errc::parse_error, "max takes --params m,n");
        }
        gdneg::write_state_file(out_path, gdneg::maximal_state(static_cast<std::size_t>(params[0]),
                                                               static_cast<std::size_t>(params[1])));
      } else {
        gdneg::write_state_file(
            out_path, gdneg::build({gdneg::parse_family(family_name), params, allow_out_of_range}));
      }
      return kExitOk;
    }
  } catch (const gdneg::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.residual() != 0.0) std::cerr << "residual: " << gdneg::format_double(e.residual()) << '\n';
    return gdneg::is_numerical_fault(e.code()) ? kExitViolation : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
