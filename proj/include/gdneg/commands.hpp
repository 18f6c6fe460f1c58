// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Sweep, sampling and verification runs behind the command-line tool.
 *
 *  State number i of a run with seed s is always drawn from Rng(s, i), so the
 *  outcome does not depend on how the run is split across threads.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gdneg/families.hpp"
#include "gdneg/io.hpp"
#include "gdneg/measures.hpp"
#include "gdneg/sampling.hpp"

namespace gdneg {

/// N^2 - D must exceed this to count as a violation of D >= N^2.
inline constexpr double kViolationThreshold = 1e-12;
/// Oracle agreement demanded by verification runs.
inline constexpr double kOracleTolerance = 1e-5;
inline constexpr double kMeasurementIdentityTolerance = 1e-10;
inline constexpr std::size_t kOracleSubsample = 20;
inline constexpr std::size_t kOracleResolution = 64;

struct SweepOptions {
  Family family = Family::rho1;
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 1;
  bool allow_out_of_range = false;
};

/// Parameter of row i: from + i (to - from)/(steps - 1), both ends included.
inline std::vector<double> sweep_grid(const SweepOptions& opt) {
  if (opt.steps == 0 || !(opt.from <= opt.to) || (opt.steps == 1 && opt.from != opt.to)) {
    throw error(errc::invalid_range, "need steps >= 1, from <= to, and from == to when steps == 1");
  }
  std::vector<double> grid(opt.steps);
  for (std::size_t i = 0; i < opt.steps; ++i) {
    grid[i] = opt.steps == 1 ? opt.from
                             : opt.from + (opt.to - opt.from) * static_cast<double>(i) /
                                              static_cast<double>(opt.steps - 1);
  }
  grid.back() = opt.to;
  return grid;
}

/// For rho1 the parameter is c = a/b with b = 1, and closed forms are attached.
inline FamilySpec sweep_point(const SweepOptions& opt, double param) {
  if (opt.family == Family::rho1) return {Family::rho1, {param, 1.0}, opt.allow_out_of_range};
  return {opt.family, {param}, opt.allow_out_of_range};
}

inline std::vector<SweepRow> run_sweep(const SweepOptions& opt) {
  const std::vector<double> grid = sweep_grid(opt);
  if (!opt.allow_out_of_range) {
    for (double p : grid) {
      if (!in_range(sweep_point(opt, p))) {
        throw error(errc::invalid_range, "sweep point " + format_double(p) + " lies outside the " +
                                             std::string(to_string(opt.family)) +
                                             " window (pass --allow-out-of-range)");
      }
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    const DensityMatrix rho = build(sweep_point(opt, p));
    SweepRow row;
    row.param = p;
    row.negativity_sq = std::pow(negativity(rho), 2);
    row.discord = geometric_discord(rho).value;
    row.gap = row.negativity_sq - row.discord;
    if (opt.family == Family::rho1) {
      const Rho1ClosedForms cf = rho1_closed_forms(p, 1.0);
      row.closed_form_discord = cf.discord;
      row.closed_form_negativity_sq = cf.negativity_sq;
    }
    rows.push_back(row);
  }
  return rows;
}

struct SampleOptions {
  std::size_t m = 2;
  std::size_t n = 3;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::hilbert_schmidt;
  unsigned threads = 1;
};

struct SampleSummary {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::hilbert_schmidt;
  std::size_t violations = 0;
  std::optional<double> max_gap;
  std::optional<double> min_gap;
  std::size_t bound_failures = 0;

  void absorb(const MeasureReport& r) {
    ++count;
    const double g = r.gap();
    if (g > kViolationThreshold) ++violations;
    if (!r.bounds_ok) ++bound_failures;
    max_gap = max_gap ? std::max(*max_gap, g) : g;
    min_gap = min_gap ? std::min(*min_gap, g) : g;
  }

  void merge(const SampleSummary& o) {
    count += o.count;
    violations += o.violations;
    bound_failures += o.bound_failures;
    if (o.max_gap) max_gap = max_gap ? std::max(*max_gap, *o.max_gap) : *o.max_gap;
    if (o.min_gap) min_gap = min_gap ? std::min(*min_gap, *o.min_gap) : *o.min_gap;
  }
};

namespace detail {

/// Splits [0, count) into contiguous chunks and runs work(begin, end, slot)
/// on up to `threads` threads.
template <class Work>
void parallel_chunks(std::size_t count, unsigned threads, Work&& work) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    work(std::size_t{0}, count, 0u);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(count, chunk * t);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&work, begin, end, t] { work(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline SampleSummary run_sample(const SampleOptions& opt) {
  check_dims(opt.m, opt.n);
  std::vector<SampleSummary> partial(std::max(1u, opt.threads));
  detail::parallel_chunks(opt.count, opt.threads, [&](std::size_t begin, std::size_t end, unsigned slot) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(opt.seed, i);
      partial[slot].absorb(measure_report(random_state(opt.m, opt.n, opt.ensemble, rng)));
    }
  });
  SampleSummary out;
  out.m = opt.m;
  out.n = opt.n;
  out.seed = opt.seed;
  out.ensemble = opt.ensemble;
  for (const auto& p : partial) out.merge(p);
  return out;
}

inline nlohmann::json summary_to_json(const SampleSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  return {{"dims", {s.m, s.n}},
          {"ensemble", std::string(to_string(s.ensemble))},
          {"count", s.count},
          {"seed", s.seed},
          {"violations", s.violations},
          {"max_gap", opt(s.max_gap)},
          {"min_gap", opt(s.min_gap)},
          {"bound_failures", s.bound_failures}};
}

inline void render_summary(std::ostream& os, const SampleSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("n/a"); };
  os << "dims            " << s.m << "x" << s.n << '\n'
     << "ensemble        " << to_string(s.ensemble) << '\n'
     << "count           " << s.count << '\n'
     << "seed            " << s.seed << '\n'
     << "violations      " << s.violations << '\n'
     << "max_gap         " << opt(s.max_gap) << '\n'
     << "min_gap         " << opt(s.min_gap) << '\n'
     << "bound_failures  " << s.bound_failures << '\n';
}

struct VerifyFailure {
  std::size_t index = 0;
  std::string reason;
  nlohmann::json state;  ///< state-file JSON of the offending state
};

struct VerifyReport {
  SampleSummary summary;
  std::size_t oracle_checked = 0;
  double max_oracle_error = 0.0;
  std::size_t identity_checked = 0;
  double max_identity_residual = 0.0;
  double max_negativity_disagreement = 0.0;
  std::optional<VerifyFailure> failure;

  bool passed() const { return !failure.has_value(); }
};

namespace detail {

struct StateVerdict {
  MeasureReport report;
  std::optional<double> oracle_error;
  std::optional<double> identity_residual;
  std::string failure;
};

inline StateVerdict verify_state(const DensityMatrix& rho, bool with_oracle, Rng& rng) {
  StateVerdict v;
  v.report = measure_report(rho);
  if (!v.report.bounds_ok) {
    v.failure = v.report.failure;
    return v;
  }
  if (with_oracle && rho.m() == 2) {
    const double brute = gd_bruteforce_2xn(rho, kOracleResolution);
    v.oracle_error = std::abs(brute - v.report.discord);
    if (*v.oracle_error > kOracleTolerance) {
      v.failure = "oracle disagrees with closed-form discord by " + format_double(*v.oracle_error);
      return v;
    }
    const std::array<double, 3> u{rng.normal(), rng.normal(), rng.normal()};
    const MeasurementIdentity id = measurement_identity_check(rho, u);
    v.identity_residual = std::max(id.overlap_residual(), id.distance_residual());
    if (*v.identity_residual > kMeasurementIdentityTolerance || id.distance_sq > 1.0 + kBoundSlack) {
      v.failure = "measurement identity residual " + format_double(*v.identity_residual);
    }
  }
  return v;
}

}  // namespace detail

/// Runs every invariant on `count` sampled states; the first `kOracleSubsample`
/// states of an m = 2 run also go through the brute-force oracle and the
/// measurement identity. Stops at the first failure.
inline VerifyReport run_verify(const SampleOptions& opt) {
  check_dims(opt.m, opt.n);
  VerifyReport out;
  out.summary.m = opt.m;
  out.summary.n = opt.n;
  out.summary.seed = opt.seed;
  out.summary.ensemble = opt.ensemble;
  for (std::size_t i = 0; i < opt.count; ++i) {
    Rng rng(opt.seed, i);
    const DensityMatrix rho = random_state(opt.m, opt.n, opt.ensemble, rng);
    detail::StateVerdict v;
    try {
      v = detail::verify_state(rho, i < kOracleSubsample, rng);
    } catch (const error& e) {
      v.report = {};
      v.failure = e.what();
    }
    if (v.failure.empty()) {
      out.summary.absorb(v.report);
      out.max_negativity_disagreement =
          std::max(out.max_negativity_disagreement, v.report.negativity_disagreement);
      if (v.oracle_error) {
        ++out.oracle_checked;
        out.max_oracle_error = std::max(out.max_oracle_error, *v.oracle_error);
      }
      if (v.identity_residual) {
        ++out.identity_checked;
        out.max_identity_residual = std::max(out.max_identity_residual, *v.identity_residual);
      }
      continue;
    }
    out.failure = VerifyFailure{i, v.failure, state_to_json(rho)};
    break;
  }
  return out;
}

inline nlohmann::json verify_to_json(const VerifyReport& r) {
  nlohmann::json j = {{"passed", r.passed()},
                      {"summary", summary_to_json(r.summary)},
                      {"oracle_checked", r.oracle_checked},
                      {"max_oracle_error", r.max_oracle_error},
                      {"identity_checked", r.identity_checked},
                      {"max_identity_residual", r.max_identity_residual},
                      {"max_negativity_disagreement", r.max_negativity_disagreement}};
  if (r.failure) j["failure"] = {{"index", r.failure->index}, {"reason", r.failure->reason}};
  return j;
}

inline void render_verify(std::ostream& os, const VerifyReport& r) {
  render_summary(os, r.summary);
  os << "oracle_checked  " << r.oracle_checked << " (max error " << format_double(r.max_oracle_error)
     << ")\n"
     << "identity_checked " << r.identity_checked << " (max residual "
     << format_double(r.max_identity_residual) << ")\n"
     << "max_negativity_disagreement " << format_double(r.max_negativity_disagreement) << '\n'
     << (r.passed() ? "PASS" : "FAIL");
  if (r.failure) os << " at state " << r.failure->index << ": " << r.failure->reason;
  os << '\n';
}

struct AnalyzeResult {
  DensityMatrix state;
  MeasureReport report;
};

inline AnalyzeResult analyze_file(const std::string& path) {
  DensityMatrix rho = read_state_file(path);
  MeasureReport r = measure_report(rho);
  return {std::move(rho), std::move(r)};
}

}  // namespace gdneg
