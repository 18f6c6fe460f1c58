// SPDX-License-Identifier: Apache-2.0
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

#ifndef GDNEG_CLI_PATH
#error "GDNEG_CLI_PATH must point at the built command-line tool"
#endif

namespace gdneg {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gdneg_tests";
  fs::create_directories(dir);
  return dir / name;
}

int run_cli(const std::string& args, const fs::path& stdout_path) {
  const std::string cmd = std::string(GDNEG_CLI_PATH) + " " + args + " > " + stdout_path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(StateFile, RoundTripIsExact) {
  Rng rng(61);
  const DensityMatrix rho = random_hs_state(2, 3, rng);
  const fs::path p = scratch("roundtrip.json");
  write_state_file(p.string(), rho);
  const DensityMatrix back = read_state_file(p.string());
  EXPECT_EQ(back.matrix(), rho.matrix());
  const MeasureReport a = measure_report(rho);
  const MeasureReport b = measure_report(back);
  EXPECT_NEAR(a.negativity, b.negativity, 1e-12);
  EXPECT_NEAR(a.discord, b.discord, 1e-12);
}

TEST(StateFile, RejectsBadTraceWithResidual) {
  const ComplexMatrix m = ComplexMatrix::identity(6) * complex(0.9 / 6);
  try {
    state_from_json(state_to_json(2, 3, m));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_state);
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
    EXPECT_NEAR(e.residual(), 0.1, 1e-12);
  }
}

TEST(StateFile, ParseErrors) {
  auto j = state_to_json(DensityMatrix::maximally_mixed(2, 2));
  auto bad_version = j;
  bad_version["version"] = 7;
  auto short_entries = j;
  short_entries["entries"].erase(0);
  auto bad_pair = j;
  bad_pair["entries"][0] = {1.0};
  auto no_tag = j;
  no_tag.erase("format");
  for (const auto& bad : {bad_version, short_entries, bad_pair, no_tag}) {
    try {
      state_from_json(bad);
      FAIL() << bad.dump();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::parse_error);
    }
  }
  EXPECT_THROW(read_state_file(scratch("does_not_exist.json").string()), error);
}

TEST(Sweep, Rho1ClosedFormColumnsAgree) {
  const auto rows = run_sweep({Family::rho1, 0.0, 6.0, 601, false});
  ASSERT_EQ(rows.size(), 601u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.closed_form_discord && r.closed_form_negativity_sq);
    EXPECT_NEAR(r.discord, *r.closed_form_discord, 1e-10);
    EXPECT_NEAR(r.negativity_sq, *r.closed_form_negativity_sq, 1e-10);
    EXPECT_NEAR(r.gap, r.negativity_sq - r.discord, 1e-12);
  }
  EXPECT_DOUBLE_EQ(rows.back().param, 6.0);
}

TEST(Sweep, SinglePoint) {
  const auto rows = run_sweep({Family::rho1, 0.0, 0.0, 1, false});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].discord, 0.0);
  EXPECT_EQ(rows[0].negativity_sq, 0.0);
}

TEST(Sweep, Rho2GapsPositive) {
  const auto rows = run_sweep({Family::rho2, 0.01, 1.0, 100, false});
  for (const auto& r : rows) {
    EXPECT_GT(r.gap, 0.0) << r.param;
    EXPECT_FALSE(r.closed_form_discord.has_value());
  }
}

TEST(Sweep, InvalidRanges) {
  for (const SweepOptions& opt : {SweepOptions{Family::rho1, 1.0, 0.0, 5, false},
                                  SweepOptions{Family::rho1, 0.0, 1.0, 0, false},
                                  SweepOptions{Family::rho1, 0.0, 1.0, 1, false},
                                  SweepOptions{Family::rho3, 1.0, 2.0, 5, false}}) {
    try {
      run_sweep(opt);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::invalid_range);
    }
  }
}

TEST(Sweep, CsvRoundTripAndDeterminism) {
  const auto rows = run_sweep({Family::rho3, 1.75, 4.75, 31, false});
  std::stringstream a;
  std::stringstream b;
  write_sweep_csv(a, rows);
  write_sweep_csv(b, run_sweep({Family::rho3, 1.75, 4.75, 31, false}));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "param,discord,negativity_sq,gap");
  const auto back = read_sweep_csv(a);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].param, rows[i].param);
    EXPECT_EQ(back[i].gap, rows[i].gap);
  }
}

TEST(Sample, TwoByTwoHasNoViolations) {
  const SampleSummary s = run_sample({2, 2, 2000, 42, Ensemble::hilbert_schmidt, 2});
  EXPECT_EQ(s.count, 2000u);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_EQ(s.bound_failures, 0u);
}

TEST(Sample, DeterministicAndThreadIndependent) {
  const SampleSummary a = run_sample({2, 3, 300, 9, Ensemble::pure, 1});
  const SampleSummary b = run_sample({2, 3, 300, 9, Ensemble::pure, 4});
  EXPECT_EQ(summary_to_json(a).dump(), summary_to_json(b).dump());
  EXPECT_LE(a.violations, a.count);
}

TEST(Sample, EmptyRun) {
  const SampleSummary s = run_sample({2, 3, 0, 1, Ensemble::hilbert_schmidt, 1});
  EXPECT_EQ(s.count, 0u);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_FALSE(s.max_gap.has_value());
}

TEST(Sample, InvalidDims) {
  EXPECT_THROW(run_sample({3, 2, 1, 1, Ensemble::pure, 1}), error);
  EXPECT_THROW(run_sample({1, 3, 1, 1, Ensemble::pure, 1}), error);
  EXPECT_THROW(parse_ensemble("ginibre"), error);
}

TEST(Verify, SmallRunsPass) {
  const VerifyReport r23 = run_verify({2, 3, 60, 7, Ensemble::hilbert_schmidt, 1});
  EXPECT_TRUE(r23.passed());
  EXPECT_EQ(r23.oracle_checked, kOracleSubsample);
  EXPECT_EQ(r23.identity_checked, kOracleSubsample);
  const VerifyReport r33 = run_verify({3, 3, 60, 7, Ensemble::hilbert_schmidt, 1});
  EXPECT_TRUE(r33.passed());
  EXPECT_EQ(r33.oracle_checked, 0u);
}

// --- command-line surface --------------------------------------------------

TEST(Cli, AnalyzeRho1) {
  const fs::path state = scratch("rho1_5_2.json");
  const fs::path out = scratch("analyze.out");
  ASSERT_EQ(run_cli("state --family rho1 --params 5,2 --out " + state.string(), out), 0) << slurp(out);
  ASSERT_EQ(run_cli("--json analyze " + state.string(), out), 0) << slurp(out);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_NEAR(j["discord"].get<double>(), 200.0 / 841, 1e-12);
  EXPECT_NEAR(j["gap"].get<double>(), (232 - 32 * std::sqrt(26.0)) / 841, 1e-12);
  EXPECT_EQ(j["pt_negative_count"].get<int>(), 2);
  EXPECT_TRUE(j["discord_exact"].get<bool>());

  ASSERT_EQ(run_cli("analyze " + state.string(), out), 0);
  EXPECT_NE(slurp(out).find("pt_negative_count  2"), std::string::npos);
}

TEST(Cli, AnalyzeRejectsBadTrace) {
  const fs::path state = scratch("trace09.json");
  std::ofstream(state) << state_to_json(2, 3, ComplexMatrix::identity(6) * complex(0.9 / 6)).dump();
  const fs::path out = scratch("bad.out");
  EXPECT_EQ(run_cli("analyze " + state.string(), out), 1);
  const std::string text = slurp(out);
  EXPECT_NE(text.find("trace"), std::string::npos);
  EXPECT_NE(text.find("residual: 0.09999999999"), std::string::npos) << text;
}

TEST(Cli, SweepWritesCsv) {
  const fs::path csv = scratch("rho1.csv");
  const fs::path out = scratch("sweep.out");
  ASSERT_EQ(run_cli("sweep --family rho1 --from 0 --to 6 --steps 61 --out " + csv.string(), out), 0)
      << slurp(out);
  std::ifstream in(csv);
  const auto rows = read_sweep_csv(in);
  EXPECT_EQ(rows.size(), 61u);
  EXPECT_EQ(run_cli("sweep --family rho7 --from 0 --to 1 --steps 2 --out -", out), 1);
  EXPECT_EQ(run_cli("sweep --family rho2 --from 0 --to 1 --steps 5 --out -", out), 1);
  EXPECT_EQ(run_cli("sweep --family rho2 --from 0 --to 1 --steps 5 --out - --allow-out-of-range", out), 0);
}

TEST(Cli, SampleAndVerify) {
  const fs::path out = scratch("sample.out");
  ASSERT_EQ(run_cli("--json sample --dims 2x2 --count 200 --seed 42 --ensemble hilbert-schmidt", out), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["violations"].get<int>(), 0);
  EXPECT_EQ(j["count"].get<int>(), 200);
  ASSERT_EQ(run_cli("verify --dims 2x2 --count 30 --seed 1", out), 0) << slurp(out);
  EXPECT_NE(slurp(out).find("PASS"), std::string::npos);
  EXPECT_EQ(run_cli("sample --dims 3x2 --count 1 --seed 1", out), 1);
  EXPECT_EQ(run_cli("sample --dims banana --count 1 --seed 1", out), 1);
}

TEST(Cli, MaximalStateFile) {
  const fs::path state = scratch("max34.json");
  const fs::path out = scratch("max.out");
  ASSERT_EQ(run_cli("state --family max --params 3,4 --out " + state.string(), out), 0);
  const auto r = analyze_file(state.string());
  EXPECT_NEAR(r.report.negativity, 1.0, 1e-12);
  EXPECT_NEAR(r.report.discord, 1.0, 1e-12);
  EXPECT_FALSE(r.report.discord_exact);
}

}  // namespace
}  // namespace gdneg
