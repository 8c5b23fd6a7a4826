#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mzm/runner.hpp"

using namespace mzm;
using namespace mzm::runner;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path d =
      fs::temp_directory_path() / ("mzm_runner_test_" + std::to_string(::getpid()) + "_" + tag);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig quick(Command c, const std::string& tag) {
  RunConfig cfg;
  cfg.command = c;
  cfg.shots = Shots::sampled(2000);
  cfg.resilience.n_samples = 20;
  cfg.resilience.p_stop = 0.05;
  cfg.resilience.p_step = 0.025;
  cfg.resilience.calibrate = false;
  cfg.resilience.bootstrap_resamples = 10;
  cfg.output_dir = fresh_dir(tag);
  return cfg;
}

}  // namespace

TEST(Config, DefaultsAndRoundTrip) {
  const RunConfig d;
  EXPECT_EQ(d.seed, 2024u);
  EXPECT_EQ(d.shots.count, 100000u);
  EXPECT_FALSE(d.shots.exact);
  EXPECT_EQ(d.dephasing_p, 0.012);

  const Json j = Json::parse(R"({"command": "fit-p", "seed": 9, "shots": "exact",
      "noise": {"error": "X", "p": 0.1, "placement": "per_time_step"},
      "dephasing_p": 0.05,
      "basis_map": {"permutation": [7, 6, 5, 4, 3, 2, 1, 0], "phases": [1, [0, 1], 1, 1, 1, 1, 1, -1]},
      "resilience": {"n_samples": 10, "frame": "chain", "calibrate": false}})");
  const RunConfig c = config_from_json(j);
  EXPECT_EQ(c.command, Command::fit_p);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(c.shots.exact);
  EXPECT_EQ(c.noise.placement, Placement::per_time_step);
  EXPECT_EQ(c.basis_map, "table");
  EXPECT_EQ(c.basis_phases[1], Complex(0, 1));
  EXPECT_EQ(c.resilience.frame, ErrorFrame::chain);
  EXPECT_EQ(config_from_json(c.to_json()).to_json().dump(), c.to_json().dump());
  EXPECT_EQ(config_from_json(d.to_json()).to_json().dump(), d.to_json().dump());
}

TEST(Config, ReportConfigOmitsLocationAndThreads) {
  RunConfig a, b;
  a.output_dir = "x";
  b.output_dir = "y";
  b.resilience.threads = 7;
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Config, RejectsBadInput) {
  const char* bad[] = {
      R"([1, 2])",
      R"({"colour": "red"})",
      R"({"noise": {"strength": 1}})",
      R"({"command": "braid"})",
      R"({"seed": -1})",
      R"({"shots": 0})",
      R"({"shots": "many"})",
      R"({"dephasing_p": 1.5})",
      R"({"noise": {"p": -0.1}})",
      R"({"noise": {"error": "W"}})",
      R"({"noise": {"placement": "sometimes"}})",
      R"({"basis_map": "fourier"})",
      R"({"basis_map": {"permutation": [0, 0, 1, 2, 3, 4, 5, 6]}})",
      R"({"basis_map": {"permutation": [0, 1]}})",
      R"({"resilience": {"p_step": 0}})",
      R"({"resilience": {"p_start": 0.2, "p_stop": 0.1}})",
      R"({"resilience": {"frame": "lab"}})",
      R"({"resilience": {"n_samples": "lots"}})",
  };
  for (const char* text : bad) {
    EXPECT_THROW(config_from_json(Json::parse(text)), ConfigError) << text;
  }
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, CommandNames) {
  for (Command c : {Command::verify, Command::tomography, Command::bell, Command::resilience,
                    Command::fit_p}) {
    EXPECT_EQ(parse_command(to_string(c)), c);
  }
}

TEST(Report, CsvHeadersAndJsonMatrices) {
  EXPECT_EQ(counts_csv({{parse_setting("0+"), 100, 37}}), "setting,shots,successes\n0+,100,37\n");
  StudyResult r;
  r.points.push_back({0.01, 0.99, 0.98, 0.001, 0.002, 0.75, 1.0, 0.0});
  EXPECT_EQ(fig6c_csv(r),
            "p,F_enc_mean,F_un_mean,F_enc_stderr,F_un_stderr,P_avg\n"
            "0.01,0.99,0.98,0.001,0.002,0.75\n");
  EXPECT_EQ(fig6d_csv(r), "p,P_avg,P_avg_bootstrap,leakage_mean\n0.01,0.75,1,0\n");
  ComplexMatrix m(1, 2);
  m << Complex(1, 0), Complex(0, -0.5);
  EXPECT_EQ(matrix_json(m).dump(), R"([[{"re":1.0,"im":0.0},{"re":0.0,"im":-0.5}]])");
}

TEST(Report, ReferenceTableKeys) {
  const Json ref = ExperimentalReference::to_json();
  EXPECT_EQ(ref["initial_spin"]["value"], 0.9884);
  EXPECT_EQ(ref["bell_psi_plus"]["uncertainty"], 0.0044);
  EXPECT_EQ(ref["dephasing_p"], 0.012);
  EXPECT_EQ(ref.size(), 14u);
}

TEST(Commands, VerifyPassesAndWritesReport) {
  const RunConfig cfg = quick(Command::verify, "verify");
  const RunOutcome out = run(cfg);
  EXPECT_EQ(out.exit_code, 0);
  const Json j = Json::parse(slurp(cfg.output_dir / "verify.json"));
  for (const char* key : {"command", "config", "zero_modes", "cnot", "bell", "checks", "all_pass"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(j["cnot"]["truth_table"].size(), 4u);
  EXPECT_EQ(j["cnot"]["logical_block"].size(), 4u);
  EXPECT_NEAR(j["cnot"]["global_phase"]["re"].get<double>(), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(j["cnot"]["global_phase"]["im"].get<double>(), -std::sqrt(0.5), 1e-12);
  fs::remove_all(cfg.output_dir);
}

TEST(Commands, TomographySchemaAndCounts) {
  const RunConfig cfg = quick(Command::tomography, "tomo");
  const RunOutcome out = run(cfg);
  const Json j = Json::parse(slurp(cfg.output_dir / "tomography.json"));
  ASSERT_EQ(j["states"].size(), 4u);
  for (const auto& s : j["states"]) {
    for (const char* part : {"initial", "output"}) {
      EXPECT_GE(s[part]["spin_fidelity"].get<double>(), 0.9);
      EXPECT_LE(s[part]["logical_fidelity"].get<double>(), 1.0);
    }
    EXPECT_EQ(s["output_density"].size(), 8u);
  }
  EXPECT_TRUE(j["process"]["intra"].contains("fidelity"));
  EXPECT_TRUE(j["reference"].contains("output_logical"));
  const std::string csv = slurp(cfg.output_dir / "counts" / "output_00.csv");
  EXPECT_EQ(csv.rfind("setting,shots,successes\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
  fs::remove_all(cfg.output_dir);
}

TEST(Commands, BellAndFitSchemas) {
  RunConfig bell = quick(Command::bell, "bell");
  run(bell);
  const Json b = Json::parse(slurp(bell.output_dir / "bell.json"));
  EXPECT_TRUE(b["states"].contains("phi_plus"));
  EXPECT_TRUE(b["states"].contains("psi_plus"));
  fs::remove_all(bell.output_dir);

  RunConfig fit = quick(Command::fit_p, "fit");
  fit.basis_map = "hadamard";
  fit.shots = Shots::exact_probabilities();
  run(fit);
  const Json f = Json::parse(slurp(fit.output_dir / "fit_p.json"));
  ASSERT_EQ(f["fits"].size(), 4u);
  EXPECT_NEAR(f["p_hat_mean"].get<double>(), 0.012, 1e-4);
  fs::remove_all(fit.output_dir);
}

TEST(Commands, ResilienceSchema) {
  const RunConfig cfg = quick(Command::resilience, "res");
  run(cfg);
  const Json s = Json::parse(slurp(cfg.output_dir / "summary.json"));
  for (const char* key : {"p_th", "placement", "frame", "seeds", "n_samples", "points"}) {
    EXPECT_TRUE(s.contains(key)) << key;
  }
  EXPECT_EQ(s["points"].size(), 3u);
  const std::string c = slurp(cfg.output_dir / "fig6c.csv");
  EXPECT_EQ(c.rfind("p,F_enc_mean,F_un_mean,F_enc_stderr,F_un_stderr,P_avg\n", 0), 0u);
  EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 4);
  fs::remove_all(cfg.output_dir);
}

TEST(Commands, UnwritableOutputIsAConfigError) {
  RunConfig cfg = quick(Command::verify, "unwritable");
  cfg.output_dir = "/proc/mzm_cannot_write_here";
  EXPECT_THROW(run(cfg), ConfigError);
}
