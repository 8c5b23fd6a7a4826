#include <gtest/gtest.h>

#include "mzm/braid.hpp"
#include "mzm/resilience.hpp"
#include "oracles.hpp"

using namespace mzm;

namespace {

NoiseSpec z_noise(Placement placement = Placement::per_gate_participants) {
  NoiseSpec s;
  s.placement = placement;
  return s;
}

StudyConfig small_config() {
  StudyConfig cfg;
  cfg.n_samples = 40;
  cfg.p_grid = {0.0, 0.02, 0.05, 0.1};
  cfg.bootstrap_resamples = 20;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(Grid, LinearGrid) {
  const auto g = linear_grid(0.0, 0.15, 0.005);
  ASSERT_EQ(g.size(), 31u);
  EXPECT_NEAR(g.back(), 0.15, 1e-12);
  EXPECT_EQ(linear_grid(0.1, 0.1, 0.01).size(), 1u);
  EXPECT_THROW(linear_grid(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Trial, NoiselessIsPerfect) {
  const StateVector psi = haar_random_state(2, 77);
  for (ErrorFrame f : {ErrorFrame::chain, ErrorFrame::measurement}) {
    const TrialResult r = run_trial(psi, 0.0, z_noise(), f);
    EXPECT_NEAR(r.f_enc, 1.0, 1e-12);
    EXPECT_NEAR(r.f_un, 1.0, 1e-12);
    EXPECT_NEAR(r.leakage, 0.0, 1e-12);
  }
}

TEST(Trial, UnencodedMatchesClosedForm) {
  // CNOT|00> = |00> is invariant under Z errors, so F_un = 1 for any p.
  const TrialResult r = run_trial(StateVector::basis(4, 0), 0.3, z_noise());
  EXPECT_NEAR(r.f_un, 1.0, 1e-12);

  // |+0> -> Bell state; Z on either qubit flips it to the orthogonal Bell
  // state, Z on both leaves it, so F^2 = (1-p)^2 + p^2.
  const double p = 0.1;
  const StateVector plus0 = StateVector::from({1, 0, 1, 0});
  const TrialResult b = run_trial(plus0, p, z_noise());
  EXPECT_NEAR(b.f_un, std::sqrt((1 - p) * (1 - p) + p * p), 1e-12);
}

TEST(Trial, FullStrengthEndErrorsLeaveZeroZeroFixed) {
  // Z on both qubits with certainty still fixes |00>.
  const TrialResult r =
      run_trial(StateVector::basis(4, 0), 1.0, z_noise(Placement::once_per_qubit_end));
  EXPECT_NEAR(r.f_un, 1.0, 1e-12);
}

TEST(Trial, MeasurementFrameErrorsLeakParity) {
  const TrialResult r = run_trial(StateVector::basis(4, 0), 0.1, z_noise(), ErrorFrame::measurement);
  EXPECT_GT(r.leakage, 0.0);
  EXPECT_LE(r.f_enc, 1.0);
  const TrialResult c = run_trial(StateVector::basis(4, 0), 0.1, z_noise(), ErrorFrame::chain);
  EXPECT_NEAR(c.leakage, 0.0, 1e-12);
}

TEST(Trial, FidelitiesLieInUnitInterval) {
  for (int k = 0; k < 20; ++k) {
    const StateVector psi = haar_random_state(2, 5, static_cast<std::uint64_t>(k));
    const double p = 0.05 * (k % 5);
    const TrialResult r =
        run_trial(psi, p, z_noise(kAllPlacements[k % 4]),
                  k % 2 ? ErrorFrame::chain : ErrorFrame::measurement);
    EXPECT_GE(r.f_enc, 0.0);
    EXPECT_LE(r.f_enc, 1.0 + 1e-12);
    EXPECT_GE(r.f_un, 0.0);
    EXPECT_LE(r.f_un, 1.0 + 1e-12);
  }
}

TEST(Trial, RejectsBadInput) {
  EXPECT_THROW(run_trial(StateVector::basis(8, 0), 0.1, z_noise()), std::invalid_argument);
  EXPECT_THROW(run_trial(StateVector::basis(4, 0), 1.1, z_noise()), std::invalid_argument);
}

TEST(Threshold, SyntheticCrossing) {
  const std::vector<double> p{0.0, 0.1, 0.2, 0.3};
  // difference: 0, +0.1, 0, -0.1 -> the zero at 0.2 straddled by a sign change
  EXPECT_NEAR(*find_threshold(p, {1.0, 0.9, 0.8, 0.6}, {1.0, 0.8, 0.8, 0.7}), 0.2, 1e-12);
  // +0.1 then -0.1: linear interpolation gives the midpoint
  EXPECT_NEAR(*find_threshold({0.0, 0.1}, {0.9, 0.7}, {0.8, 0.8}), 0.05, 1e-12);
}

TEST(Threshold, QuadraticAgainstLinearCurves) {
  // 1 - 2p = 1 - 10p^2 at p = 1/5
  const auto p = linear_grid(0.0, 0.3, 0.01);
  std::vector<double> enc, un;
  for (double x : p) {
    enc.push_back(1 - 2 * x);
    un.push_back(1 - 10 * x * x);
  }
  EXPECT_NEAR(*find_threshold(p, enc, un), 0.2, 1e-9);
}

TEST(Threshold, NoCrossing) {
  EXPECT_FALSE(find_threshold({0.0, 0.1, 0.2}, {1.0, 0.9, 0.8}, {1.0, 0.8, 0.7}));
  EXPECT_FALSE(find_threshold({0.0, 0.1, 0.2}, {1.0, 0.9, 0.8}, {1.0, 0.9, 0.8}));
  EXPECT_FALSE(find_threshold({0.0}, {1.0}, {1.0}));
  // a touch without a sign change is not a crossing
  EXPECT_FALSE(find_threshold({0.0, 0.1, 0.2}, {0.9, 0.8, 0.9}, {0.8, 0.8, 0.8}));
  EXPECT_THROW(find_threshold({0.0, 0.1}, {1.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST(Comparison, DeterministicAcrossThreadCounts) {
  StudyConfig cfg = small_config();
  const StudyResult one = run_comparison(cfg);
  cfg.threads = 3;
  const StudyResult three = run_comparison(cfg);
  ASSERT_EQ(one.points.size(), three.points.size());
  for (std::size_t j = 0; j < one.points.size(); ++j) {
    EXPECT_EQ(one.points[j].f_enc_mean, three.points[j].f_enc_mean);
    EXPECT_EQ(one.points[j].f_un_mean, three.points[j].f_un_mean);
    EXPECT_EQ(one.points[j].p_avg, three.points[j].p_avg);
    EXPECT_EQ(one.points[j].p_avg_bootstrap, three.points[j].p_avg_bootstrap);
  }
}

TEST(Comparison, ZeroNoisePointIsPerfectAndTied) {
  const StudyResult r = run_comparison(small_config());
  EXPECT_NEAR(r.points[0].f_enc_mean, 1.0, 1e-12);
  EXPECT_NEAR(r.points[0].f_un_mean, 1.0, 1e-12);
  EXPECT_EQ(r.points[0].p_avg, 0.0);
  EXPECT_EQ(r.n_samples, 40u);
}

TEST(Comparison, SeedChangesSamples) {
  StudyConfig cfg = small_config();
  const double a = run_comparison(cfg).points[2].f_un_mean;
  cfg.master_seed += 1;
  EXPECT_NE(a, run_comparison(cfg).points[2].f_un_mean);
}

TEST(Comparison, ConfigValidation) {
  StudyConfig cfg = small_config();
  cfg.p_grid = {0.1, 0.05};
  EXPECT_THROW(run_comparison(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.n_samples = 0;
  EXPECT_THROW(run_comparison(cfg), std::invalid_argument);
}

TEST(Frame, NamesRoundTrip) {
  EXPECT_EQ(parse_error_frame("chain"), ErrorFrame::chain);
  EXPECT_EQ(to_string(ErrorFrame::measurement), "measurement");
  EXPECT_THROW(parse_error_frame("lab"), std::invalid_argument);
}
