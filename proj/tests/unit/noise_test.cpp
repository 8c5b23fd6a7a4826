#include <gtest/gtest.h>

#include "mzm/braid.hpp"
#include "mzm/noise.hpp"
#include "oracles.hpp"

using namespace mzm;

namespace {

oracle::Mat ket_bra(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

NoiseSpec spec(double p, Placement placement = Placement::per_gate_participants,
               const oracle::Mat& u = oracle::Z()) {
  NoiseSpec s;
  s.p = p;
  s.placement = placement;
  s.error_unitary = u;
  return s;
}

}  // namespace

TEST(Channel, DephasingOnPlusState) {
  // rho_+ -> (1-p) rho_+ + p rho_-
  const double p = 0.3;
  const oracle::Mat plus = oracle::literal(2, 2, {0.5, 0.5, 0.5, 0.5});
  const KrausChannel ch = local_error_channel(spec(p), 0, 1);
  const DensityMatrix out = apply_channel(ch, DensityMatrix(plus));
  EXPECT_NEAR(out.matrix()(0, 1).real(), 0.5 * (1 - 2 * p), 1e-15);
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.5, 1e-15);
}

TEST(Channel, ZeroAndOneProbability) {
  oracle::Lcg rng(1);
  const oracle::Mat rho = oracle::random_density(4, rng);
  const oracle::Mat z2 = oracle::pauli_string("IZ");
  EXPECT_LT(oracle::max_abs(local_error_channel(spec(0.0), 1, 2).apply_raw(rho) - rho), 1e-15);
  EXPECT_LT(oracle::max_abs(local_error_channel(spec(1.0), 1, 2).apply_raw(rho) - z2 * rho * z2),
            1e-15);
}

TEST(Channel, RejectsNonTracePreservingKraus) {
  EXPECT_THROW(KrausChannel({oracle::I2(), oracle::X()}), std::invalid_argument);
  EXPECT_THROW(KrausChannel({}), std::invalid_argument);
  EXPECT_NO_THROW(KrausChannel::identity(4));
}

TEST(Channel, CorrelatedDephasing) {
  const double p = 0.012;
  const oracle::Mat zzz = oracle::pauli_string("ZZZ");
  oracle::Lcg rng(2);
  const oracle::Mat rho = oracle::random_density(8, rng);
  const oracle::Mat expected = (1 - p) * rho + p * zzz * rho * zzz;
  EXPECT_LT(oracle::max_abs(correlated_dephasing(p, 3).apply_raw(rho) - expected), 1e-15);

  // In the Hadamard frame the same operator is X X X on the chain qubits.
  const BasisMap h = BasisMap::hadamard(3);
  const oracle::Mat xxx = oracle::pauli_string("XXX");
  const oracle::Mat expected_h = (1 - p) * rho + p * xxx * rho * xxx;
  EXPECT_LT(oracle::max_abs(correlated_dephasing(p, 3, &h).apply_raw(rho) - expected_h), 1e-14);
}

TEST(NoiseSpec, Validation) {
  EXPECT_THROW(spec(-0.1).validate(), std::invalid_argument);
  EXPECT_THROW(spec(1.5).validate(), std::invalid_argument);
  EXPECT_THROW(spec(0.1, Placement::per_time_step, oracle::literal(2, 2, {1, 1, 0, 1})).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW(spec(0.1, Placement::per_time_step, named_unitary("H")).validate());
  EXPECT_THROW(named_unitary("T"), std::invalid_argument);
}

TEST(Placement, NamesRoundTrip) {
  for (Placement p : kAllPlacements) EXPECT_EQ(parse_placement(to_string(p)), p);
  EXPECT_THROW(parse_placement("sometimes"), std::invalid_argument);
}

TEST(NoisyGate, TwoQubitCompositionWeights) {
  // A gate on both qubits followed by independent Z errors:
  // (1-p)^2 U rho U' + p(1-p) Z1.. + (1-p)p ..Z2 + p^2 Z1Z2..
  const double p = 0.2;
  oracle::Lcg rng(3);
  const oracle::Mat rho = oracle::random_density(4, rng);
  const oracle::Mat u = cnot_matrix();
  const oracle::Mat r = u * rho * u.adjoint();
  const oracle::Mat z1 = oracle::pauli_string("ZI");
  const oracle::Mat z2 = oracle::pauli_string("IZ");
  const oracle::Mat expected = (1 - p) * (1 - p) * r + p * (1 - p) * z1 * r * z1 +
                               (1 - p) * p * z2 * r * z2 + p * p * z1 * z2 * r * z2 * z1;
  const DensityMatrix out = noisy_gate(u, spec(p), DensityMatrix(rho));
  EXPECT_LT(oracle::max_abs(out.matrix() - expected), 1e-14);
}

TEST(NoisyGate, ParticipantsRestrictErrors) {
  const double p = 0.25;
  oracle::Lcg rng(4);
  const oracle::Mat rho = oracle::random_density(4, rng);
  const oracle::Mat z2 = oracle::pauli_string("IZ");
  const DensityMatrix out =
      noisy_gate(oracle::pauli_string("II"), spec(p), DensityMatrix(rho), std::vector<std::size_t>{1});
  EXPECT_LT(oracle::max_abs(out.matrix() - ((1 - p) * rho + p * z2 * rho * z2)), 1e-15);
}

TEST(NoisyGate, TracePreservingOnRandomInputs) {
  oracle::Lcg rng(5);
  const char* letters = "IXYZH";
  for (int trial = 0; trial < 100; ++trial) {
    const double p = rng.uniform();
    const auto placement = kAllPlacements[trial % 4];
    const NoiseSpec s = spec(p, placement, named_unitary(std::string(1, letters[trial % 5])));
    const oracle::Mat rho = oracle::random_density(8, rng);
    const BraidGenerator g{static_cast<BraidKind>(trial % 4), Orientation::clockwise};
    const oracle::Mat out =
        run_noisy_circuit({{generator_unitary(g), g.participants()}}, s, rho, 3);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_LT(hermiticity_error(out), 1e-12);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<oracle::Mat>(out).eigenvalues()(0), -1e-12);
  }
}

TEST(NoisyGate, AffineInProbability) {
  // For a single site channel the output is linear in p.
  oracle::Lcg rng(6);
  const oracle::Mat rho = oracle::random_density(2, rng);
  const oracle::Mat h = hadamard();
  auto out = [&](double p) {
    return noisy_gate(h, spec(p), DensityMatrix(rho)).matrix();
  };
  EXPECT_LT(oracle::max_abs(out(0.3) - (0.7 * out(0.0) + 0.3 * out(1.0))), 1e-15);
}

TEST(Circuit, PlacementCounts) {
  // Two identity gates on qubit 0 of a two-qubit register, Z errors: the
  // X-expectation of |+> on each qubit shrinks by (1-2p) per error.
  const double p = 0.1;
  const Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(4, 0.5);
  const oracle::Mat rho = ket_bra(plus);
  const std::vector<CircuitStep> steps{{oracle::pauli_string("II"), {0}},
                                       {oracle::pauli_string("II"), {0}}};
  const oracle::Mat x1 = oracle::pauli_string("XI");
  const oracle::Mat x2 = oracle::pauli_string("IX");
  auto expect = [&](Placement pl, int n1, int n2) {
    const oracle::Mat out = run_noisy_circuit(steps, spec(p, pl), rho, 2);
    EXPECT_NEAR((x1 * out).trace().real(), std::pow(1 - 2 * p, n1), 1e-14) << to_string(pl);
    EXPECT_NEAR((x2 * out).trace().real(), std::pow(1 - 2 * p, n2), 1e-14) << to_string(pl);
  };
  expect(Placement::per_gate_participants, 2, 0);
  expect(Placement::once_per_qubit_end, 1, 1);
  expect(Placement::once_per_qubit_start, 1, 1);
  expect(Placement::per_time_step, 2, 2);
}

TEST(ProcessMatrix, IdentityAndPauliChannels) {
  const ProcessMatrix id = chi_of_unitary(oracle::I2(), 1);
  EXPECT_NEAR(id.at("I", "I").real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(id.chi().trace() - 1.0), 0.0, 1e-15);

  const ProcessMatrix z = chi_of_unitary(oracle::Z(), 1);
  EXPECT_NEAR(z.at("Z", "Z").real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(z.at("I", "I")), 0.0, 1e-15);

  const ProcessMatrix xx = chi_of_unitary(oracle::pauli_string("XX"), 2);
  EXPECT_NEAR(xx.at("XX", "XX").real(), 1.0, 1e-15);
}

TEST(ProcessMatrix, CnotHasQuarterWeightsOnFourPaulis) {
  // CNOT = (II + IX + ZI - ZX)/2
  const ProcessMatrix c = chi_of_unitary(cnot_matrix(), 2);
  for (const char* label : {"II", "IX", "ZI", "ZX"}) {
    EXPECT_NEAR(c.at(label, label).real(), 0.25, 1e-15) << label;
  }
  EXPECT_NEAR(c.at("II", "ZX").real(), -0.25, 1e-15);
}

TEST(ProcessMatrix, ApplyReproducesUnitaryAction) {
  oracle::Lcg rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const oracle::Mat u = haar_random_unitary(4, 17, static_cast<std::uint64_t>(trial));
    const oracle::Mat rho = oracle::random_density(4, rng);
    const ProcessMatrix chi = chi_of_unitary(u, 2);
    EXPECT_LT(oracle::max_abs(apply_process(chi, rho) - u * rho * u.adjoint()), 1e-13);
  }
}

TEST(ProcessMatrix, Validation) {
  EXPECT_THROW(ProcessMatrix(1, oracle::Mat::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(ProcessMatrix(1, oracle::Mat::Identity(3, 3) / 3.0), std::invalid_argument);
  oracle::Mat neg = oracle::Mat::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(ProcessMatrix(1, neg), std::invalid_argument);
  EXPECT_EQ(pauli_label_index("ZX"), 13u);
  EXPECT_THROW(pauli_label_index("Q"), std::invalid_argument);
}

TEST(ProcessMatrix, PauliBasisOrder) {
  const auto b = pauli_basis(2);
  ASSERT_EQ(b.size(), 16u);
  EXPECT_LT(oracle::max_abs(b[1 * 4 + 3] - oracle::pauli_string("XZ")), 1e-15);
  EXPECT_LT(oracle::max_abs(b[2 * 4 + 0] - oracle::pauli_string("YI")), 1e-15);
}
