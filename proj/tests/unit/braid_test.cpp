#include <gtest/gtest.h>

#include <numbers>

#include "mzm/braid.hpp"
#include "mzm/kitaev.hpp"
#include "oracles.hpp"

using namespace mzm;

namespace {

const double kRt2 = std::numbers::sqrt2;

// Clockwise generators written out from their Pauli reflections.
oracle::Mat oracle_generator(int kind) {
  const oracle::Mat id = oracle::pauli_string("III");
  const char* reflection[] = {"ZII", "IZI", "IXX", "IIZ"};
  return (id - oracle::C(0, 1) * oracle::pauli_string(reflection[kind])) / kRt2;
}

BraidGenerator gen(BraidKind k, Orientation o = Orientation::clockwise) { return {k, o}; }

oracle::Mat oracle_cnot() {
  return oracle::literal(4, 4, {1, 0, 0, 0,  //
                                0, 1, 0, 0,  //
                                0, 0, 0, 1,  //
                                0, 0, 1, 0});
}

}  // namespace

TEST(Exchange, InterChainOnZeroZero) {
  const Eigen::VectorXcd out = inter_exchange() * StateVector::basis(4, 0).amplitudes();
  EXPECT_NEAR(std::abs(out(0) - 1.0 / kRt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out(3) - oracle::C(0, -1) / kRt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out(1)) + std::abs(out(2)), 0.0, 1e-15);
}

TEST(Exchange, IntraChainPhases) {
  const ComplexMatrix u = intra_exchange();
  EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, -std::numbers::pi / 4)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1) - std::polar(1.0, std::numbers::pi / 4)), 0.0, 1e-15);
  EXPECT_EQ(u(0, 1), Complex{});
}

TEST(Generators, MatchOracleMatrices) {
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<BraidKind>(k);
    EXPECT_LT(oracle::max_abs(generator_unitary(gen(kind)) - oracle_generator(k)), 1e-15) << k;
    EXPECT_LT(oracle::max_abs(generator_unitary(gen(kind, Orientation::counterclockwise)) -
                              oracle_generator(k).adjoint()),
              1e-15)
        << k;
  }
}

TEST(Generators, ClockwiseTimesCounterclockwiseIsIdentity) {
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<BraidKind>(k);
    const ComplexMatrix p = generator_unitary(gen(kind)) *
                            generator_unitary(gen(kind, Orientation::counterclockwise));
    EXPECT_LT(oracle::max_abs(p - ComplexMatrix::Identity(8, 8)), 1e-14);
    EXPECT_TRUE(is_unitary(generator_unitary(gen(kind))));
  }
}

TEST(Generators, EighthPowerIsIdentityAndFourthIsMinusIdentity) {
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix g = generator_unitary(gen(static_cast<BraidKind>(k)));
    ComplexMatrix acc = ComplexMatrix::Identity(8, 8);
    for (int i = 0; i < 4; ++i) acc = g * acc;
    EXPECT_LT(oracle::max_abs(acc + ComplexMatrix::Identity(8, 8)), 1e-13);
    acc = acc * acc;
    EXPECT_LT(oracle::max_abs(acc - ComplexMatrix::Identity(8, 8)), 1e-13);
  }
}

TEST(Generators, PreserveChainParity) {
  const ComplexMatrix zzz = parity_operator(3);
  for (int k = 0; k < 4; ++k) {
    for (auto o : {Orientation::clockwise, Orientation::counterclockwise}) {
      const ComplexMatrix g = generator_unitary(gen(static_cast<BraidKind>(k), o));
      EXPECT_LT(oracle::max_abs(g * zzz - zzz * g), 1e-15);
    }
  }
}

TEST(Generators, BraidRelations) {
  auto g = [](BraidKind k) { return generator_unitary(gen(k)); };
  const auto s1 = g(BraidKind::s1), s2 = g(BraidKind::s2), s3 = g(BraidKind::s3),
             s4 = g(BraidKind::s4);
  // Adjacent exchanges sharing a mode satisfy Yang-Baxter.
  EXPECT_LT(oracle::max_abs(s2 * s3 * s2 - s3 * s2 * s3), 1e-14);
  EXPECT_LT(oracle::max_abs(s3 * s4 * s3 - s4 * s3 * s4), 1e-14);
  // Disjoint exchanges commute.
  EXPECT_LT(oracle::max_abs(s1 * s2 - s2 * s1), 1e-15);
  EXPECT_LT(oracle::max_abs(s1 * s3 - s3 * s1), 1e-15);
  EXPECT_LT(oracle::max_abs(s2 * s4 - s4 * s2), 1e-15);
}

TEST(Generators, Participants) {
  EXPECT_EQ(gen(BraidKind::s1).participants(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(gen(BraidKind::s2).participants(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(gen(BraidKind::s3).participants(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(gen(BraidKind::s4).participants(), (std::vector<std::size_t>{2}));
  EXPECT_FALSE(gen(BraidKind::s3).is_intra_chain());
  EXPECT_TRUE(gen(BraidKind::s4).is_intra_chain());
}

TEST(Compose, LastGeneratorActsLast) {
  const BraidWord word{gen(BraidKind::s2), gen(BraidKind::s3)};
  EXPECT_LT(oracle::max_abs(compose_braid(word) - oracle_generator(2) * oracle_generator(1)),
            1e-15);
  EXPECT_LT(oracle::max_abs(compose_braid({}) - ComplexMatrix::Identity(8, 8)), 1e-15);
}

TEST(CnotWord, Spelling) {
  EXPECT_EQ(format_braid_word(cnot_word()), "s1 s2' s3 s2 s4 s3 s2'");
  EXPECT_EQ(parse_braid_word("s1 s2' s3 s2 s4 s3 s2'"), cnot_word());
  EXPECT_THROW(parse_braid_word("s5"), std::invalid_argument);
  EXPECT_THROW(parse_braid_word("s1''"), std::invalid_argument);
  EXPECT_TRUE(parse_braid_word("").empty());
}

TEST(CnotWord, LogicalRestrictionIsCnotUpToPhase) {
  const auto r = logical_restriction(compose_braid(cnot_word()));
  EXPECT_LT(r.leakage_norm, 1e-12);
  const PhaseMatch m = equal_up_to_global_phase(r.block, oracle_cnot(), 1e-12);
  EXPECT_TRUE(m.equal);
  EXPECT_NEAR(std::abs(m.phase - std::polar(1.0, -std::numbers::pi / 4)), 0.0, 1e-12);
  EXPECT_NEAR(oracle::unitary_process_fidelity(r.block, oracle_cnot()), 1.0, 1e-12);
}

TEST(CnotWord, OracleProductAgrees) {
  const int order[] = {0, 1, 2, 1, 3, 2, 1};
  const bool ccw[] = {false, true, false, false, false, false, true};
  oracle::Mat u = oracle::Mat::Identity(8, 8);
  for (int i = 0; i < 7; ++i) {
    const oracle::Mat g = oracle_generator(order[i]);
    u = (ccw[i] ? oracle::Mat(g.adjoint()) : g) * u;
  }
  EXPECT_LT(oracle::max_abs(compose_braid(cnot_word()) - u), 1e-14);
}

TEST(CnotWord, TruthTable) {
  const ComplexMatrix u = compose_braid(cnot_word());
  const std::size_t expected[] = {0, 1, 3, 2};
  for (std::size_t in = 0; in < 4; ++in) {
    const auto out = decode_logical(
        ChainBasisState(StateVector(u * encode_logical(LogicalState::basis(in)).state().amplitudes())));
    ASSERT_TRUE(out.state.has_value());
    EXPECT_NEAR(out.leakage, 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out.state->state()[expected[in]]), 1.0, 1e-12) << in;
  }
}

TEST(CnotWord, MakesBellStates) {
  const ComplexMatrix u = compose_braid(cnot_word());
  const oracle::Mat h = oracle::literal(2, 2, {1, 1, 1, -1}) / kRt2;
  const oracle::Mat prep = oracle::kron(h, oracle::I2());
  for (std::size_t in = 0; in < 4; ++in) {
    const Eigen::VectorXcd logical = prep * StateVector::basis(4, in).amplitudes();
    const Eigen::VectorXcd expected = oracle_cnot() * logical;
    const auto out = decode_logical(ChainBasisState(
        StateVector(u * encode_logical(LogicalState(StateVector(logical))).state().amplitudes())));
    ASSERT_TRUE(out.state.has_value());
    EXPECT_NEAR(std::abs(expected.dot(out.state->state().amplitudes())), 1.0, 1e-12) << in;
  }
}

TEST(CnotWord, OddSectorBlockIsUnitary) {
  const ComplexMatrix odd = odd_sector_block(compose_braid(cnot_word()));
  EXPECT_EQ(odd.rows(), 4);
  EXPECT_TRUE(is_unitary(odd, 1e-12));
}
