#include <fmt/format.h>

#include "mzm/braid.hpp"
#include "mzm/runner.hpp"

namespace mzm::runner {

namespace {

Json measured(Measured m) { return {{"value", m.value}, {"uncertainty", m.uncertainty}}; }

}  // namespace

Json ExperimentalReference::to_json() {
  using R = ExperimentalReference;
  return {{"initial_spin", measured(R::initial_spin)},
          {"initial_logical", measured(R::initial_logical)},
          {"process_intra", measured(R::process_intra)},
          {"process_inter", measured(R::process_inter)},
          {"output_spin", measured(R::output_spin)},
          {"output_logical", measured(R::output_logical)},
          {"bell_phi_plus", measured(R::bell_phi_plus)},
          {"bell_psi_plus", measured(R::bell_psi_plus)},
          {"measurement_input", measured(R::measurement_input)},
          {"measurement_output", measured(R::measurement_output)},
          {"logical_input", measured(R::logical_input)},
          {"logical_output", measured(R::logical_output)},
          {"dephasing_p", R::dephasing_p},
          {"cnot_fidelity_claim", R::cnot_fidelity_claim}};
}

Json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string counts_csv(const std::vector<CountRecord>& records) {
  std::string out = "setting,shots,successes\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{}\n", to_string(r.setting), r.shots, r.successes);
  }
  return out;
}

std::string fig6c_csv(const StudyResult& r) {
  std::string out = "p,F_enc_mean,F_un_mean,F_enc_stderr,F_un_stderr,P_avg\n";
  for (const auto& pt : r.points) {
    out += fmt::format("{},{},{},{},{},{}\n", pt.p, pt.f_enc_mean, pt.f_un_mean, pt.f_enc_stderr,
                       pt.f_un_stderr, pt.p_avg);
  }
  return out;
}

std::string fig6d_csv(const StudyResult& r) {
  std::string out = "p,P_avg,P_avg_bootstrap,leakage_mean\n";
  for (const auto& pt : r.points) {
    out += fmt::format("{},{},{},{}\n", pt.p, pt.p_avg, pt.p_avg_bootstrap, pt.leakage_mean);
  }
  return out;
}

std::vector<CircuitStep> encoded_cnot_steps() {
  std::vector<CircuitStep> steps;
  for (const auto& g : cnot_word()) steps.push_back({generator_unitary(g), g.participants()});
  return steps;
}

StateReport tomograph_chain_state(const std::string& label, const ComplexMatrix& actual,
                                  const StateVector& target, const BasisMap& basis,
                                  Shots shots, std::uint64_t seed,
                                  std::vector<CountRecord>* counts) {
  const DensityMatrix in_frame(basis.to_measurement(actual));
  auto records = simulate_counts(in_frame, enumerate_settings(3), shots, seed);
  const DensityMatrix measured = reconstruct_state(records, 3);
  if (counts) *counts = std::move(records);

  const ComplexVector& t = target.amplitudes();
  const DensityMatrix ideal_chain = DensityMatrix::pure(target);
  const DensityMatrix ideal_frame(basis.to_measurement(ideal_chain.matrix()));

  StateReport rep{label, measured, 0.0, 0.0, 0.0};
  rep.spin_fidelity = state_fidelity(measured, ideal_frame);

  const DensityMatrix chain(basis.to_chain(measured.matrix()));
  const DecodedDensity decoded = decode_logical(chain);
  const auto ideal_logical = decode_logical(ChainBasisState(StateVector(t)));
  rep.leakage = decoded.leakage;
  if (decoded.state && ideal_logical.state) {
    rep.logical_fidelity =
        state_fidelity(*decoded.state, DensityMatrix::pure(ideal_logical.state->state()));
  }
  return rep;
}

}  // namespace mzm::runner
