#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "mzm/braid.hpp"
#include "mzm/kitaev.hpp"
#include "mzm/pauli.hpp"
#include "mzm/random.hpp"
#include "mzm/runner.hpp"

namespace mzm::runner {

namespace {

namespace fs = std::filesystem;

// Stream tags keep every simulated dataset on its own counter stream.
constexpr std::uint64_t kInputStream = 0x100;
constexpr std::uint64_t kOutputStream = 0x200;
constexpr std::uint64_t kIntraStream = 0x300;
constexpr std::uint64_t kInterStream = 0x400;
constexpr std::uint64_t kBellStream = 0x500;
constexpr std::uint64_t kFitStream = 0x600;

const char* const kLogicalLabels[] = {"00", "01", "10", "11"};

class Writer {
 public:
  explicit Writer(const RunConfig& cfg) : dir_(cfg.output_dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw ConfigError("output_dir " + dir_.string() + " is not writable");
    }
  }

  void text(const fs::path& name, const std::string& body, RunOutcome& out) {
    const fs::path path = dir_ / name;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << body;
    if (!f) throw ConfigError("cannot write " + path.string());
    out.files.push_back(path);
  }

  void json(const fs::path& name, const Json& j, RunOutcome& out) {
    text(name, j.dump(2) + "\n", out);
  }

 private:
  fs::path dir_;
};

Json header(const RunConfig& cfg, Command c) {
  RunConfig resolved = cfg;
  resolved.command = c;
  Json j;
  j["command"] = to_string(c);
  j["config"] = resolved.to_json();
  return j;
}

struct Check {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return arr;
}

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

double residual(const ComplexMatrix& a) { return max_abs(a); }

ComplexMatrix noisy_encoded_output(const RunConfig& cfg, const BasisMap& basis,
                                   const ComplexMatrix& rho_in) {
  const ComplexMatrix after = run_noisy_circuit(encoded_cnot_steps(), cfg.noise, rho_in, 3);
  return correlated_dephasing(cfg.dephasing_p, 3, &basis).apply_raw(after);
}

Json state_json(const StateReport& r) {
  return {{"spin_fidelity", r.spin_fidelity},
          {"logical_fidelity", r.logical_fidelity},
          {"leakage", r.leakage}};
}

ProcessMatrix simulate_process(const ComplexMatrix& u, std::size_t n, const RunConfig& cfg,
                               std::uint64_t stream) {
  const auto inputs = enumerate_settings(n);
  std::vector<DensityMatrix> outputs;
  std::vector<std::size_t> everyone(n);
  for (std::size_t q = 0; q < n; ++q) everyone[q] = q;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const DensityMatrix in = DensityMatrix::pure(projector_state(inputs[k]));
    const DensityMatrix out = noisy_gate(u, cfg.noise, in, everyone);
    const auto counts =
        simulate_counts(out, enumerate_settings(n), cfg.shots, derive_seed(cfg.seed, stream + k));
    outputs.push_back(reconstruct_state(counts, n));
  }
  return reconstruct_process(inputs, outputs, n);
}

StateVector encoded_basis_output(std::size_t k) {
  const ComplexVector in = encode_logical(LogicalState::basis(k)).state().amplitudes();
  return StateVector(compose_braid(cnot_word()) * in);
}

}  // namespace

RunOutcome run_verify(const RunConfig& cfg) {
  cfg.validate();
  Writer writer(cfg);
  RunOutcome out;
  Json report = header(cfg, Command::verify);
  std::vector<Check> checks;

  // Zero modes.
  const OperatorSum h = build_hamiltonian();
  const auto residuals = zero_mode_residuals(h);
  const auto endpoints = endpoint_zero_modes();
  double zero_max = 0.0;
  std::size_t nonzero = 0;
  Json modes = Json::array();
  for (const auto& [mode, res] : residuals) {
    const bool endpoint = std::find(endpoints.begin(), endpoints.end(), mode) != endpoints.end();
    if (endpoint) {
      zero_max = std::max(zero_max, res.max_coefficient());
      modes.push_back(mode.str());
    } else if (!res.empty()) {
      ++nonzero;
    }
  }
  checks.push_back({"zero_modes", zero_max, 0.0, zero_max == 0.0});
  checks.push_back({"bulk_modes_nonzero", static_cast<double>(residuals.size() - endpoints.size() - nonzero),
                    0.0, nonzero == residuals.size() - endpoints.size()});
  report["hamiltonian"] = h.str();
  report["zero_modes"] = {{"modes", modes},
                          {"residual_max", zero_max},
                          {"nonzero_count", nonzero}};

  // Majorana anticommutators.
  const auto all = all_majoranas(ChainLayout::kSites);
  const OperatorSum two_id = OperatorSum(PauliString::identity(ChainLayout::kSites)) * Complex(2, 0);
  double ac_max = 0.0;
  for (const auto& l : all) {
    for (const auto& m : all) {
      OperatorSum ac = anticommutator(OperatorSum(jw_majorana(l, ChainLayout::kSites)),
                                      OperatorSum(jw_majorana(m, ChainLayout::kSites)));
      if (l == m) ac -= two_id;
      ac_max = std::max(ac_max, ac.max_coefficient());
    }
  }
  checks.push_back({"anticommutation", ac_max, 0.0, ac_max == 0.0});

  // Braid relations and parity.
  auto g = [](BraidKind k) { return generator_unitary({k, Orientation::clockwise}); };
  const ComplexMatrix s1 = g(BraidKind::s1), s2 = g(BraidKind::s2), s3 = g(BraidKind::s3),
                      s4 = g(BraidKind::s4);
  const double yb = std::max(residual(s2 * s3 * s2 - s3 * s2 * s3),
                             residual(s3 * s4 * s3 - s4 * s3 * s4));
  const double comm = std::max({residual(s1 * s2 - s2 * s1), residual(s1 * s3 - s3 * s1),
                                residual(s1 * s4 - s4 * s1), residual(s2 * s4 - s4 * s2)});
  double eighth = 0.0;
  double parity = 0.0;
  const ComplexMatrix zzz = parity_operator(3);
  for (const ComplexMatrix* m : {&s1, &s2, &s3, &s4}) {
    ComplexMatrix p = identity(8);
    for (int i = 0; i < 8; ++i) p = *m * p;
    eighth = std::max(eighth, residual(p - identity(8)));
    parity = std::max(parity, residual(*m * zzz - zzz * *m));
  }
  checks.push_back({"yang_baxter", yb, 1e-12, yb <= 1e-12});
  checks.push_back({"disjoint_commutation", comm, 1e-12, comm <= 1e-12});
  checks.push_back({"generator_eighth_power", eighth, 1e-12, eighth <= 1e-12});
  checks.push_back({"parity_conservation", parity, 1e-12, parity <= 1e-12});

  // CNOT composition.
  const ComplexMatrix u = compose_braid(cnot_word());
  const LogicalRestriction lr = logical_restriction(u);
  const PhaseMatch pm = equal_up_to_global_phase(lr.block, cnot_matrix(), 1e-12);
  const double cnot_res = residual(lr.block - pm.phase * cnot_matrix());
  checks.push_back({"cnot_composition", cnot_res, 1e-12, pm.equal && cnot_res <= 1e-12});
  checks.push_back({"cnot_leakage", lr.leakage_norm, 1e-12, lr.leakage_norm <= 1e-12});

  Json table = Json::array();
  bool table_ok = true;
  const std::size_t expected[] = {0, 1, 3, 2};
  double table_res = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto decoded = decode_logical(ChainBasisState(encoded_basis_output(k)));
    std::size_t best = 0;
    double best_w = -1.0;
    if (decoded.state) {
      for (std::size_t j = 0; j < 4; ++j) {
        const double w = std::norm(decoded.state->state()[j]);
        if (w > best_w) {
          best_w = w;
          best = j;
        }
      }
    }
    table_res = std::max(table_res, 1.0 - best_w + decoded.leakage);
    table_ok = table_ok && best == expected[k];
    table.push_back(std::string(kLogicalLabels[k]) + "→" + kLogicalLabels[best]);
  }
  checks.push_back({"truth_table", table_res, 1e-12, table_ok && table_res <= 1e-12});
  report["cnot"] = {{"word", format_braid_word(cnot_word())},
                    {"global_phase", complex_json(pm.phase)},
                    {"global_phase_angle", std::arg(pm.phase)},
                    {"truth_table", table},
                    {"logical_block", matrix_json(lr.block)},
                    {"odd_sector_block", matrix_json(odd_sector_block(u))}};

  // Bell states from |+0> and |+1>.
  const double r2 = std::numbers::sqrt2;
  const struct {
    const char* name;
    ComplexVector in;
    ComplexVector target;
  } bells[] = {
      {"phi_plus", (ComplexVector(4) << 1 / r2, 0, 1 / r2, 0).finished(),
       (ComplexVector(4) << 1 / r2, 0, 0, 1 / r2).finished()},
      {"psi_plus", (ComplexVector(4) << 0, 1 / r2, 0, 1 / r2).finished(),
       (ComplexVector(4) << 0, 1 / r2, 1 / r2, 0).finished()},
  };
  Json bell_json;
  for (const auto& b : bells) {
    const ComplexVector enc =
        u * encode_logical(LogicalState(StateVector(b.in))).state().amplitudes();
    const auto decoded = decode_logical(ChainBasisState(StateVector(enc)));
    const double overlap = decoded.state ? std::abs(b.target.dot(decoded.state->state().amplitudes())) : 0.0;
    checks.push_back({std::string("bell_") + b.name, 1.0 - overlap, 1e-12, 1.0 - overlap <= 1e-12});
    bell_json[b.name] = {{"overlap", overlap}};
  }
  report["bell"] = bell_json;

  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.pass;
  report["checks"] = checks_json(checks);
  report["all_pass"] = all_pass;
  writer.json("verify.json", report, out);
  out.exit_code = all_pass ? 0 : 1;
  out.report = std::move(report);
  return out;
}

RunOutcome run_tomography(const RunConfig& cfg) {
  cfg.validate();
  Writer writer(cfg);
  RunOutcome out;
  Json report = header(cfg, Command::tomography);
  report["reference"] = ExperimentalReference::to_json();
  const BasisMap basis = cfg.make_basis_map();

  Json states = Json::array();
  double sums[4] = {0, 0, 0, 0};
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string label = kLogicalLabels[k];
    const StateVector in = encode_logical(LogicalState::basis(k)).state();
    const ComplexMatrix rho_in = DensityMatrix::pure(in).matrix();
    std::vector<CountRecord> counts;

    const StateReport initial = tomograph_chain_state(
        label, rho_in, in, basis, cfg.shots, derive_seed(cfg.seed, kInputStream + k), &counts);
    writer.text("counts/input_" + label + ".csv", counts_csv(counts), out);

    const StateReport output = tomograph_chain_state(
        label, noisy_encoded_output(cfg, basis, rho_in), encoded_basis_output(k), basis,
        cfg.shots, derive_seed(cfg.seed, kOutputStream + k), &counts);
    writer.text("counts/output_" + label + ".csv", counts_csv(counts), out);

    sums[0] += initial.spin_fidelity;
    sums[1] += initial.logical_fidelity;
    sums[2] += output.spin_fidelity;
    sums[3] += output.logical_fidelity;
    states.push_back({{"input", label},
                      {"initial", state_json(initial)},
                      {"output", state_json(output)},
                      {"output_density", matrix_json(output.measured.matrix())}});
  }
  report["states"] = states;
  report["mean"] = {{"initial_spin", sums[0] / 4},
                    {"initial_logical", sums[1] / 4},
                    {"output_spin", sums[2] / 4},
                    {"output_logical", sums[3] / 4}};

  const ProcessMatrix intra = simulate_process(intra_exchange(), 1, cfg, kIntraStream);
  const ProcessMatrix inter = simulate_process(inter_exchange(), 2, cfg, kInterStream);
  report["process"] = {
      {"intra",
       {{"fidelity", process_fidelity(intra, chi_of_unitary(intra_exchange(), 1))},
        {"chi", matrix_json(intra.chi())}}},
      {"inter",
       {{"fidelity", process_fidelity(inter, chi_of_unitary(inter_exchange(), 2))},
        {"chi", matrix_json(inter.chi())}}}};

  writer.json("tomography.json", report, out);
  out.report = std::move(report);
  return out;
}

RunOutcome run_bell(const RunConfig& cfg) {
  cfg.validate();
  Writer writer(cfg);
  RunOutcome out;
  Json report = header(cfg, Command::bell);
  report["reference"] = {{"phi_plus", {{"value", ExperimentalReference::bell_phi_plus.value},
                                       {"uncertainty", ExperimentalReference::bell_phi_plus.uncertainty}}},
                         {"psi_plus", {{"value", ExperimentalReference::bell_psi_plus.value},
                                       {"uncertainty", ExperimentalReference::bell_psi_plus.uncertainty}}}};
  const BasisMap basis = cfg.make_basis_map();
  const ComplexMatrix u = compose_braid(cnot_word());
  const double r2 = std::numbers::sqrt2;
  const std::pair<const char*, ComplexVector> inputs[] = {
      {"phi_plus", (ComplexVector(4) << 1 / r2, 0, 1 / r2, 0).finished()},
      {"psi_plus", (ComplexVector(4) << 0, 1 / r2, 0, 1 / r2).finished()},
  };
  std::uint64_t stream = kBellStream;
  Json states;
  for (const auto& [name, logical] : inputs) {
    const StateVector in = encode_logical(LogicalState(StateVector(logical))).state();
    const StateVector target(u * in.amplitudes());
    std::vector<CountRecord> counts;
    const StateReport rep = tomograph_chain_state(
        name, noisy_encoded_output(cfg, basis, DensityMatrix::pure(in).matrix()), target, basis,
        cfg.shots, derive_seed(cfg.seed, stream++), &counts);
    writer.text(std::string("counts/bell_") + name + ".csv", counts_csv(counts), out);
    const auto decoded = decode_logical(ChainBasisState(target));
    states[name] = {{"ideal_logical_output", decoded.state ? Json(matrix_json(decoded.state->state().amplitudes()))
                                                           : Json(nullptr)},
                    {"spin_fidelity", rep.spin_fidelity},
                    {"logical_fidelity", rep.logical_fidelity},
                    {"leakage", rep.leakage}};
  }
  report["states"] = states;
  writer.json("bell.json", report, out);
  out.report = std::move(report);
  return out;
}

RunOutcome run_resilience(const RunConfig& cfg) {
  cfg.validate();
  Writer writer(cfg);
  RunOutcome out;
  Json report = header(cfg, Command::resilience);
  StudyConfig study = cfg.study_config();

  Json calibration = nullptr;
  if (cfg.resilience.calibrate) {
    const Calibration cal = calibrate_placement(study, cfg.resilience.target);
    Json entries = Json::array();
    for (const auto& e : cal.entries) {
      entries.push_back({{"placement", to_string(e.placement)},
                         {"frame", mzm::to_string(e.frame)},
                         {"p_th", e.threshold ? Json(*e.threshold) : Json(nullptr)}});
    }
    calibration = {{"target", cfg.resilience.target},
                   {"entries", entries},
                   {"selected",
                    {{"placement", to_string(cal.placement)}, {"frame", mzm::to_string(cal.frame)}}}};
    study.noise.placement = cal.placement;
    study.encoded_frame = cal.frame;
  }

  const StudyResult result = run_comparison(study);
  writer.text("fig6c.csv", fig6c_csv(result), out);
  writer.text("fig6d.csv", fig6d_csv(result), out);

  report["p_th"] = result.threshold ? Json(*result.threshold) : Json(nullptr);
  report["placement"] = to_string(result.placement);
  report["frame"] = mzm::to_string(result.encoded_frame);
  report["seeds"] = {{"master_seed", result.master_seed},
                     {"sample_streams", {0, result.n_samples - 1}}};
  report["n_samples"] = result.n_samples;
  report["calibration"] = calibration;
  Json points = Json::array();
  for (const auto& pt : result.points) {
    points.push_back({{"p", pt.p},
                      {"F_enc_mean", pt.f_enc_mean},
                      {"F_un_mean", pt.f_un_mean},
                      {"F_enc_stderr", pt.f_enc_stderr},
                      {"F_un_stderr", pt.f_un_stderr},
                      {"P_avg", pt.p_avg},
                      {"P_avg_bootstrap", pt.p_avg_bootstrap},
                      {"leakage_mean", pt.leakage_mean}});
  }
  report["points"] = points;
  writer.json("summary.json", report, out);
  out.report = std::move(report);
  return out;
}

RunOutcome run_fit_p(const RunConfig& cfg) {
  cfg.validate();
  Writer writer(cfg);
  RunOutcome out;
  Json report = header(cfg, Command::fit_p);
  report["reference_p"] = ExperimentalReference::dephasing_p;
  const BasisMap basis = cfg.make_basis_map();

  Json fits = Json::array();
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const StateVector in = encode_logical(LogicalState::basis(k)).state();
    const StateVector ideal = encoded_basis_output(k);
    std::vector<CountRecord> counts;
    const StateReport rep = tomograph_chain_state(
        kLogicalLabels[k], noisy_encoded_output(cfg, basis, DensityMatrix::pure(in).matrix()),
        ideal, basis, cfg.shots, derive_seed(cfg.seed, kFitStream + k), &counts);
    // Unclipped estimate: positivity clipping biases p_hat upward.
    const ComplexMatrix exp_chain = basis.to_chain(linear_inversion(counts, 3));
    const FitResult fit = fit_dephasing_p(DensityMatrix::pure(ideal), exp_chain, &basis);
    sum += fit.p_hat;
    fits.push_back({{"input", kLogicalLabels[k]},
                    {"p_hat", fit.p_hat},
                    {"residual", fit.residual},
                    {"spin_fidelity", rep.spin_fidelity},
                    {"logical_fidelity", rep.logical_fidelity}});
  }
  report["injected_p"] = cfg.dephasing_p;
  report["fits"] = fits;
  report["p_hat_mean"] = sum / 4;
  writer.json("fit_p.json", report, out);
  out.report = std::move(report);
  return out;
}

RunOutcome run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::verify: return run_verify(cfg);
    case Command::tomography: return run_tomography(cfg);
    case Command::bell: return run_bell(cfg);
    case Command::resilience: return run_resilience(cfg);
    case Command::fit_p: return run_fit_p(cfg);
  }
  return run_verify(cfg);
}

}  // namespace mzm::runner
