#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mzm/kitaev.hpp"
#include "mzm/noise.hpp"
#include "mzm/resilience.hpp"
#include "mzm/tomography.hpp"

namespace mzm::runner {

using Json = nlohmann::ordered_json;

enum class Command { verify, tomography, bell, resilience, fit_p };

std::string to_string(Command c);
Command parse_command(std::string_view name);

// Raised for anything wrong with the configuration; the CLI maps it to
// exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResilienceOptions {
  std::size_t n_samples = 2000;
  double p_start = 0.0;
  double p_stop = 0.15;
  double p_step = 0.005;
  ErrorFrame frame = ErrorFrame::measurement;
  bool calibrate = true;
  double target = 0.065;
  std::size_t bootstrap_resamples = 200;
  unsigned threads = 0;
};

struct RunConfig {
  Command command = Command::verify;
  Shots shots = Shots::sampled(100000);
  std::uint64_t seed = 2024;
  // Local single-qubit errors on the braid generators.
  std::string error_name = "Z";
  NoiseSpec noise{};
  // Correlated dephasing applied to the circuit output in the measurement
  // frame (tomography, bell, fit-p).
  double dephasing_p = 0.012;
  // "identity", "hadamard" or "table" (with the two vectors below).
  std::string basis_map = "identity";
  std::vector<std::size_t> basis_permutation;
  std::vector<Complex> basis_phases;
  std::filesystem::path output_dir = "out";
  ResilienceOptions resilience{};

  // Throws ConfigError.
  void validate() const;
  BasisMap make_basis_map() const;
  StudyConfig study_config() const;

  // Resolved configuration embedded in every report; the output directory
  // and thread count are left out so reports compare byte-for-byte.
  Json to_json() const;
};

// Overlays the keys of `j` on `base`; unknown keys are an error.
RunConfig config_from_json(const Json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Published experimental fidelities, reported next to simulated numbers
/// for comparison only.
struct Measured {
  double value;
  double uncertainty;
};

struct ExperimentalReference {
  static constexpr Measured initial_spin{0.9884, 0.0137};
  static constexpr Measured initial_logical{0.9976, 0.0139};
  static constexpr Measured process_intra{0.991, 0.014};
  static constexpr Measured process_inter{0.961, 0.014};
  static constexpr Measured output_spin{0.8974, 0.0033};
  static constexpr Measured output_logical{0.9901, 0.0036};
  static constexpr Measured bell_phi_plus{0.9938, 0.0013};
  static constexpr Measured bell_psi_plus{0.9953, 0.0044};
  static constexpr Measured measurement_input{0.9894, 0.0124};
  static constexpr Measured measurement_output{0.9006, 0.0031};
  static constexpr Measured logical_input{0.9976, 0.0126};
  static constexpr Measured logical_output{0.9916, 0.0034};
  static constexpr double dephasing_p = 0.012;
  static constexpr double cnot_fidelity_claim = 0.992;

  static Json to_json();
};

struct RunOutcome {
  int exit_code = 0;
  Json report;
  std::vector<std::filesystem::path> files;  // written, in order
};

// Each command writes its report (and data files) under cfg.output_dir.
RunOutcome run_verify(const RunConfig& cfg);
RunOutcome run_tomography(const RunConfig& cfg);
RunOutcome run_bell(const RunConfig& cfg);
RunOutcome run_resilience(const RunConfig& cfg);
RunOutcome run_fit_p(const RunConfig& cfg);
RunOutcome run(const RunConfig& cfg);

// Helpers shared by the commands and the tests.
Json matrix_json(const ComplexMatrix& m);
Json complex_json(Complex z);
std::string counts_csv(const std::vector<CountRecord>& records);
std::string fig6c_csv(const StudyResult& r);
std::string fig6d_csv(const StudyResult& r);

// Encoded CNOT as noisy-circuit steps, one per braid generator.
std::vector<CircuitStep> encoded_cnot_steps();

/// Spin- and logical-basis fidelities of one simulated tomography run.
struct StateReport {
  std::string label;
  DensityMatrix measured;  // measurement frame, 3 qubits
  double spin_fidelity = 0.0;
  double logical_fidelity = 0.0;
  double leakage = 0.0;
};

// Tomographs `actual` (chain frame) in the measurement frame of `basis`
// and scores it against the pure chain-frame target.
StateReport tomograph_chain_state(const std::string& label, const ComplexMatrix& actual,
                                  const StateVector& target, const BasisMap& basis,
                                  Shots shots, std::uint64_t seed,
                                  std::vector<CountRecord>* counts = nullptr);

}  // namespace mzm::runner
