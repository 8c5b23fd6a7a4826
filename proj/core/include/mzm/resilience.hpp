#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mzm/matrix.hpp"
#include "mzm/noise.hpp"

namespace mzm {

/// Frame in which the encoded circuit's single-qubit errors act.
///
/// `chain`: U_E acts directly on the three chain qubits.
/// `measurement`: U_E acts in the per-qubit Hadamard readout frame, so a
/// Z error there is an X (parity-flipping) error on the chain qubits.
enum class ErrorFrame { chain, measurement };

std::string to_string(ErrorFrame f);
ErrorFrame parse_error_frame(std::string_view name);

// 0, step, 2*step, ... up to and including `stop` (within rounding).
std::vector<double> linear_grid(double start, double stop, double step);

struct StudyConfig {
  std::size_t n_samples = 2000;
  std::vector<double> p_grid = linear_grid(0.0, 0.15, 0.005);
  NoiseSpec noise{};
  ErrorFrame encoded_frame = ErrorFrame::measurement;
  std::uint64_t master_seed = 2024;
  StateVector reference_state = StateVector::basis(4, 0);
  std::size_t bootstrap_resamples = 200;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct TrialResult {
  double f_enc = 1.0;
  double f_un = 1.0;
  double leakage = 0.0;  // weight removed by the parity projection
};

// Fidelities sqrt(Tr(rho_ideal rho_out)) of the encoded braid circuit and
// the bare two-qubit CNOT for one input state at error probability p.
TrialResult run_trial(const StateVector& psi_in, double p, const NoiseSpec& noise,
                      ErrorFrame encoded_frame = ErrorFrame::measurement);

struct StudyPoint {
  double p = 0.0;
  double f_enc_mean = 0.0;
  double f_un_mean = 0.0;
  double f_enc_stderr = 0.0;
  double f_un_stderr = 0.0;
  double p_avg = 0.0;            // fraction of samples with f_enc > f_un
  double p_avg_bootstrap = 0.0;  // fraction of resamples with mean f_enc > mean f_un
  double leakage_mean = 0.0;
};

struct StudyResult {
  std::vector<StudyPoint> points;
  std::optional<double> threshold;
  Placement placement = Placement::per_gate_participants;
  ErrorFrame encoded_frame = ErrorFrame::measurement;
  std::size_t n_samples = 0;
  std::uint64_t master_seed = 0;
};

// Sample k is the Haar unitary drawn from stream k of master_seed applied
// to the reference state; the same samples are reused at every p. Output
// does not depend on the thread count.
StudyResult run_comparison(const StudyConfig& cfg);

// Smallest p where F_enc - F_un changes sign, by linear interpolation
// between adjacent grid points; starts at the first point with a nonzero
// difference so the common value at p = 0 is not a crossing.
std::optional<double> find_threshold(const std::vector<double>& p,
                                     const std::vector<double>& f_enc,
                                     const std::vector<double>& f_un);
std::optional<double> find_threshold(const StudyResult& result);

struct CalibrationEntry {
  Placement placement;
  ErrorFrame frame;
  std::optional<double> threshold;
};

struct Calibration {
  std::vector<CalibrationEntry> entries;
  Placement placement = Placement::per_gate_participants;
  ErrorFrame frame = ErrorFrame::measurement;
  std::optional<double> threshold;
};

// Sweeps every placement and frame and picks the pair whose threshold is
// closest to `target`.
Calibration calibrate_placement(const StudyConfig& base, double target = 0.065);

}  // namespace mzm
