#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mzm/kitaev.hpp"
#include "mzm/matrix.hpp"
#include "mzm/noise.hpp"

namespace mzm {

// Single-qubit projectors of the measurement frame; the same labels name
// the product input states used for process tomography.
enum class Projector { P0, P1, Plus, R };  // |R> = (|0> - i|1>)/sqrt2

using MeasurementSetting = std::vector<Projector>;

char to_char(Projector p) noexcept;  // '0', '1', '+', 'R'
std::string to_string(const MeasurementSetting& s);
MeasurementSetting parse_setting(std::string_view label);

StateVector projector_state(const MeasurementSetting& s);
ComplexMatrix projector_matrix(const MeasurementSetting& s);

// All 4^n settings, lexicographic in (0, 1, +, R) with qubit 0 slowest.
std::vector<MeasurementSetting> enumerate_settings(std::size_t n_qubits);

struct CountRecord {
  MeasurementSetting setting;
  double shots = 0.0;
  double successes = 0.0;  // real-valued in exact mode
};

struct Shots {
  std::uint64_t count = 1;
  bool exact = false;

  static Shots sampled(std::uint64_t n) { return {n, false}; }
  static Shots exact_probabilities(std::uint64_t n = 1) { return {n, true}; }
};

// Binomial sampling of Tr(Pi rho) per setting; setting k draws from stream
// k of `seed`, so the result does not depend on evaluation order.
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                         const std::vector<MeasurementSetting>& settings,
                                         Shots shots, std::uint64_t seed);

// Nearest (Frobenius) unit-trace PSD matrix to the Hermitian part of `a`:
// eigenvalues are clipped at zero and the removed weight is spread over
// the survivors.
ComplexMatrix project_to_density(const ComplexMatrix& a);

// Unbiased Hermitian estimate from linear inversion against the complete
// projector frame. Under shot noise the trace is 1 only on average and
// eigenvalues may be negative.
// Throws if any of the 4^n settings is missing.
ComplexMatrix linear_inversion(const std::vector<CountRecord>& records,
                               std::size_t n_qubits);

// linear_inversion followed by project_to_density.
DensityMatrix reconstruct_state(const std::vector<CountRecord>& records,
                                std::size_t n_qubits);

// Solves eps(rho_k) = sum chi_mn E_m rho_k E_n^dagger over the 4^n product
// inputs, then Hermitises and PSD-projects chi.
ProcessMatrix reconstruct_process(const std::vector<MeasurementSetting>& inputs,
                                  const std::vector<DensityMatrix>& outputs,
                                  std::size_t n_qubits);

double state_fidelity(const DensityMatrix& rho_exp, const DensityMatrix& rho_th);
double process_fidelity(const ProcessMatrix& chi_exp, const ProcessMatrix& chi_ideal);

struct FitResult {
  double p_hat = 0.0;
  double residual = 0.0;
};

// Minimises ||eps_p(rho_th) - rho_exp||_F over p in [0,1] for the
// correlated dephasing channel (in the frame of `basis` when given):
// a 1e-3 grid, then golden-section refinement to 1e-6.
FitResult fit_dephasing_p(const DensityMatrix& rho_th, const DensityMatrix& rho_exp,
                          const BasisMap* basis = nullptr);
// Same fit on a raw Hermitian estimate such as linear_inversion output. The
// fit is affine in rho_exp, so an unbiased estimate gives an unbiased p_hat;
// positivity clipping shifts p_hat upward at small p.
FitResult fit_dephasing_p(const DensityMatrix& rho_th, const ComplexMatrix& rho_exp,
                          const BasisMap* basis = nullptr);

// Frobenius discrepancy at a single p; exposed for diagnostics.
double dephasing_residual(const DensityMatrix& rho_th, const DensityMatrix& rho_exp,
                          double p, const BasisMap* basis = nullptr);

}  // namespace mzm
