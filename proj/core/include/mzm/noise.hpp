#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mzm/kitaev.hpp"
#include "mzm/matrix.hpp"

namespace mzm {

/// Where single-qubit error channels sit in a circuit.
enum class Placement {
  per_gate_participants,  // after each gate, on each qubit it touches
  once_per_qubit_end,     // once on every qubit after the last gate
  once_per_qubit_start,   // once on every qubit before the first gate
  per_time_step,          // after each gate, on every qubit
};

std::string to_string(Placement p);
Placement parse_placement(std::string_view name);
inline constexpr Placement kAllPlacements[] = {
    Placement::per_gate_participants, Placement::once_per_qubit_end,
    Placement::once_per_qubit_start, Placement::per_time_step};

struct NoiseSpec {
  ComplexMatrix error_unitary = pauli_z();
  double p = 0.0;
  Placement placement = Placement::per_gate_participants;

  // Throws unless p is in [0,1] and error_unitary is a 2x2 unitary.
  void validate() const;
};

// "I", "X", "Y", "Z" or "H".
ComplexMatrix named_unitary(std::string_view name);

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  // Throws unless the operators share a square dimension and
  // sum K^dagger K = I within 1e-10.
  explicit KrausChannel(std::vector<ComplexMatrix> ops);

  static KrausChannel identity(std::size_t dim);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(ops_.front().rows());
  }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }

  // sum K rho K^dagger without invariant checks.
  ComplexMatrix apply_raw(const ComplexMatrix& rho) const;

 private:
  std::vector<ComplexMatrix> ops_;
};

// {sqrt(1-p) I, sqrt(p) Z..Z}, with Z..Z acting in the measurement frame
// of `basis` when one is given.
KrausChannel correlated_dephasing(double p, std::size_t n_qubits,
                                  const BasisMap* basis = nullptr);

// {sqrt(1-p) I, sqrt(p) U_E on target}.
KrausChannel local_error_channel(const NoiseSpec& spec, std::size_t target,
                                 std::size_t n_qubits);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

struct CircuitStep {
  ComplexMatrix unitary;
  std::vector<std::size_t> participants;
};

// Applies each step's unitary in order with local U_E channels placed per
// spec.placement. Works on raw matrices; callers validate the result.
ComplexMatrix run_noisy_circuit(const std::vector<CircuitStep>& steps,
                                const NoiseSpec& spec, const ComplexMatrix& rho,
                                std::size_t n_qubits);

// Single noisy gate; `participants` defaults to every qubit.
DensityMatrix noisy_gate(const ComplexMatrix& gate, const NoiseSpec& spec,
                         const DensityMatrix& rho,
                         std::optional<std::vector<std::size_t>> participants = {});

/// Process matrix chi with eps(rho) = sum chi_mn E_m rho E_n^dagger over
/// Pauli products E_m in order I,X,Y,Z (tensor lexicographic for two
/// qubits). Trace preservation makes Tr(chi) = 1.
class ProcessMatrix {
 public:
  // Validates Hermitian within 1e-10, PSD within 1e-8 and trace 1.
  ProcessMatrix(std::size_t n_qubits, ComplexMatrix chi);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const ComplexMatrix& chi() const noexcept { return chi_; }

  // chi entry by Pauli labels, e.g. at("I", "Z") or at("II", "XX").
  Complex at(std::string_view row, std::string_view col) const;

 private:
  std::size_t n_qubits_;
  ComplexMatrix chi_;
};

// Pauli products E_m in index order.
std::vector<ComplexMatrix> pauli_basis(std::size_t n_qubits);
std::size_t pauli_label_index(std::string_view label);

ProcessMatrix chi_of_unitary(const ComplexMatrix& u, std::size_t n_qubits);

// sum chi_mn E_m rho E_n^dagger
ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho);

}  // namespace mzm
