#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzm/matrix.hpp"
#include "mzm/pauli.hpp"

namespace mzm {

/// Three 3-site Kitaev chains joined by two connector sites, 11 sites in
/// all, numbered left to right: chain 1, connector, chain 2, connector,
/// chain 3.
struct ChainLayout {
  std::array<std::array<int, 3>, 3> chain_sites{{{1, 2, 3}, {5, 6, 7}, {9, 10, 11}}};
  std::array<int, 2> connector_sites{4, 8};

  static constexpr std::size_t kSites = 11;

  // Throws unless the sites are disjoint and cover 1..11.
  void validate() const;
};

// Bond terms i*g_{jb}*g_{j+1,a} inside each chain plus i*g_{ka}*g_{kb} on
// each connector; eight terms in canonical Pauli form.
OperatorSum build_hamiltonian(const ChainLayout& layout = {});

// The unpaired endpoint modes {1a, 3b, 5a, 7b, 9a, 11b} (labelled A..F).
std::vector<MajoranaIndex> endpoint_zero_modes(const ChainLayout& layout = {});

// [h, gamma] for every Majorana operator of the 11-site system.
std::map<MajoranaIndex, OperatorSum> zero_mode_residuals(const OperatorSum& h);

// Single chain Hamiltonian over its three local spins: -(X1 X2 + X2 X3).
OperatorSum chain_hamiltonian();

// (|0_c>, |1_c>) as GHZ states in the x basis of the chain's spins.
// Chain 1 uses (+, -); chains 2 and 3 use (-, +).
std::pair<StateVector, StateVector> chain_ground_states(int chain);

/// Amplitudes over the two logical qubits, basis |00>,|01>,|10>,|11>.
class LogicalState {
 public:
  explicit LogicalState(StateVector state);
  static LogicalState basis(std::size_t index);
  const StateVector& state() const noexcept { return state_; }

 private:
  StateVector state_;
};

/// Amplitudes over the chain-label basis |q1 q2 q3>, index q1*4+q2*2+q3.
class ChainBasisState {
 public:
  explicit ChainBasisState(StateVector state);
  static ChainBasisState basis(std::size_t index);
  const StateVector& state() const noexcept { return state_; }

 private:
  StateVector state_;
};

// Even-parity chain indices in logical order: |000>,|011>,|101>,|110>.
inline constexpr std::array<int, 4> kEvenSector{0, 3, 5, 6};
inline constexpr std::array<int, 4> kOddSector{1, 2, 4, 7};

// 8x4 isometry taking logical amplitudes into the even sector.
ComplexMatrix encoding_isometry();

ChainBasisState encode_logical(const LogicalState& l);

struct DecodedLogical {
  std::optional<LogicalState> state;  // empty when the state is all odd parity
  double leakage = 0.0;               // 1 - weight in the even sector
};
DecodedLogical decode_logical(const ChainBasisState& s);

struct DecodedDensity {
  std::optional<DensityMatrix> state;
  double leakage = 0.0;
};
DecodedDensity decode_logical(const DensityMatrix& rho);

// Even-sector block of an 8x8 chain-basis operator, renormalised; returns
// the raw block weight through `weight` when non-null. No validation.
ComplexMatrix project_even_sector(const ComplexMatrix& rho8, double* weight = nullptr);

enum class Parity { even, odd, mixed };
std::string to_string(Parity p);

// Eigenvalue of Z x Z x Z if the state is an eigenvector within 1e-10.
Parity parity_of(const ChainBasisState& s);
ComplexMatrix parity_operator(std::size_t n_qubits = 3);

// |chain1> (x) |0>_4 (x) |chain2> (x) |0>_8 (x) |chain3> over 11 spins, with
// each chain's label taken from `s`.
StateVector full_ground_state(const ChainBasisState& s);

/// Chain-basis to measurement-basis correspondence M (|m> = M |chain>).
///
/// The photonic readout basis is not fixed by the model; identity is the
/// default and a per-qubit Hadamard is the standard parity-mixing choice.
class BasisMap {
 public:
  explicit BasisMap(ComplexMatrix unitary, std::string name = "custom");

  static BasisMap identity(std::size_t n_qubits = 3);
  static BasisMap hadamard(std::size_t n_qubits = 3);
  // |i> -> phases[i] |permutation[i]>; phases must have unit modulus.
  static BasisMap from_table(const std::vector<std::size_t>& permutation,
                             const std::vector<Complex>& phases);
  // "identity" | "hadamard"
  static BasisMap named(const std::string& name, std::size_t n_qubits = 3);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  // M rho M^dagger
  ComplexMatrix to_measurement(const ComplexMatrix& rho) const;
  // M^dagger rho M
  ComplexMatrix to_chain(const ComplexMatrix& rho) const;
  // Operator given in the measurement frame, expressed in the chain frame.
  ComplexMatrix pull_back(const ComplexMatrix& op) const { return to_chain(op); }

 private:
  ComplexMatrix m_;
  std::string name_;
};

}  // namespace mzm
