#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

namespace mzm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Eigenvalues above -kPsdClamp are treated as round-off and clamped to 0.
inline constexpr double kPsdClamp = 1e-10;
inline constexpr double kStateTolerance = 1e-12;
// Largest supported Hilbert space: 11 qubits.
inline constexpr std::size_t kMaxDim = std::size_t{1} << 11;

/// Normalised pure state of 2^n amplitudes.
class StateVector {
 public:
  // Normalises `amplitudes`; throws if the dimension is not a power of
  // two or the vector is zero.
  explicit StateVector(ComplexVector amplitudes);

  static StateVector basis(std::size_t dim, std::size_t index);
  static StateVector from(std::initializer_list<Complex> amplitudes);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  std::size_t n_qubits() const noexcept;
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(i); }

  // <this|other>
  Complex inner(const StateVector& other) const;
  StateVector apply(const ComplexMatrix& unitary) const;

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  // Validates the invariants (Hermitian and trace within 1e-12,
  // eigenvalues >= -1e-10) and stores the Hermitian part.
  explicit DensityMatrix(const ComplexMatrix& matrix);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(matrix_.rows());
  }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  double purity() const;

 private:
  ComplexMatrix matrix_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors);

// Single-qubit operator `op` embedded at `qubit` (0 = most significant)
// in an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t qubit,
                    std::size_t n_qubits);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

double hermiticity_error(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-12);
double max_abs(const ComplexMatrix& a);

// Hermitian PSD square root. Negative eigenvalues down to -kPsdClamp are
// clamped; throws std::invalid_argument for non-Hermitian input
// (max |a - a^dagger| > 1e-8) or a clearly negative spectrum.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 clamped to [0, 1]. The raw-matrix
// overload accepts any pair of trace-one PSD operators (process matrices).
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

StateVector haar_random_state(std::size_t n_qubits, std::uint64_t seed,
                              std::uint64_t stream = 0);
ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed,
                                  std::uint64_t stream = 0);

struct PhaseMatch {
  bool equal = false;
  Complex phase{1.0, 0.0};
};

// Whether u = c v for some |c| = 1, with c read off the largest-magnitude
// entry of v.
PhaseMatch equal_up_to_global_phase(const ComplexMatrix& u,
                                    const ComplexMatrix& v, double tol);

}  // namespace mzm
