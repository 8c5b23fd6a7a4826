#include "mzm/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzm/random.hpp"

namespace mzm {

namespace {

void require_power_of_two(std::size_t dim, const char* what) {
  if (dim == 0 || !std::has_single_bit(dim) || dim > kMaxDim) {
    throw std::invalid_argument(std::string(what) +
                                ": dimension must be a power of two <= 2^11");
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  require_power_of_two(dim(), "StateVector");
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("StateVector: non-finite amplitude");
  }
  const double norm = amplitudes_.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("StateVector: zero vector");
  }
  amplitudes_ /= norm;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw std::out_of_range("StateVector::basis: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::from(std::initializer_list<Complex> amplitudes) {
  ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amplitudes) v(i++) = a;
  return StateVector(std::move(v));
}

std::size_t StateVector::n_qubits() const noexcept {
  return static_cast<std::size_t>(std::countr_zero(dim()));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw std::invalid_argument("StateVector::inner: dimension mismatch");
  }
  return amplitudes_.dot(other.amplitudes_);
}

StateVector StateVector::apply(const ComplexMatrix& unitary) const {
  if (unitary.cols() != amplitudes_.size() || unitary.rows() != unitary.cols()) {
    throw std::invalid_argument("StateVector::apply: dimension mismatch");
  }
  return StateVector(unitary * amplitudes_);
}

DensityMatrix::DensityMatrix(const ComplexMatrix& matrix) {
  require_square(matrix, "DensityMatrix");
  require_power_of_two(static_cast<std::size_t>(matrix.rows()),
                       "DensityMatrix");
  if (!matrix.allFinite()) {
    throw std::invalid_argument("DensityMatrix: non-finite entry");
  }
  if (hermiticity_error(matrix) > kStateTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    throw std::invalid_argument("DensityMatrix: trace != 1 (" +
                                std::to_string(tr.real()) + ")");
  }
  matrix_ = 0.5 * (matrix + matrix.adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(
      matrix_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdClamp) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
}

double DensityMatrix::purity() const {
  return (matrix_ * matrix_).trace().real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors) {
  return kron_all(std::span<const ComplexMatrix>(factors.begin(), factors.size()));
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t qubit,
                    std::size_t n_qubits) {
  if (qubit >= n_qubits) {
    throw std::out_of_range("embed: qubit index out of range");
  }
  const auto left = Eigen::Index{1} << qubit;
  const auto right = Eigen::Index{1} << (n_qubits - qubit - 1);
  return kron(kron(ComplexMatrix::Identity(left, left), op),
              ComplexMatrix::Identity(right, right));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1.0, 1.0, 1.0, -1.0;
  return m / std::sqrt(2.0);
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& a) {
  require_square(a, "hermiticity_error");
  return max_abs(a - a.adjoint());
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const auto n = u.rows();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n)) <= tol;
}

namespace {
constexpr double kRoundoffZero = 1e-14;
}  // namespace

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
  require_square(a, "matrix_sqrt_psd");
  if (hermiticity_error(a) > 1e-8) {
    throw std::invalid_argument("matrix_sqrt_psd: input is not Hermitian");
  }
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  Eigen::VectorXd values = eig.eigenvalues();
  // Relative clamp so large-norm inputs keep the same round-off budget.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kPsdClamp * scale) {
      throw std::invalid_argument("matrix_sqrt_psd: negative eigenvalue");
    }
    // Round-off sized eigenvalues are zeros; their square roots would not be.
    values(i) = values(i) <= kRoundoffZero * scale ? 0.0 : std::sqrt(values(i));
  }
  const ComplexMatrix& v = eig.eigenvectors();
  return v * values.cast<Complex>().asDiagonal() * v.adjoint();
}

double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  }
  const ComplexMatrix root = matrix_sqrt_psd(rho);
  ComplexMatrix inner = root * sigma * root;
  inner = 0.5 * (inner + inner.adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(inner,
                                                         Eigen::EigenvaluesOnly);
  const double cutoff = kRoundoffZero * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  double tr = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double ev = eig.eigenvalues()(i);
    if (ev > cutoff) tr += std::sqrt(ev);
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  }
  return uhlmann_fidelity(rho.matrix(), sigma.matrix());
}

StateVector haar_random_state(std::size_t n_qubits, std::uint64_t seed,
                              std::uint64_t stream) {
  if (n_qubits == 0 || n_qubits > 11) {
    throw std::invalid_argument("haar_random_state: n_qubits must be in 1..11");
  }
  CounterRng rng(seed, stream);
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  return StateVector(std::move(v));
}

ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed,
                                  std::uint64_t stream) {
  if (dim == 0 || dim > kMaxDim) {
    throw std::invalid_argument("haar_random_unitary: bad dimension");
  }
  CounterRng rng(seed, stream);
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  }
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  // Fix the phase freedom of QR so Q is Haar distributed.
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

PhaseMatch equal_up_to_global_phase(const ComplexMatrix& u,
                                    const ComplexMatrix& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || v.size() == 0) {
    return {};
  }
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  const double largest = v.cwiseAbs().maxCoeff(&row, &col);
  if (largest == 0.0) {
    return {max_abs(u) <= tol, Complex{1.0, 0.0}};
  }
  Complex c = u(row, col) / v(row, col);
  const double mag = std::abs(c);
  if (mag == 0.0) return {};
  c /= mag;
  return {max_abs(u - c * v) <= tol, c};
}

}  // namespace mzm
