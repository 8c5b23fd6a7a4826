#include "mzm/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace mzm {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": p must lie in [0, 1]");
  }
}

// (1-p) rho + p E rho E^dagger
void mix_in_error(ComplexMatrix& rho, const ComplexMatrix& e, double p) {
  if (p == 0.0) return;
  rho = (1.0 - p) * rho + p * (e * rho * e.adjoint());
}

}  // namespace

std::string to_string(Placement p) {
  switch (p) {
    case Placement::per_gate_participants: return "per_gate_participants";
    case Placement::once_per_qubit_end: return "once_per_qubit_end";
    case Placement::once_per_qubit_start: return "once_per_qubit_start";
    case Placement::per_time_step: return "per_time_step";
  }
  return "?";
}

Placement parse_placement(std::string_view name) {
  for (Placement p : kAllPlacements) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown placement '" + std::string(name) + "'");
}

void NoiseSpec::validate() const {
  require_probability(p, "NoiseSpec");
  if (error_unitary.rows() != 2 || !is_unitary(error_unitary, 1e-12)) {
    throw std::invalid_argument("NoiseSpec: error_unitary must be a 2x2 unitary");
  }
}

ComplexMatrix named_unitary(std::string_view name) {
  if (name == "I") return ComplexMatrix::Identity(2, 2);
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") return hadamard();
  throw std::invalid_argument("unknown error unitary '" + std::string(name) + "'");
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) {
    throw std::invalid_argument("KrausChannel: no operators");
  }
  const auto n = ops_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : ops_) {
    if (k.rows() != n || k.cols() != n) {
      throw std::invalid_argument("KrausChannel: operators must share a square dimension");
    }
    sum += k.adjoint() * k;
  }
  if (max_abs(sum - ComplexMatrix::Identity(n, n)) > 1e-10) {
    throw std::invalid_argument("KrausChannel: not trace preserving");
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return KrausChannel({ComplexMatrix::Identity(n, n)});
}

ComplexMatrix KrausChannel::apply_raw(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ops_) out += k * rho * k.adjoint();
  return out;
}

KrausChannel correlated_dephasing(double p, std::size_t n_qubits,
                                  const BasisMap* basis) {
  require_probability(p, "correlated_dephasing");
  if (n_qubits == 0 || n_qubits > 11) {
    throw std::invalid_argument("correlated_dephasing: bad qubit count");
  }
  ComplexMatrix zz = parity_operator(n_qubits);
  if (basis != nullptr) {
    if (basis->dim() != static_cast<std::size_t>(zz.rows())) {
      throw std::invalid_argument("correlated_dephasing: basis map dimension mismatch");
    }
    zz = basis->pull_back(zz);
  }
  const auto dim = zz.rows();
  return KrausChannel({std::sqrt(1.0 - p) * ComplexMatrix::Identity(dim, dim),
                       std::sqrt(p) * zz});
}

KrausChannel local_error_channel(const NoiseSpec& spec, std::size_t target,
                                 std::size_t n_qubits) {
  spec.validate();
  if (target >= n_qubits) {
    throw std::out_of_range("local_error_channel: target qubit out of range");
  }
  const auto dim = Eigen::Index{1} << n_qubits;
  return KrausChannel({std::sqrt(1.0 - spec.p) * ComplexMatrix::Identity(dim, dim),
                       std::sqrt(spec.p) * embed(spec.error_unitary, target, n_qubits)});
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  return DensityMatrix(ch.apply_raw(rho.matrix()));
}

ComplexMatrix run_noisy_circuit(const std::vector<CircuitStep>& steps,
                                const NoiseSpec& spec, const ComplexMatrix& rho,
                                std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("run_noisy_circuit: state dimension mismatch");
  }
  std::vector<ComplexMatrix> errors;
  errors.reserve(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    errors.push_back(embed(spec.error_unitary, q, n_qubits));
  }
  auto all_qubits = [&](ComplexMatrix& r) {
    for (const auto& e : errors) mix_in_error(r, e, spec.p);
  };

  ComplexMatrix out = rho;
  if (spec.placement == Placement::once_per_qubit_start) all_qubits(out);
  for (const auto& step : steps) {
    if (step.unitary.rows() != dim) {
      throw std::invalid_argument("run_noisy_circuit: gate dimension mismatch");
    }
    out = step.unitary * out * step.unitary.adjoint();
    if (spec.placement == Placement::per_gate_participants) {
      for (std::size_t q : step.participants) {
        if (q >= n_qubits) {
          throw std::out_of_range("run_noisy_circuit: participant out of range");
        }
        mix_in_error(out, errors[q], spec.p);
      }
    } else if (spec.placement == Placement::per_time_step) {
      all_qubits(out);
    }
  }
  if (spec.placement == Placement::once_per_qubit_end) all_qubits(out);
  return out;
}

DensityMatrix noisy_gate(const ComplexMatrix& gate, const NoiseSpec& spec,
                         const DensityMatrix& rho,
                         std::optional<std::vector<std::size_t>> participants) {
  spec.validate();
  if (gate.rows() != static_cast<Eigen::Index>(rho.dim()) || gate.cols() != gate.rows()) {
    throw std::invalid_argument("noisy_gate: dimension mismatch");
  }
  const std::size_t n = StateVector::basis(rho.dim(), 0).n_qubits();
  std::vector<std::size_t> who;
  if (participants) {
    who = *participants;
  } else {
    for (std::size_t q = 0; q < n; ++q) who.push_back(q);
  }
  return DensityMatrix(run_noisy_circuit({{gate, who}}, spec, rho.matrix(), n));
}

std::vector<ComplexMatrix> pauli_basis(std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > 2) {
    throw std::invalid_argument("pauli_basis: only 1 or 2 qubits supported");
  }
  const ComplexMatrix single[] = {ComplexMatrix::Identity(2, 2), pauli_x(),
                                  pauli_y(), pauli_z()};
  std::vector<ComplexMatrix> out;
  if (n_qubits == 1) {
    out.assign(std::begin(single), std::end(single));
  } else {
    for (const auto& a : single) {
      for (const auto& b : single) out.push_back(kron(a, b));
    }
  }
  return out;
}

std::size_t pauli_label_index(std::string_view label) {
  std::size_t index = 0;
  for (char ch : label) {
    std::size_t digit;
    switch (ch) {
      case 'I': digit = 0; break;
      case 'X': digit = 1; break;
      case 'Y': digit = 2; break;
      case 'Z': digit = 3; break;
      default:
        throw std::invalid_argument("pauli_label_index: bad label '" +
                                    std::string(label) + "'");
    }
    index = index * 4 + digit;
  }
  return index;
}

ProcessMatrix::ProcessMatrix(std::size_t n_qubits, ComplexMatrix chi)
    : n_qubits_(n_qubits), chi_(std::move(chi)) {
  const auto dim = Eigen::Index{1} << (2 * n_qubits);
  if (n_qubits < 1 || n_qubits > 2 || chi_.rows() != dim || chi_.cols() != dim) {
    throw std::invalid_argument("ProcessMatrix: chi must be 4^n x 4^n for n in {1,2}");
  }
  if (hermiticity_error(chi_) > 1e-10) {
    throw std::invalid_argument("ProcessMatrix: chi is not Hermitian");
  }
  chi_ = 0.5 * (chi_ + chi_.adjoint()).eval();
  if (std::abs(chi_.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument("ProcessMatrix: trace != 1");
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(chi_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8) {
    throw std::invalid_argument("ProcessMatrix: chi is not PSD");
  }
}

Complex ProcessMatrix::at(std::string_view row, std::string_view col) const {
  if (row.size() != n_qubits_ || col.size() != n_qubits_) {
    throw std::invalid_argument("ProcessMatrix::at: label length mismatch");
  }
  return chi_(static_cast<Eigen::Index>(pauli_label_index(row)),
              static_cast<Eigen::Index>(pauli_label_index(col)));
}

ProcessMatrix chi_of_unitary(const ComplexMatrix& u, std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  if (u.rows() != dim || !is_unitary(u, 1e-10)) {
    throw std::invalid_argument("chi_of_unitary: expected a 2^n x 2^n unitary");
  }
  const auto basis = pauli_basis(n_qubits);
  ComplexVector a(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t m = 0; m < basis.size(); ++m) {
    a(static_cast<Eigen::Index>(m)) =
        (basis[m].adjoint() * u).trace() / static_cast<double>(dim);
  }
  return ProcessMatrix(n_qubits, a * a.adjoint());
}

ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho) {
  const auto basis = pauli_basis(chi.n_qubits());
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t m = 0; m < basis.size(); ++m) {
    for (std::size_t n = 0; n < basis.size(); ++n) {
      const Complex c = chi.chi()(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
      if (c == Complex{}) continue;
      out += c * basis[m] * rho * basis[n].adjoint();
    }
  }
  return out;
}

}  // namespace mzm
