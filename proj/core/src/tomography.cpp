#include "mzm/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "mzm/random.hpp"

namespace mzm {

namespace {

void require_qubits(std::size_t n, const char* what) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument(std::string(what) + ": n_qubits must be 1, 2 or 3");
  }
}

ComplexVector single_state(Projector p) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector v(2);
  switch (p) {
    case Projector::P0: v << 1.0, 0.0; break;
    case Projector::P1: v << 0.0, 1.0; break;
    case Projector::Plus: v << s, s; break;
    case Projector::R: v << s, -kI * s; break;
  }
  return v;
}

// Rows: settings in enumerate order. Columns: Pauli strings in
// pauli_label order. Entry Tr(Pi_k P_j), which is real.
Eigen::MatrixXd frame_matrix(std::size_t n) {
  const auto settings = enumerate_settings(n);
  const ComplexMatrix paulis[] = {ComplexMatrix::Identity(2, 2), pauli_x(), pauli_y(),
                                  pauli_z()};
  const auto count = static_cast<Eigen::Index>(settings.size());
  Eigen::MatrixXd a(count, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    ComplexMatrix p = ComplexMatrix::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
      const auto digit = (j >> (2 * (n - 1 - q))) & 3;
      p = kron(p, paulis[digit]);
    }
    for (Eigen::Index k = 0; k < count; ++k) {
      a(k, j) = (projector_matrix(settings[static_cast<std::size_t>(k)]) * p).trace().real();
    }
  }
  return a;
}

ComplexMatrix pauli_string_matrix(std::size_t index, std::size_t n) {
  const ComplexMatrix paulis[] = {ComplexMatrix::Identity(2, 2), pauli_x(), pauli_y(),
                                  pauli_z()};
  ComplexMatrix p = ComplexMatrix::Identity(1, 1);
  for (std::size_t q = 0; q < n; ++q) {
    p = kron(p, paulis[(index >> (2 * (n - 1 - q))) & 3]);
  }
  return p;
}

ComplexMatrix dephasing_flip(std::size_t dim, const BasisMap* basis) {
  const std::size_t n = StateVector::basis(dim, 0).n_qubits();
  ComplexMatrix q = parity_operator(n);
  if (basis != nullptr) {
    if (basis->dim() != dim) {
      throw std::invalid_argument("fit_dephasing_p: basis map dimension mismatch");
    }
    q = basis->pull_back(q);
  }
  return q;
}

}  // namespace

char to_char(Projector p) noexcept {
  switch (p) {
    case Projector::P0: return '0';
    case Projector::P1: return '1';
    case Projector::Plus: return '+';
    case Projector::R: return 'R';
  }
  return '?';
}

std::string to_string(const MeasurementSetting& s) {
  std::string out;
  for (Projector p : s) out += to_char(p);
  return out;
}

MeasurementSetting parse_setting(std::string_view label) {
  MeasurementSetting s;
  for (char ch : label) {
    switch (ch) {
      case '0': s.push_back(Projector::P0); break;
      case '1': s.push_back(Projector::P1); break;
      case '+': s.push_back(Projector::Plus); break;
      case 'R': s.push_back(Projector::R); break;
      default:
        throw std::invalid_argument("parse_setting: bad label '" + std::string(label) + "'");
    }
  }
  return s;
}

StateVector projector_state(const MeasurementSetting& s) {
  ComplexMatrix v = ComplexMatrix::Identity(1, 1);
  for (Projector p : s) v = kron(v, single_state(p));
  return StateVector(v.col(0));
}

ComplexMatrix projector_matrix(const MeasurementSetting& s) {
  const ComplexVector v = projector_state(s).amplitudes();
  return v * v.adjoint();
}

std::vector<MeasurementSetting> enumerate_settings(std::size_t n_qubits) {
  require_qubits(n_qubits, "enumerate_settings");
  constexpr Projector order[] = {Projector::P0, Projector::P1, Projector::Plus, Projector::R};
  std::vector<MeasurementSetting> out;
  const std::size_t count = std::size_t{1} << (2 * n_qubits);
  for (std::size_t k = 0; k < count; ++k) {
    MeasurementSetting s(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
      s[q] = order[(k >> (2 * (n_qubits - 1 - q))) & 3];
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                         const std::vector<MeasurementSetting>& settings,
                                         Shots shots, std::uint64_t seed) {
  if (shots.count < 1) {
    throw std::invalid_argument("simulate_counts: shots must be >= 1");
  }
  std::vector<CountRecord> out;
  out.reserve(settings.size());
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto& s = settings[k];
    if ((std::size_t{1} << s.size()) != rho.dim()) {
      throw std::invalid_argument("simulate_counts: setting does not match state size");
    }
    const double prob =
        std::clamp((projector_matrix(s) * rho.matrix()).trace().real(), 0.0, 1.0);
    CountRecord rec{s, static_cast<double>(shots.count), 0.0};
    if (shots.exact) {
      rec.successes = rec.shots * prob;
    } else {
      CounterRng rng(seed, k);
      std::binomial_distribution<std::uint64_t> dist(shots.count, prob);
      rec.successes = static_cast<double>(dist(rng));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

ComplexMatrix project_to_density(const ComplexMatrix& a) {
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) {
    throw std::invalid_argument("project_to_density: trace must be positive");
  }
  h /= tr;
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  Eigen::VectorXd lambda = eig.eigenvalues();  // ascending
  const Eigen::Index d = lambda.size();
  // Walk up from the smallest eigenvalue, zeroing negatives and spreading
  // their accumulated weight over the larger ones.
  double carry = 0.0;
  Eigen::Index i = 0;
  for (; i < d; ++i) {
    const double remaining = static_cast<double>(d - i);
    if (lambda(i) + carry / remaining < 0.0) {
      carry += lambda(i);
      lambda(i) = 0.0;
    } else {
      break;
    }
  }
  for (Eigen::Index j = i; j < d; ++j) lambda(j) += carry / static_cast<double>(d - i);
  const ComplexMatrix& v = eig.eigenvectors();
  ComplexMatrix out = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  out /= out.trace().real();
  return out;
}

ComplexMatrix linear_inversion(const std::vector<CountRecord>& records,
                               std::size_t n_qubits) {
  require_qubits(n_qubits, "reconstruct_state");
  std::map<std::string, const CountRecord*> by_label;
  for (const auto& r : records) {
    if (r.setting.size() != n_qubits) {
      throw std::invalid_argument("reconstruct_state: setting size mismatch");
    }
    if (r.shots <= 0.0 || r.successes < 0.0 || r.successes > r.shots) {
      throw std::invalid_argument("reconstruct_state: invalid count record");
    }
    by_label[to_string(r.setting)] = &r;
  }
  const auto settings = enumerate_settings(n_qubits);
  Eigen::VectorXd probs(static_cast<Eigen::Index>(settings.size()));
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto it = by_label.find(to_string(settings[k]));
    if (it == by_label.end()) {
      throw std::invalid_argument("reconstruct_state: missing setting " +
                                  to_string(settings[k]));
    }
    probs(static_cast<Eigen::Index>(k)) = it->second->successes / it->second->shots;
  }
  const Eigen::VectorXd coeffs = frame_matrix(n_qubits).partialPivLu().solve(probs);
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    rho += coeffs(j) * pauli_string_matrix(static_cast<std::size_t>(j), n_qubits);
  }
  return rho;
}

DensityMatrix reconstruct_state(const std::vector<CountRecord>& records,
                                std::size_t n_qubits) {
  return DensityMatrix(project_to_density(linear_inversion(records, n_qubits)));
}

ProcessMatrix reconstruct_process(const std::vector<MeasurementSetting>& inputs,
                                  const std::vector<DensityMatrix>& outputs,
                                  std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > 2) {
    throw std::invalid_argument("reconstruct_process: n_qubits must be 1 or 2");
  }
  if (inputs.size() != outputs.size() || inputs.empty()) {
    throw std::invalid_argument("reconstruct_process: one output per input required");
  }
  const auto dim = Eigen::Index{1} << n_qubits;
  const auto basis = pauli_basis(n_qubits);
  const auto n_ops = static_cast<Eigen::Index>(basis.size());
  const auto n_rows = static_cast<Eigen::Index>(inputs.size()) * dim * dim;
  ComplexMatrix a(n_rows, n_ops * n_ops);
  ComplexVector b(n_rows);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k].size() != n_qubits || outputs[k].dim() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("reconstruct_process: size mismatch");
    }
    const ComplexMatrix rho = projector_matrix(inputs[k]);
    const Eigen::Index row0 = static_cast<Eigen::Index>(k) * dim * dim;
    for (Eigen::Index m = 0; m < n_ops; ++m) {
      const ComplexMatrix left = basis[static_cast<std::size_t>(m)] * rho;
      for (Eigen::Index n = 0; n < n_ops; ++n) {
        const ComplexMatrix term = left * basis[static_cast<std::size_t>(n)].adjoint();
        a.col(m * n_ops + n).segment(row0, dim * dim) =
            Eigen::Map<const ComplexVector>(term.data(), dim * dim);
      }
    }
    b.segment(row0, dim * dim) =
        Eigen::Map<const ComplexVector>(outputs[k].matrix().data(), dim * dim);
  }
  const Eigen::ColPivHouseholderQR<ComplexMatrix> qr(a);
  if (qr.rank() < n_ops * n_ops) {
    throw std::invalid_argument("reconstruct_process: input set is rank deficient");
  }
  const ComplexVector x = qr.solve(b);
  ComplexMatrix chi(n_ops, n_ops);
  for (Eigen::Index m = 0; m < n_ops; ++m) {
    for (Eigen::Index n = 0; n < n_ops; ++n) chi(m, n) = x(m * n_ops + n);
  }
  return ProcessMatrix(n_qubits, project_to_density(chi));
}

double state_fidelity(const DensityMatrix& rho_exp, const DensityMatrix& rho_th) {
  return uhlmann_fidelity(rho_th, rho_exp);
}

double process_fidelity(const ProcessMatrix& chi_exp, const ProcessMatrix& chi_ideal) {
  if (chi_exp.n_qubits() != chi_ideal.n_qubits()) {
    throw std::invalid_argument("process_fidelity: dimension mismatch");
  }
  return uhlmann_fidelity(chi_exp.chi(), chi_ideal.chi());
}

double dephasing_residual(const DensityMatrix& rho_th, const DensityMatrix& rho_exp,
                          double p, const BasisMap* basis) {
  if (rho_th.dim() != rho_exp.dim()) {
    throw std::invalid_argument("fit_dephasing_p: dimension mismatch");
  }
  const ComplexMatrix q = dephasing_flip(rho_th.dim(), basis);
  const ComplexMatrix flipped = q * rho_th.matrix() * q.adjoint();
  return ((1.0 - p) * rho_th.matrix() + p * flipped - rho_exp.matrix()).norm();
}

FitResult fit_dephasing_p(const DensityMatrix& rho_th, const DensityMatrix& rho_exp,
                          const BasisMap* basis) {
  return fit_dephasing_p(rho_th, rho_exp.matrix(), basis);
}

FitResult fit_dephasing_p(const DensityMatrix& rho_th, const ComplexMatrix& rho_exp,
                          const BasisMap* basis) {
  if (static_cast<Eigen::Index>(rho_th.dim()) != rho_exp.rows() ||
      rho_exp.rows() != rho_exp.cols()) {
    throw std::invalid_argument("fit_dephasing_p: dimension mismatch");
  }
  if (hermiticity_error(rho_exp) > 1e-8) {
    throw std::invalid_argument("fit_dephasing_p: estimate is not Hermitian");
  }
  const ComplexMatrix q = dephasing_flip(rho_th.dim(), basis);
  const ComplexMatrix base = rho_th.matrix() - rho_exp;
  const ComplexMatrix slope = q * rho_th.matrix() * q.adjoint() - rho_th.matrix();
  auto residual = [&](double p) { return (base + p * slope).norm(); };

  constexpr int kGridSteps = 1000;
  FitResult best{0.0, residual(0.0)};
  for (int k = 1; k <= kGridSteps; ++k) {
    const double p = static_cast<double>(k) / kGridSteps;
    const double r = residual(p);
    if (r < best.residual) best = {p, r};
  }

  // The residual is convex in p, so the minimum lies within one grid step.
  double lo = std::max(0.0, best.p_hat - 1.0 / kGridSteps);
  double hi = std::min(1.0, best.p_hat + 1.0 / kGridSteps);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = residual(x1);
  double f2 = residual(x2);
  while (hi - lo > 1e-6) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = residual(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = residual(x2);
    }
  }
  for (double p : {x1, x2, 0.5 * (lo + hi)}) {
    const double r = residual(p);
    if (r < best.residual) best = {p, r};
  }
  return best;
}

}  // namespace mzm
