#include "mzm/kitaev.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mzm {

namespace {

constexpr double kLeakageFloor = 1e-14;

OperatorSum majorana_product(MajoranaIndex l, MajoranaIndex m, std::size_t n) {
  // i * gamma_l * gamma_m
  return OperatorSum(pauli_multiply(jw_majorana(l, n), jw_majorana(m, n)).scaled(1.0, 1));
}

}  // namespace

void ChainLayout::validate() const {
  std::set<int> seen;
  auto take = [&seen](int site) {
    if (site < 1 || site > static_cast<int>(kSites) || !seen.insert(site).second) {
      throw std::invalid_argument("ChainLayout: sites must be disjoint within 1..11");
    }
  };
  for (const auto& chain : chain_sites) {
    for (int s : chain) take(s);
  }
  for (int s : connector_sites) take(s);
  if (seen.size() != kSites) {
    throw std::invalid_argument("ChainLayout: sites must cover 1..11");
  }
}

OperatorSum build_hamiltonian(const ChainLayout& layout) {
  layout.validate();
  constexpr std::size_t n = ChainLayout::kSites;
  OperatorSum h(n);
  for (const auto& chain : layout.chain_sites) {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      h += majorana_product({chain[k], Flavor::b}, {chain[k + 1], Flavor::a}, n);
    }
  }
  for (int site : layout.connector_sites) {
    h += majorana_product({site, Flavor::a}, {site, Flavor::b}, n);
  }
  return h;
}

std::vector<MajoranaIndex> endpoint_zero_modes(const ChainLayout& layout) {
  std::vector<MajoranaIndex> modes;
  for (const auto& chain : layout.chain_sites) {
    modes.push_back({chain.front(), Flavor::a});
    modes.push_back({chain.back(), Flavor::b});
  }
  return modes;
}

std::map<MajoranaIndex, OperatorSum> zero_mode_residuals(const OperatorSum& h) {
  if (h.n_sites() != ChainLayout::kSites) {
    throw std::invalid_argument("zero_mode_residuals: expected an 11-site operator");
  }
  std::map<MajoranaIndex, OperatorSum> out;
  for (const MajoranaIndex& idx : all_majoranas(h.n_sites())) {
    out.emplace(idx, commutator(h, OperatorSum(jw_majorana(idx, h.n_sites()))));
  }
  return out;
}

OperatorSum chain_hamiltonian() {
  constexpr std::size_t n = 3;
  return majorana_product({1, Flavor::b}, {2, Flavor::a}, n) +
         majorana_product({2, Flavor::b}, {3, Flavor::a}, n);
}

std::pair<StateVector, StateVector> chain_ground_states(int chain) {
  if (chain < 1 || chain > 3) {
    throw std::out_of_range("chain_ground_states: chain must be 1, 2 or 3");
  }
  // (|xxx> + |x̄x̄x̄>)/sqrt2 is the even-weight z-basis superposition and
  // (|xxx> - |x̄x̄x̄>)/sqrt2 the odd-weight one.
  ComplexVector even = ComplexVector::Zero(8);
  ComplexVector odd = ComplexVector::Zero(8);
  for (unsigned b = 0; b < 8; ++b) {
    (std::popcount(b) % 2 == 0 ? even : odd)(b) = 0.5;
  }
  if (chain == 1) return {StateVector(even), StateVector(odd)};
  return {StateVector(odd), StateVector(even)};
}

LogicalState::LogicalState(StateVector state) : state_(std::move(state)) {
  if (state_.dim() != 4) {
    throw std::invalid_argument("LogicalState: expected 4 amplitudes");
  }
}

LogicalState LogicalState::basis(std::size_t index) {
  return LogicalState(StateVector::basis(4, index));
}

ChainBasisState::ChainBasisState(StateVector state) : state_(std::move(state)) {
  if (state_.dim() != 8) {
    throw std::invalid_argument("ChainBasisState: expected 8 amplitudes");
  }
}

ChainBasisState ChainBasisState::basis(std::size_t index) {
  return ChainBasisState(StateVector::basis(8, index));
}

ComplexMatrix encoding_isometry() {
  ComplexMatrix e = ComplexMatrix::Zero(8, 4);
  for (int k = 0; k < 4; ++k) e(kEvenSector[k], k) = 1.0;
  return e;
}

ChainBasisState encode_logical(const LogicalState& l) {
  return ChainBasisState(StateVector(encoding_isometry() * l.state().amplitudes()));
}

DecodedLogical decode_logical(const ChainBasisState& s) {
  ComplexVector even(4);
  for (int k = 0; k < 4; ++k) even(k) = s.state()[kEvenSector[k]];
  const double weight = even.squaredNorm();
  DecodedLogical out;
  out.leakage = std::clamp(1.0 - weight, 0.0, 1.0);
  if (weight > kLeakageFloor) out.state = LogicalState(StateVector(even));
  else out.leakage = 1.0;
  return out;
}

ComplexMatrix project_even_sector(const ComplexMatrix& rho8, double* weight) {
  ComplexMatrix block(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) block(r, c) = rho8(kEvenSector[r], kEvenSector[c]);
  }
  const double w = block.trace().real();
  if (weight != nullptr) *weight = w;
  if (w > kLeakageFloor) block /= w;
  return block;
}

DecodedDensity decode_logical(const DensityMatrix& rho) {
  if (rho.dim() != 8) {
    throw std::invalid_argument("decode_logical: expected an 8x8 density matrix");
  }
  double weight = 0.0;
  const ComplexMatrix block = project_even_sector(rho.matrix(), &weight);
  DecodedDensity out;
  out.leakage = std::clamp(1.0 - weight, 0.0, 1.0);
  if (weight > kLeakageFloor) out.state = DensityMatrix(block);
  else out.leakage = 1.0;
  return out;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::even: return "+1";
    case Parity::odd: return "-1";
    case Parity::mixed: return "mixed";
  }
  return "?";
}

ComplexMatrix parity_operator(std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    p(b, b) = std::popcount(static_cast<unsigned long>(b)) % 2 == 0 ? 1.0 : -1.0;
  }
  return p;
}

Parity parity_of(const ChainBasisState& s) {
  const ComplexVector& v = s.state().amplitudes();
  const ComplexVector pv = parity_operator(3) * v;
  if ((pv - v).norm() <= 1e-10) return Parity::even;
  if ((pv + v).norm() <= 1e-10) return Parity::odd;
  return Parity::mixed;
}

StateVector full_ground_state(const ChainBasisState& s) {
  std::array<std::pair<StateVector, StateVector>, 3> labels{
      chain_ground_states(1), chain_ground_states(2), chain_ground_states(3)};
  ComplexMatrix zero = ComplexMatrix::Zero(2, 1);
  zero(0, 0) = 1.0;
  ComplexVector full = ComplexVector::Zero(Eigen::Index{1} << ChainLayout::kSites);
  for (int q = 0; q < 8; ++q) {
    const Complex amp = s.state()[static_cast<std::size_t>(q)];
    if (amp == Complex{}) continue;
    auto label = [&](int chain) -> const ComplexVector& {
      const bool one = (q >> (2 - chain)) & 1;
      const auto& pair = labels[static_cast<std::size_t>(chain)];
      return one ? pair.second.amplitudes() : pair.first.amplitudes();
    };
    const ComplexMatrix term = kron_all({label(0), zero, label(1), zero, label(2)});
    full += amp * term.col(0);
  }
  return StateVector(std::move(full));
}

BasisMap::BasisMap(ComplexMatrix unitary, std::string name)
    : m_(std::move(unitary)), name_(std::move(name)) {
  if (!is_unitary(m_, 1e-10)) {
    throw std::invalid_argument("BasisMap: matrix is not unitary");
  }
}

BasisMap BasisMap::identity(std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  return BasisMap(ComplexMatrix::Identity(dim, dim), "identity");
}

BasisMap BasisMap::hadamard(std::size_t n_qubits) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (std::size_t q = 0; q < n_qubits; ++q) m = kron(m, mzm::hadamard());
  return BasisMap(std::move(m), "hadamard");
}

BasisMap BasisMap::from_table(const std::vector<std::size_t>& permutation,
                              const std::vector<Complex>& phases) {
  const std::size_t dim = permutation.size();
  if (phases.size() != dim || dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("BasisMap::from_table: sizes must match and be 2^n");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  std::vector<bool> hit(dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    if (permutation[i] >= dim || hit[permutation[i]]) {
      throw std::invalid_argument("BasisMap::from_table: not a permutation");
    }
    if (std::abs(std::abs(phases[i]) - 1.0) > 1e-12) {
      throw std::invalid_argument("BasisMap::from_table: phase must have unit modulus");
    }
    hit[permutation[i]] = true;
    m(static_cast<Eigen::Index>(permutation[i]), static_cast<Eigen::Index>(i)) = phases[i];
  }
  return BasisMap(std::move(m), "table");
}

BasisMap BasisMap::named(const std::string& name, std::size_t n_qubits) {
  if (name == "identity") return identity(n_qubits);
  if (name == "hadamard") return hadamard(n_qubits);
  throw std::invalid_argument("BasisMap: unknown map '" + name + "'");
}

ComplexMatrix BasisMap::to_measurement(const ComplexMatrix& rho) const {
  return m_ * rho * m_.adjoint();
}

ComplexMatrix BasisMap::to_chain(const ComplexMatrix& rho) const {
  return m_.adjoint() * rho * m_;
}

}  // namespace mzm
