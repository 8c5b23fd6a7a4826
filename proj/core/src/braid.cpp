#include "mzm/braid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mzm/kitaev.hpp"

namespace mzm {

namespace {

constexpr std::size_t kChainQubits = 3;

}  // namespace

std::vector<std::size_t> BraidGenerator::participants() const {
  switch (kind) {
    case BraidKind::s1: return {0};
    case BraidKind::s2: return {1};
    case BraidKind::s3: return {1, 2};
    case BraidKind::s4: return {2};
  }
  return {};
}

std::string BraidGenerator::str() const {
  std::string out = "s";
  out += static_cast<char>('1' + static_cast<int>(kind));
  if (orientation == Orientation::counterclockwise) out += '\'';
  return out;
}

BraidWord parse_braid_word(std::string_view text) {
  BraidWord word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const bool ccw = token.size() == 3 && token.back() == '\'';
    if ((token.size() != 2 && !ccw) || (token[0] != 's' && token[0] != 'S') ||
        token[1] < '1' || token[1] > '4') {
      throw std::invalid_argument("parse_braid_word: bad generator '" + token + "'");
    }
    word.push_back({static_cast<BraidKind>(token[1] - '1'),
                    ccw ? Orientation::counterclockwise : Orientation::clockwise});
  }
  return word;
}

std::string format_braid_word(const BraidWord& word) {
  std::string out;
  for (const auto& g : word) {
    if (!out.empty()) out += ' ';
    out += g.str();
  }
  return out;
}

ComplexMatrix intra_exchange() {
  return (ComplexMatrix::Identity(2, 2) - kI * pauli_z()) / std::sqrt(2.0);
}

ComplexMatrix inter_exchange() {
  return (ComplexMatrix::Identity(4, 4) - kI * kron(pauli_x(), pauli_x())) /
         std::sqrt(2.0);
}

ComplexMatrix generator_unitary(const BraidGenerator& g) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix u;
  switch (g.kind) {
    case BraidKind::s1: u = embed(intra_exchange(), 0, kChainQubits); break;
    case BraidKind::s2: u = embed(intra_exchange(), 1, kChainQubits); break;
    case BraidKind::s4: u = embed(intra_exchange(), 2, kChainQubits); break;
    case BraidKind::s3: u = kron(id2, inter_exchange()); break;
  }
  if (g.orientation == Orientation::counterclockwise) u.adjointInPlace();
  return u;
}

ComplexMatrix compose_braid(const BraidWord& word) {
  ComplexMatrix u = ComplexMatrix::Identity(8, 8);
  for (const auto& g : word) u = generator_unitary(g) * u;
  return u;
}

BraidWord cnot_word() {
  using enum BraidKind;
  constexpr auto cw = Orientation::clockwise;
  constexpr auto ccw = Orientation::counterclockwise;
  return {{s1, cw}, {s2, ccw}, {s3, cw}, {s2, cw}, {s4, cw}, {s3, cw}, {s2, ccw}};
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(3, 2) = 1.0;
  c(2, 3) = 1.0;
  return c;
}

LogicalRestriction logical_restriction(const ComplexMatrix& u) {
  if (u.rows() != 8 || u.cols() != 8) {
    throw std::invalid_argument("logical_restriction: expected an 8x8 operator");
  }
  LogicalRestriction out;
  out.block.resize(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out.block(r, c) = u(kEvenSector[r], kEvenSector[c]);
  }
  for (int e : kEvenSector) {
    for (int o : kOddSector) {
      out.leakage_norm = std::max({out.leakage_norm, std::abs(u(e, o)), std::abs(u(o, e))});
    }
  }
  return out;
}

ComplexMatrix odd_sector_block(const ComplexMatrix& u) {
  ComplexMatrix block(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) block(r, c) = u(kOddSector[r], kOddSector[c]);
  }
  return block;
}

}  // namespace mzm
