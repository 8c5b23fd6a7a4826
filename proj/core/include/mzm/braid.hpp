#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mzm/matrix.hpp"

namespace mzm {

// s1: A-B exchange on chain 1, s2: C-D on chain 2, s3: D-E between chains
// 2 and 3, s4: E-F on chain 3.
enum class BraidKind { s1, s2, s3, s4 };
enum class Orientation { clockwise, counterclockwise };

struct BraidGenerator {
  BraidKind kind = BraidKind::s1;
  Orientation orientation = Orientation::clockwise;

  // Chain qubits (0-based) the exchange acts on.
  std::vector<std::size_t> participants() const;
  bool is_intra_chain() const noexcept { return kind != BraidKind::s3; }
  // "s2" or "s2'" (apostrophe = counterclockwise).
  std::string str() const;

  friend bool operator==(const BraidGenerator&, const BraidGenerator&) = default;
};

// Applied left to right: the first generator acts on the state first.
using BraidWord = std::vector<BraidGenerator>;

BraidWord parse_braid_word(std::string_view text);
std::string format_braid_word(const BraidWord& word);

// 2x2 (1 - iZ)/sqrt2 and 4x4 (II - iXX)/sqrt2, the clockwise exchanges in
// their own qubit space.
ComplexMatrix intra_exchange();
ComplexMatrix inter_exchange();

// 8x8 chain-basis unitary. Clockwise is (1 - iP)/sqrt2 for the exchange's
// Pauli reflection P; counterclockwise is its inverse.
ComplexMatrix generator_unitary(const BraidGenerator& g);

// Ordered product, last generator leftmost.
ComplexMatrix compose_braid(const BraidWord& word);

// s1, s2', s3, s2, s4, s3, s2' in application order.
BraidWord cnot_word();

// Logical CNOT, first logical qubit controls the second.
ComplexMatrix cnot_matrix();

struct LogicalRestriction {
  ComplexMatrix block;        // 4x4 on the even sector, logical order
  double leakage_norm = 0.0;  // largest |entry| coupling even and odd sectors
};
LogicalRestriction logical_restriction(const ComplexMatrix& u);

// Odd-sector block of an 8x8 operator in index order |001>,|010>,|100>,|111>.
ComplexMatrix odd_sector_block(const ComplexMatrix& u);

}  // namespace mzm
