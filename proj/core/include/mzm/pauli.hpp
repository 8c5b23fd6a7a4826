#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mzm/matrix.hpp"

namespace mzm {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p) noexcept;
ComplexMatrix pauli_matrix(Pauli p);

// Sites are 1-based in rendering and in MajoranaIndex; letters are stored
// 0-based.
using PauliLetters = std::vector<Pauli>;

/// A Pauli string with an exact coefficient scale * i^i_power.
///
/// Keeping the phase as a power of i (rather than a complex double) makes
/// products and commutator-zero checks exact.
class PauliString {
 public:
  explicit PauliString(PauliLetters letters, double scale = 1.0,
                       int i_power = 0);

  static PauliString identity(std::size_t n_sites);
  // Single letter at a 1-based site.
  static PauliString single(Pauli p, std::size_t site, std::size_t n_sites);
  // Parses "X1 Z3" style text (1-based sites, unspecified sites are I).
  static PauliString parse(std::string_view text, std::size_t n_sites);

  std::size_t n_sites() const noexcept { return letters_.size(); }
  const PauliLetters& letters() const noexcept { return letters_; }
  double scale() const noexcept { return scale_; }
  int i_power() const noexcept { return i_power_; }
  Complex coefficient() const noexcept;

  PauliString scaled(double factor, int extra_i_power = 0) const;

  // e.g. "-1 * X1 X2"; the identity renders as "I".
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  PauliLetters letters_;
  double scale_;
  int i_power_;  // in 0..3
};

// Sitewise product with exact phase; throws std::invalid_argument on a
// size mismatch.
PauliString pauli_multiply(const PauliString& p, const PauliString& q);

/// Canonical sum of Pauli strings over a common number of sites.
///
/// Terms with identical letters are merged and exact zeros dropped, so an
/// empty sum is the zero operator. Coefficients are dyadic in practice and
/// accumulate without rounding.
class OperatorSum {
 public:
  struct Term {
    PauliLetters letters;
    Complex coefficient;
  };

  explicit OperatorSum(std::size_t n_sites);
  OperatorSum(const PauliString& p);  // NOLINT: implicit by design of algebra

  std::size_t n_sites() const noexcept { return n_sites_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::vector<Term> terms() const;
  // Largest |coefficient|; 0 for the zero operator.
  double max_coefficient() const;

  OperatorSum& add(const PauliLetters& letters, Complex coefficient);
  OperatorSum& add(const PauliString& p);

  OperatorSum& operator+=(const OperatorSum& other);
  OperatorSum& operator-=(const OperatorSum& other);
  OperatorSum& operator*=(Complex factor);

  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) {
    return a += b;
  }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) {
    return a -= b;
  }
  friend OperatorSum operator*(OperatorSum a, Complex factor) {
    return a *= factor;
  }
  friend OperatorSum operator*(Complex factor, OperatorSum a) {
    return a *= factor;
  }
  friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

  friend bool operator==(const OperatorSum&, const OperatorSum&) = default;

  // One term per line joined by " + ", e.g. "-1 * X1 X2 + -1 * Z4";
  // the zero operator renders as "0".
  std::string str() const;

 private:
  void require_same_size(std::size_t n) const;

  std::size_t n_sites_;
  std::map<PauliLetters, Complex> terms_;
};

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);
OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b);

enum class Flavor : std::uint8_t { a, b };

struct MajoranaIndex {
  int site = 1;  // 1-based
  Flavor flavor = Flavor::a;

  std::string str() const;  // "1a", "11b"
  static MajoranaIndex parse(std::string_view text);

  friend auto operator<=>(const MajoranaIndex&, const MajoranaIndex&) = default;
};

// Jordan-Wigner image: a -> Z_1..Z_{j-1} X_j, b -> Z_1..Z_{j-1} Y_j.
PauliString jw_majorana(MajoranaIndex idx, std::size_t n_sites);

// All 2n Majorana indices in order 1a, 1b, 2a, ...
std::vector<MajoranaIndex> all_majoranas(std::size_t n_sites);

// Dense matrix, site 1 most significant. Throws past 11 sites.
ComplexMatrix to_dense(const OperatorSum& a);
ComplexMatrix to_dense(const PauliString& p);

}  // namespace mzm
