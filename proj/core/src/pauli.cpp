#include "mzm/pauli.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mzm {

namespace {

// i^k for k in 0..3, exact.
Complex rotate(Complex c, int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return c;
    case 1: return {-c.imag(), c.real()};
    case 2: return {-c.real(), -c.imag()};
    default: return {c.imag(), -c.real()};
  }
}

struct SiteProduct {
  Pauli letter;
  int i_power;
};

// XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
SiteProduct multiply_site(Pauli a, Pauli b) {
  const auto ua = static_cast<unsigned>(a);
  const auto ub = static_cast<unsigned>(b);
  const auto letter = static_cast<Pauli>(ua ^ ub);
  if (ua == 0 || ub == 0 || ua == ub) return {letter, 0};
  const int step = ((static_cast<int>(ub) - static_cast<int>(ua)) % 3 + 3) % 3;
  return {letter, step == 1 ? 1 : 3};
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  if (c.real() == 0.0) {
    if (c.imag() == 1.0) return "i";
    if (c.imag() == -1.0) return "-i";
    return format_real(c.imag()) + "i";
  }
  return "(" + format_real(c.real()) + (c.imag() < 0 ? "" : "+") +
         format_real(c.imag()) + "i)";
}

std::string format_letters(const PauliLetters& letters) {
  std::string out;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (letters[k] == Pauli::I) continue;
    if (!out.empty()) out += ' ';
    out += to_char(letters[k]);
    out += std::to_string(k + 1);
  }
  return out.empty() ? "I" : out;
}

}  // namespace

char to_char(Pauli p) noexcept {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

ComplexMatrix pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::X: return pauli_x();
    case Pauli::Y: return pauli_y();
    case Pauli::Z: return pauli_z();
    case Pauli::I: break;
  }
  return ComplexMatrix::Identity(2, 2);
}

PauliString::PauliString(PauliLetters letters, double scale, int i_power)
    : letters_(std::move(letters)),
      scale_(scale),
      i_power_(((i_power % 4) + 4) % 4) {
  if (scale_ == 0.0) {
    throw std::invalid_argument("PauliString: coefficient must be nonzero");
  }
}

PauliString PauliString::identity(std::size_t n_sites) {
  return PauliString(PauliLetters(n_sites, Pauli::I));
}

PauliString PauliString::single(Pauli p, std::size_t site, std::size_t n_sites) {
  if (site < 1 || site > n_sites) {
    throw std::out_of_range("PauliString::single: site out of range");
  }
  PauliLetters letters(n_sites, Pauli::I);
  letters[site - 1] = p;
  return PauliString(std::move(letters));
}

PauliString PauliString::parse(std::string_view text, std::size_t n_sites) {
  PauliLetters letters(n_sites, Pauli::I);
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token.size() < 2) {
      throw std::invalid_argument("PauliString::parse: bad token '" + token + "'");
    }
    Pauli p;
    switch (std::toupper(static_cast<unsigned char>(token[0]))) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw std::invalid_argument("PauliString::parse: bad letter '" + token + "'");
    }
    const std::size_t site = std::stoul(token.substr(1));
    if (site < 1 || site > n_sites) {
      throw std::out_of_range("PauliString::parse: site out of range");
    }
    letters[site - 1] = p;
  }
  return PauliString(std::move(letters));
}

Complex PauliString::coefficient() const noexcept {
  return rotate(Complex(scale_, 0.0), i_power_);
}

PauliString PauliString::scaled(double factor, int extra_i_power) const {
  return PauliString(letters_, scale_ * factor, i_power_ + extra_i_power);
}

std::string PauliString::str() const {
  return format_coefficient(coefficient()) + " * " + format_letters(letters_);
}

PauliString pauli_multiply(const PauliString& p, const PauliString& q) {
  if (p.n_sites() != q.n_sites()) {
    throw std::invalid_argument("pauli_multiply: size mismatch");
  }
  PauliLetters letters(p.n_sites());
  int power = p.i_power() + q.i_power();
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const SiteProduct s = multiply_site(p.letters()[k], q.letters()[k]);
    letters[k] = s.letter;
    power += s.i_power;
  }
  return PauliString(std::move(letters), p.scale() * q.scale(), power);
}

OperatorSum::OperatorSum(std::size_t n_sites) : n_sites_(n_sites) {}

OperatorSum::OperatorSum(const PauliString& p) : n_sites_(p.n_sites()) {
  add(p);
}

void OperatorSum::require_same_size(std::size_t n) const {
  if (n != n_sites_) {
    throw std::invalid_argument("OperatorSum: size mismatch");
  }
}

std::vector<OperatorSum::Term> OperatorSum::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [letters, c] : terms_) out.push_back({letters, c});
  return out;
}

double OperatorSum::max_coefficient() const {
  double m = 0.0;
  for (const auto& [letters, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

OperatorSum& OperatorSum::add(const PauliLetters& letters, Complex coefficient) {
  require_same_size(letters.size());
  if (coefficient == Complex{}) return *this;
  auto [it, inserted] = terms_.try_emplace(letters, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex{}) terms_.erase(it);
  }
  return *this;
}

OperatorSum& OperatorSum::add(const PauliString& p) {
  return add(p.letters(), p.coefficient());
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
  require_same_size(other.n_sites_);
  for (const auto& [letters, c] : other.terms_) add(letters, c);
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) {
  require_same_size(other.n_sites_);
  for (const auto& [letters, c] : other.terms_) add(letters, -c);
  return *this;
}

OperatorSum& OperatorSum::operator*=(Complex factor) {
  if (factor == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [letters, c] : terms_) c *= factor;
  return *this;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  a.require_same_size(b.n_sites_);
  OperatorSum out(a.n_sites_);
  PauliLetters letters(a.n_sites_);
  for (const auto& [la, ca] : a.terms_) {
    for (const auto& [lb, cb] : b.terms_) {
      int power = 0;
      for (std::size_t k = 0; k < letters.size(); ++k) {
        const SiteProduct s = multiply_site(la[k], lb[k]);
        letters[k] = s.letter;
        power += s.i_power;
      }
      out.add(letters, rotate(ca * cb, power));
    }
  }
  return out;
}

std::string OperatorSum::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [letters, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += format_coefficient(c) + " * " + format_letters(letters);
  }
  return out;
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
  return a * b - b * a;
}

OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b) {
  return a * b + b * a;
}

std::string MajoranaIndex::str() const {
  return std::to_string(site) + (flavor == Flavor::a ? "a" : "b");
}

MajoranaIndex MajoranaIndex::parse(std::string_view text) {
  if (text.size() < 2) {
    throw std::invalid_argument("MajoranaIndex::parse: '" + std::string(text) + "'");
  }
  const char f = text.back();
  if (f != 'a' && f != 'b') {
    throw std::invalid_argument("MajoranaIndex::parse: flavor must be a or b");
  }
  const std::string digits(text.substr(0, text.size() - 1));
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("MajoranaIndex::parse: bad site");
    }
  }
  return {std::stoi(digits), f == 'a' ? Flavor::a : Flavor::b};
}

PauliString jw_majorana(MajoranaIndex idx, std::size_t n_sites) {
  if (idx.site < 1 || static_cast<std::size_t>(idx.site) > n_sites) {
    throw std::out_of_range("jw_majorana: site " + std::to_string(idx.site) +
                            " outside 1.." + std::to_string(n_sites));
  }
  PauliLetters letters(n_sites, Pauli::I);
  const auto j = static_cast<std::size_t>(idx.site - 1);
  for (std::size_t k = 0; k < j; ++k) letters[k] = Pauli::Z;
  letters[j] = idx.flavor == Flavor::a ? Pauli::X : Pauli::Y;
  return PauliString(std::move(letters));
}

std::vector<MajoranaIndex> all_majoranas(std::size_t n_sites) {
  std::vector<MajoranaIndex> out;
  for (std::size_t j = 1; j <= n_sites; ++j) {
    out.push_back({static_cast<int>(j), Flavor::a});
    out.push_back({static_cast<int>(j), Flavor::b});
  }
  return out;
}

ComplexMatrix to_dense(const OperatorSum& a) {
  const std::size_t n = a.n_sites();
  if (n > 11) {
    throw std::invalid_argument("to_dense: at most 11 sites supported");
  }
  const auto dim = Eigen::Index{1} << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : a.terms()) {
    // Each Pauli string is a signed permutation: column b maps to row
    // b ^ flip_mask with a per-column phase.
    Eigen::Index flip_mask = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Pauli p = term.letters[k];
      if (p == Pauli::X || p == Pauli::Y) flip_mask |= Eigen::Index{1} << (n - 1 - k);
    }
    for (Eigen::Index col = 0; col < dim; ++col) {
      int power = 0;
      bool negative = false;
      for (std::size_t k = 0; k < n; ++k) {
        const bool bit = (col >> (n - 1 - k)) & 1;
        switch (term.letters[k]) {
          case Pauli::Y: power += bit ? 3 : 1; break;
          case Pauli::Z: negative ^= bit; break;
          default: break;
        }
      }
      Complex c = rotate(term.coefficient, power);
      if (negative) c = -c;
      out(col ^ flip_mask, col) += c;
    }
  }
  return out;
}

ComplexMatrix to_dense(const PauliString& p) { return to_dense(OperatorSum(p)); }

}  // namespace mzm
