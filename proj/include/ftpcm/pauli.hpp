#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftpcm {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Signed multi-qubit Pauli operator. The phase is stored as a power of i,
/// so the full operator is i^phase_pow * (letter_0 ⊗ letter_1 ⊗ ...).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : letters_(n, Pauli::I) {}
  PauliString(std::size_t n, std::size_t qubit, Pauli p, int phase_pow = 0)
      : letters_(n, Pauli::I), phase_pow_(normalize_pow(phase_pow)) {
    at(qubit) = p;
  }

  /// Parses strings like "XIZY" (one letter per qubit, qubit 0 first),
  /// optionally prefixed by "+", "-", "+i", "-i".
  static PauliString parse(const std::string& text);

  std::size_t size() const { return letters_.size(); }
  Pauli& at(std::size_t q) { return letters_.at(q); }
  Pauli at(std::size_t q) const { return letters_.at(q); }
  const std::vector<Pauli>& letters() const { return letters_; }

  int phase_pow() const { return phase_pow_; }
  void set_phase_pow(int p) { phase_pow_ = normalize_pow(p); }
  std::complex<double> phase() const;
  bool is_hermitian() const { return phase_pow_ % 2 == 0; }

  int weight() const;
  bool is_identity() const;

  bool commutes_with(const PauliString& other) const;

  /// Operator product (this * other), with exact phase tracking in {1,i,-1,-i}.
  PauliString operator*(const PauliString& other) const;

  bool operator==(const PauliString& other) const {
    return letters_ == other.letters_ && phase_pow_ == other.phase_pow_;
  }

  /// True when both operators have the same letters, ignoring the phase.
  bool same_letters(const PauliString& other) const { return letters_ == other.letters_; }

  std::string to_string() const;

 private:
  static int normalize_pow(int p) { return ((p % 4) + 4) % 4; }

  std::vector<Pauli> letters_;
  int phase_pow_ = 0;  // operator = i^phase_pow * letters
};

}  // namespace ftpcm
