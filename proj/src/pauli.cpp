#include "ftpcm/pauli.hpp"

#include <array>

namespace ftpcm {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw std::logic_error("bad Pauli");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

namespace {

// single_product[a][b] = (letter, phase_pow) for a*b, phase as power of i.
// X*Y = iZ, Y*Z = iX, Z*X = iY; reversed order picks up -i.
struct SingleProduct {
  Pauli letter;
  int phase_pow;
};

SingleProduct multiply_single(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  static constexpr std::array<std::array<Pauli, 3>, 3> kLetter = {{
      // a=X:      b=X         b=Y         b=Z
      {{Pauli::I, Pauli::Z, Pauli::Y}},
      // a=Y
      {{Pauli::Z, Pauli::I, Pauli::X}},
      // a=Z
      {{Pauli::Y, Pauli::X, Pauli::I}},
  }};
  static constexpr std::array<std::array<int, 3>, 3> kPhase = {{
      {{0, 1, 3}},
      {{3, 0, 1}},
      {{1, 3, 0}},
  }};
  const int ia = static_cast<int>(a) - 1;
  const int ib = static_cast<int>(b) - 1;
  return {kLetter[ia][ib], kPhase[ia][ib]};
}

}  // namespace

PauliString PauliString::parse(const std::string& text) {
  std::size_t pos = 0;
  int phase_pow = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase_pow = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase_pow += 1;
    ++pos;
  }
  PauliString out(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++q, ++pos) {
    out.at(q) = pauli_from_char(text[pos]);
  }
  out.set_phase_pow(phase_pow);
  return out;
}

std::complex<double> PauliString::phase() const {
  switch (phase_pow_) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

int PauliString::weight() const {
  int w = 0;
  for (Pauli p : letters_) w += (p != Pauli::I);
  return w;
}

bool PauliString::is_identity() const { return weight() == 0; }

bool PauliString::commutes_with(const PauliString& other) const {
  if (size() != other.size()) throw std::invalid_argument("size mismatch");
  int anticommuting = 0;
  for (std::size_t q = 0; q < size(); ++q) {
    const Pauli a = letters_[q];
    const Pauli b = other.letters_[q];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (size() != other.size()) throw std::invalid_argument("size mismatch");
  PauliString out(size());
  int pow = phase_pow_ + other.phase_pow_;
  for (std::size_t q = 0; q < size(); ++q) {
    const auto prod = multiply_single(letters_[q], other.letters_[q]);
    out.letters_[q] = prod.letter;
    pow += prod.phase_pow;
  }
  out.set_phase_pow(pow);
  return out;
}

std::string PauliString::to_string() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase_pow_];
  for (Pauli p : letters_) out += pauli_char(p);
  return out;
}

}  // namespace ftpcm
