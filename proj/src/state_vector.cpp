#include "ftpcm/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftpcm {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("num_qubits must be in [1, 8]");
  }
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::set_basis_state(std::size_t index) {
  if (index >= dim()) throw std::out_of_range("basis index");
  amps_.assign(dim(), cplx{0.0, 0.0});
  amps_[index] = 1.0;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::renormalize() {
  const double n = norm();
  if (n <= 0.0) throw std::runtime_error("cannot renormalize zero state");
  for (auto& a : amps_) a /= n;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) throw std::out_of_range("qubit index out of range");
}

void StateVector::apply_single_qubit_matrix(int q, const cplx m[2][2]) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim(); base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const cplx a0 = amps_[i0];
      const cplx a1 = amps_[i1];
      amps_[i0] = m[0][0] * a0 + m[0][1] * a1;
      amps_[i1] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

void StateVector::apply_local_rotation(int q, double theta, double phi) {
  check_qubit(q);
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("rotation angles must be finite");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cplx mi{0.0, -1.0};
  const cplx m[2][2] = {
      {cplx{c, 0.0}, mi * s * std::exp(cplx{0.0, -phi})},
      {mi * s * std::exp(cplx{0.0, phi}), cplx{c, 0.0}},
  };
  apply_single_qubit_matrix(q, m);
}

void StateVector::apply_pairwise_rotation(int q1, int q2, double theta, double phi) {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw std::invalid_argument("pairwise rotation needs distinct qubits");
  // Tensor-sum generator: the two single-qubit generators commute, so the
  // exponential factors into two local rotations.
  apply_local_rotation(q1, theta, phi);
  apply_local_rotation(q2, theta, phi);
}

void StateVector::apply_zz(int i, int j, double phi_angle) {
  check_qubit(i);
  check_qubit(j);
  if (i == j) throw std::invalid_argument("zz needs distinct qubits");
  const cplx even = std::exp(cplx{0.0, phi_angle / 2.0});
  const cplx odd = std::exp(cplx{0.0, -phi_angle / 2.0});
  const std::size_t bi = std::size_t{1} << i;
  const std::size_t bj = std::size_t{1} << j;
  for (std::size_t k = 0; k < dim(); ++k) {
    const bool parity = ((k & bi) != 0) != ((k & bj) != 0);
    amps_[k] *= parity ? odd : even;
  }
}

void StateVector::apply_entangling_gate(int i, int j, GateMode mode) {
  if (mode == GateMode::Ideal) {
    apply_zz(i, j, kPi / 2.0);
    return;
  }
  apply_zz(i, j, kPi / 4.0);
  apply_pairwise_rotation(i, j, kPi, -kPi / 2.0);
  apply_zz(i, j, kPi / 4.0);
}

void StateVector::apply_rz(int q, double alpha) {
  check_qubit(q);
  const cplx p0 = std::exp(cplx{0.0, -alpha / 2.0});
  const cplx p1 = std::exp(cplx{0.0, alpha / 2.0});
  const std::size_t bq = std::size_t{1} << q;
  for (std::size_t k = 0; k < dim(); ++k) {
    amps_[k] *= (k & bq) ? p1 : p0;
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.size() != static_cast<std::size_t>(num_qubits_)) {
    throw std::invalid_argument("PauliString size mismatch");
  }
  std::vector<cplx> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    std::size_t target = k;
    cplx factor = p.phase();
    for (int q = 0; q < num_qubits_; ++q) {
      const std::size_t bq = std::size_t{1} << q;
      const bool bit = (k & bq) != 0;
      switch (p.at(q)) {
        case Pauli::I:
          break;
        case Pauli::X:
          target ^= bq;
          break;
        case Pauli::Y:
          target ^= bq;
          factor *= bit ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
          break;
        case Pauli::Z:
          if (bit) factor = -factor;
          break;
      }
    }
    out[target] += factor * amps_[k];
  }
  amps_ = std::move(out);
}

int StateVector::measure_qubit(int q, MeasBasis basis, Rng& rng) {
  check_qubit(q);
  if (basis == MeasBasis::X) {
    apply_local_rotation(q, kPi / 2.0, -kPi / 2.0);
  } else if (basis == MeasBasis::Y) {
    apply_local_rotation(q, kPi / 2.0, 0.0);
  }
  const std::size_t bq = std::size_t{1} << q;
  double p1 = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (k & bq) p1 += std::norm(amps_[k]);
  }
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const bool got_one = uni(rng) < p1;
  const double keep_prob = got_one ? p1 : 1.0 - p1;
  if (keep_prob <= 0.0) throw std::runtime_error("measurement selected a zero-norm branch");
  const double scale = 1.0 / std::sqrt(keep_prob);
  for (std::size_t k = 0; k < dim(); ++k) {
    if (((k & bq) != 0) == got_one) {
      amps_[k] *= scale;
    } else {
      amps_[k] = 0.0;
    }
  }
  return got_one ? -1 : +1;  // dark |0> -> +1, bright |1> -> -1
}

double StateVector::expectation_pauli(const PauliString& p) const {
  if (p.size() != static_cast<std::size_t>(num_qubits_)) {
    throw std::invalid_argument("PauliString size mismatch");
  }
  if (!p.is_hermitian()) throw std::invalid_argument("expectation of non-Hermitian phase");
  StateVector tmp = *this;
  tmp.apply_pauli(p);
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < dim(); ++k) acc += std::conj(amps_[k]) * tmp.amps_[k];
  return acc.real();
}

std::vector<int> StateVector::sample_bitstring(const std::vector<MeasBasis>& bases, Rng& rng) {
  if (bases.size() != static_cast<std::size_t>(num_qubits_)) {
    throw std::invalid_argument("need one basis per qubit");
  }
  std::vector<int> out(num_qubits_);
  for (int q = 0; q < num_qubits_; ++q) {
    out[q] = measure_qubit(q, bases[q], rng);
  }
  return out;
}

double StateVector::overlap_magnitude(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("size mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < dim(); ++k) acc += std::conj(amps_[k]) * other.amps_[k];
  return std::abs(acc);
}

bool StateVector::equals_up_to_global_phase(const StateVector& other, double tol) const {
  return std::abs(overlap_magnitude(other) - 1.0) < tol;
}

}  // namespace ftpcm
