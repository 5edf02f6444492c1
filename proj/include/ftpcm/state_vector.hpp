#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "ftpcm/pauli.hpp"

namespace ftpcm {

using Rng = std::mt19937_64;

enum class MeasBasis : std::uint8_t { Z = 0, X, Y };

enum class GateMode : std::uint8_t { Ideal, Hardware };

/// Exact state-vector register for up to 8 qubits. Qubit 0 is the least
/// significant bit of the basis-state index.
class StateVector {
 public:
  static constexpr int kMaxQubits = 8;

  explicit StateVector(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double>& amp(std::size_t i) { return amps_[i]; }
  std::complex<double> amp(std::size_t i) const { return amps_[i]; }

  void set_basis_state(std::size_t index);

  double norm() const;
  void renormalize();

  /// exp[-i(theta/2)(cos(phi) X_q + sin(phi) Y_q)]
  void apply_local_rotation(int q, double theta, double phi);

  /// Simultaneous rotation of two commonly confined ions: the generator is
  /// the tensor sum, so this equals the product of two local rotations.
  void apply_pairwise_rotation(int q1, int q2, double theta, double phi);

  /// exp[(i/2) Phi Z_i Z_j]
  void apply_zz(int i, int j, double phi_angle);

  /// Ideal mode: ZZ(pi/2). Hardware mode: ZZ(pi/4) R_pair(pi,-pi/2) ZZ(pi/4),
  /// which equals -(Y_i Y_j) ZZ(pi/2).
  void apply_entangling_gate(int i, int j, GateMode mode);

  /// Applies a phase rotation exp[-i(alpha/2) Z_q] (virtual-Z style frame).
  void apply_rz(int q, double alpha);

  void apply_pauli(const PauliString& p);

  /// Projective measurement. X (Y) basis first applies the analysis rotation
  /// R(pi/2,-pi/2) (R(pi/2,0)) and then reads out in Z. Outcome +1 maps to
  /// |0> ('dark'), -1 to |1> ('bright'). The state collapses and renormalizes.
  int measure_qubit(int q, MeasBasis basis, Rng& rng);

  /// <psi|P|psi> for Hermitian P (phase +/-1); throws on phase +/-i.
  double expectation_pauli(const PauliString& p) const;

  /// Measures every qubit once, in qubit order, each in its given basis.
  std::vector<int> sample_bitstring(const std::vector<MeasBasis>& bases, Rng& rng);

  /// |<this|other>|
  double overlap_magnitude(const StateVector& other) const;

  /// Equality up to a global phase, max-amplitude tolerance tol.
  bool equals_up_to_global_phase(const StateVector& other, double tol = 1e-10) const;

 private:
  void apply_single_qubit_matrix(int q, const std::complex<double> m[2][2]);
  void check_qubit(int q) const;

  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

}  // namespace ftpcm
