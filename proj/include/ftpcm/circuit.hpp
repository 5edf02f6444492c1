#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ftpcm/pauli.hpp"
#include "ftpcm/state_vector.hpp"

namespace ftpcm {

/// Fixed qubit assignment for the six-ion register.
inline constexpr int kD1 = 0;
inline constexpr int kD2 = 1;
inline constexpr int kD3 = 2;
inline constexpr int kD4 = 3;
inline constexpr int kS = 4;
inline constexpr int kF = 5;
inline constexpr int kRegisterSize = 6;

std::string qubit_name(int q);
int qubit_from_name(const std::string& name);

struct CircuitOp {
  enum class Kind : std::uint8_t {
    PrepZero,         // reset the whole register to |0...0>
    Rotation,         // R(theta, phi) on q1
    PairRotation,     // R(theta, phi) on both q1 and q2 (commonly confined)
    Entangle,         // entangling gate on (q1, q2) in the given mode
    Inject,           // deliberate Pauli error
    DephaseExposure,  // noise hook: idle-dephasing exposure point for q1
    Measure,          // projective readout of q1 in the given basis
  };

  Kind kind;
  int q1 = -1;
  int q2 = -1;
  double theta = 0.0;
  double phi = 0.0;
  GateMode mode = GateMode::Ideal;
  PauliString pauli;            // Inject only
  MeasBasis basis = MeasBasis::Z;  // Measure only

  static CircuitOp prep_zero();
  static CircuitOp rotation(int q, double theta, double phi);
  static CircuitOp pair_rotation(int q1, int q2, double theta, double phi);
  static CircuitOp entangle(int q1, int q2, GateMode mode);
  static CircuitOp inject(PauliString p);
  static CircuitOp dephase_exposure(int q);
  static CircuitOp measure(int q, MeasBasis basis);
};

/// Ordered operation list plus the bookkeeping needed for error injection:
/// gate_boundaries[k] is the op index of inter-gate position k (position 0 is
/// before the first composite gate), and analysis_start marks where the final
/// analysis rotations begin.
class Circuit {
 public:
  int num_qubits = kRegisterSize;
  std::vector<CircuitOp> ops;
  std::vector<std::size_t> gate_boundaries;
  std::size_t analysis_start = 0;
  std::vector<MeasBasis> reported_bases = std::vector<MeasBasis>(kRegisterSize, MeasBasis::Z);

  std::size_t num_injection_sites() const { return gate_boundaries.size(); }

  std::string to_json() const;
  static Circuit from_json(const std::string& text);
};

}  // namespace ftpcm
