#include "ftpcm/frame.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ftpcm/circuit.hpp"

namespace ftpcm {

namespace {

constexpr double kPi = std::numbers::pi;

int quarter_turns(double angle) {
  const double q = angle / (kPi / 2.0);
  const double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-9) {
    throw std::invalid_argument("frame gates require angles in multiples of pi/2");
  }
  return ((static_cast<int>(rounded) % 4) + 4) % 4;
}

struct Axis {
  int x = 0, y = 0, z = 0;
};

Axis axis_of(Pauli p) {
  switch (p) {
    case Pauli::X: return {1, 0, 0};
    case Pauli::Y: return {0, 1, 0};
    case Pauli::Z: return {0, 0, 1};
    default: throw std::logic_error("axis of identity");
  }
}

// Conjugation by R(theta, phi) rotates the Bloch axis by +theta about
// n = (cos phi, sin phi, 0). Integer Rodrigues formula, exact for
// quarter-turn angles.
std::pair<Pauli, int> conjugate_by_rotation(Pauli p, int theta_q, int phi_q) {
  static constexpr std::array<int, 4> kCos = {1, 0, -1, 0};
  static constexpr std::array<int, 4> kSin = {0, 1, 0, -1};
  const int c = kCos[theta_q];
  const int s = kSin[theta_q];
  const Axis n{kCos[phi_q], kSin[phi_q], 0};
  const Axis v = axis_of(p);
  const Axis ncv{n.y * v.z - n.z * v.y, n.z * v.x - n.x * v.z, n.x * v.y - n.y * v.x};
  const int ndv = n.x * v.x + n.y * v.y + n.z * v.z;
  const Axis r{v.x * c + ncv.x * s + n.x * ndv * (1 - c),
               v.y * c + ncv.y * s + n.y * ndv * (1 - c),
               v.z * c + ncv.z * s + n.z * ndv * (1 - c)};
  if (r.x != 0 && r.y == 0 && r.z == 0) return {Pauli::X, r.x < 0 ? 2 : 0};
  if (r.y != 0 && r.x == 0 && r.z == 0) return {Pauli::Y, r.y < 0 ? 2 : 0};
  if (r.z != 0 && r.x == 0 && r.y == 0) return {Pauli::Z, r.z < 0 ? 2 : 0};
  throw std::logic_error("rotation did not map axis to axis");
}

}  // namespace

PauliString conjugate(const PauliString& p, const FrameGate& g) {
  const std::size_t n = p.size();
  PauliString result(n);
  result.set_phase_pow(p.phase_pow());

  switch (g.kind) {
    case FrameGate::Kind::ZZHalf: {
      // ZZ(pi/2): Z letters commute; X_a -> -Y_a Z_b, Y_a -> +X_a Z_b.
      for (std::size_t q = 0; q < n; ++q) {
        const Pauli letter = p.at(q);
        if (letter == Pauli::I) continue;
        const bool on_pair = static_cast<int>(q) == g.q1 || static_cast<int>(q) == g.q2;
        if (!on_pair || letter == Pauli::Z) {
          result = result * PauliString(n, q, letter);
          continue;
        }
        const int other = static_cast<int>(q) == g.q1 ? g.q2 : g.q1;
        PauliString piece = letter == Pauli::X ? PauliString(n, q, Pauli::Y, 2)   // -Y_q Z_other
                                               : PauliString(n, q, Pauli::X);    // +X_q Z_other
        piece.at(other) = Pauli::Z;
        result = result * piece;
      }
      return result;
    }
    case FrameGate::Kind::PairEcho: {
      // Conjugation by Y on both qubits: X -> -X, Z -> -Z, Y -> Y.
      for (std::size_t q = 0; q < n; ++q) {
        const Pauli letter = p.at(q);
        if (letter == Pauli::I) continue;
        int sign_pow = 0;
        if ((static_cast<int>(q) == g.q1 || static_cast<int>(q) == g.q2) && letter != Pauli::Y) {
          sign_pow = 2;
        }
        result = result * PauliString(n, q, letter, sign_pow);
      }
      return result;
    }
    case FrameGate::Kind::LocalRot: {
      const int theta_q = quarter_turns(g.theta);
      const int phi_q = quarter_turns(g.phi);
      for (std::size_t q = 0; q < n; ++q) {
        const Pauli letter = p.at(q);
        if (letter == Pauli::I) continue;
        if (static_cast<int>(q) != g.q1) {
          result = result * PauliString(n, q, letter);
          continue;
        }
        const auto [new_letter, sign_pow] = conjugate_by_rotation(letter, theta_q, phi_q);
        result = result * PauliString(n, q, new_letter, sign_pow);
      }
      return result;
    }
  }
  throw std::logic_error("bad frame gate kind");
}

namespace {

// Conjugation through one circuit op. Hardware entangling gates decompose as
// E * ZZ(pi/2) with E the pair echo, so conjugate by ZZHalf first, then echo.
PauliString conjugate_through_op(PauliString p, const CircuitOp& op) {
  switch (op.kind) {
    case CircuitOp::Kind::Entangle: {
      p = conjugate(p, FrameGate{FrameGate::Kind::ZZHalf, op.q1, op.q2});
      if (op.mode == GateMode::Hardware) {
        p = conjugate(p, FrameGate{FrameGate::Kind::PairEcho, op.q1, op.q2});
      }
      return p;
    }
    case CircuitOp::Kind::Rotation:
      return conjugate(p, FrameGate{FrameGate::Kind::LocalRot, op.q1, -1, op.theta, op.phi});
    case CircuitOp::Kind::PairRotation: {
      p = conjugate(p, FrameGate{FrameGate::Kind::LocalRot, op.q1, -1, op.theta, op.phi});
      return conjugate(p, FrameGate{FrameGate::Kind::LocalRot, op.q2, -1, op.theta, op.phi});
    }
    case CircuitOp::Kind::Inject: {
      // Conjugation by a Pauli only toggles the sign.
      if (!op.pauli.commutes_with(p)) p.set_phase_pow(p.phase_pow() + 2);
      return p;
    }
    case CircuitOp::Kind::DephaseExposure:
      return p;
    case CircuitOp::Kind::PrepZero:
    case CircuitOp::Kind::Measure:
      throw std::invalid_argument("cannot propagate a frame through prep/measure");
  }
  throw std::logic_error("bad op kind");
}

}  // namespace

PauliString propagate_to_end(const Circuit& circuit, const InjectionSite& site) {
  if (site.position < 0 ||
      static_cast<std::size_t>(site.position) >= circuit.gate_boundaries.size()) {
    throw std::out_of_range("injection position out of range");
  }
  if (site.error.weight() > 1) {
    throw std::invalid_argument("injected errors must have single-qubit support");
  }
  PauliString p = site.error;
  const std::size_t begin = circuit.gate_boundaries[site.position];
  for (std::size_t idx = begin; idx < circuit.analysis_start; ++idx) {
    p = conjugate_through_op(std::move(p), circuit.ops[idx]);
  }
  return p;
}

ReadoutEffect predict_readout_effect(const PauliString& final_pauli) {
  if (final_pauli.size() != kRegisterSize) {
    throw std::invalid_argument("readout prediction needs the 6-qubit register");
  }
  ReadoutEffect eff;
  const Pauli ps = final_pauli.at(kS);
  const Pauli pf = final_pauli.at(kF);
  eff.syndrome_flip = (ps == Pauli::Z || ps == Pauli::Y);
  eff.flag_flip = (pf == Pauli::Z || pf == Pauli::Y);
  for (int q = kD1; q <= kD4; ++q) {
    const Pauli pd = final_pauli.at(q);
    if (pd == Pauli::Z || pd == Pauli::Y) ++eff.data_z_weight;
  }
  return eff;
}

}  // namespace ftpcm
