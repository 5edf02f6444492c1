#pragma once

#include <cstddef>
#include <vector>

#include "ftpcm/pauli.hpp"

namespace ftpcm {

class Circuit;

/// Clifford gate inventory for symbolic frame propagation.
struct FrameGate {
  enum class Kind : std::uint8_t {
    ZZHalf,    // ZZ(pi/2) on a pair
    LocalRot,  // R(theta, phi), theta multiple of pi/2, phi multiple of pi/2
    PairEcho,  // R(pi, -pi/2) applied to both qubits of a pair
  };
  Kind kind;
  int q1 = -1;
  int q2 = -1;          // unused for LocalRot
  double theta = 0.0;   // LocalRot only
  double phi = 0.0;     // LocalRot only
};

struct InjectionSite {
  int position = 0;  // inter-gate index, 0 = before the first composite gate
  PauliString error;  // single-qubit support
};

struct ReadoutEffect {
  bool syndrome_flip = false;  // final letter on s anticommutes with X_s
  bool flag_flip = false;      // final letter on f anticommutes with X_f
  int data_z_weight = 0;       // data letters in {Z, Y}
};

/// g * P * g^dagger with exact phase tracking in {+1, -1, +i, -i}.
/// Throws if the gate is not Clifford (non-quarter-turn angles).
PauliString conjugate(const PauliString& p, const FrameGate& g);

/// Propagates the injected error through the circuit suffix (everything after
/// the injection site up to, but excluding, the analysis rotations), i.e.
/// returns E' with E' U = U E for the suffix U.
PauliString propagate_to_end(const Circuit& circuit, const InjectionSite& site);

/// Maps a final 6-qubit Pauli to its effect on the X-basis readout of the
/// syndrome/flag qubits and the Z-error weight picked up by the data qubits.
ReadoutEffect predict_readout_effect(const PauliString& final_pauli);

}  // namespace ftpcm
