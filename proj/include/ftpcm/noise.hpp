#pragma once

#include <array>
#include <string>

#include "ftpcm/circuit.hpp"
#include "ftpcm/state_vector.hpp"

namespace ftpcm {

struct SpamRates {
  double p_dark_err = 0.0;    // probability a 'dark' (+1) result reads bright
  double p_bright_err = 0.0;  // probability a 'bright' (-1) result reads dark
};

/// Two-qubit gate infidelity models. Depolarizing is the default; the
/// overrotation mode instead samples a Gaussian excess phase on the ZZ gate.
enum class TwoQubitNoiseModel : std::uint8_t { Depolarizing, ZZOverrotation };

struct NoiseParams {
  double p2 = 0.0;       // two-qubit depolarizing per entangling gate
  double p1 = 0.0;       // single-qubit depolarizing per local rotation
  double p_z_idle = 0.0; // phase flip, once per qubit per circuit
  std::array<SpamRates, kRegisterSize> spam{};
  std::array<double, kRegisterSize> z_offsets{};  // residual positioning phases (rad)
  TwoQubitNoiseModel two_qubit_model = TwoQubitNoiseModel::Depolarizing;
  double sigma_phi = 0.0;  // ZZOverrotation only: std dev of the excess phase

  bool enabled() const;

  std::string to_json() const;
  static NoiseParams from_json(const std::string& text);
  static NoiseParams from_json_file(const std::string& path);
};

/// Calibrated defaults: p2 = 1 - 0.996, p1 = 1e-4, p_z_idle = (1 - 0.93) / 2,
/// SPAM flip rates from the measured per-qubit detection fidelities.
NoiseParams paper_default_params();

NoiseParams no_noise();

/// With probability p2 applies one of the 15 non-identity two-qubit Paulis,
/// chosen uniformly, to the pair.
void apply_two_qubit_noise(StateVector& state, int q1, int q2, double p2, Rng& rng);

void apply_single_qubit_noise(StateVector& state, int q, double p1, Rng& rng);

/// Classical readout flip: 'dark' (+1) outcomes flip with p_dark_err,
/// 'bright' (-1) outcomes with p_bright_err.
int apply_spam_flip(int outcome, const SpamRates& rates, Rng& rng);

/// Applies Z with probability p_z.
void apply_dephasing(StateVector& state, int q, double p_z, Rng& rng);

}  // namespace ftpcm
