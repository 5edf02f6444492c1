#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftpcm/circuit.hpp"
#include "ftpcm/frame.hpp"
#include "ftpcm/noise.hpp"

namespace ftpcm {

enum class Variant : std::uint8_t { PcmLogical, PcmInject, Gme4, Gme6 };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct ExperimentConfig {
  Variant variant = Variant::PcmLogical;
  std::string data_input = "0000";  // pcm variants only, d1..d4
  std::optional<InjectionSite> injection;  // pcm_inject only
  std::uint64_t shots = 1;
  GateMode gate_mode = GateMode::Ideal;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Per-qubit measurement setting; identity slots read out in Z.
using Setting = std::array<MeasBasis, kRegisterSize>;

struct ShotTallies {
  std::map<std::array<int8_t, kRegisterSize>, std::uint64_t> counts;
  std::uint64_t shots = 0;
  Setting bases{};  // reported basis per qubit

  void add(const std::array<int8_t, kRegisterSize>& outcome);
  void merge(const ShotTallies& other);

  /// P(outcome[qubit] == value)
  double outcome_rate(int qubit, int value) const;
  std::uint64_t count_where(int qubit, int value) const;

  /// Mean product of outcomes over the support qubits.
  double product_mean(const std::vector<int>& support) const;
};

/// Parity readout: prep |0..0>, data flips per data_input, s/f to |->,
/// entangling gates d1s, sf, d2s, d3s, sf, d4s, optional injected error,
/// analysis pulses on s/f, full Z readout.
Circuit build_pcm_circuit(const ExperimentConfig& cfg);

/// Four-qubit GHZ-type generation: data prepped to |+> right before their
/// gates, sf entangling phases off with the rephasing pair pulses kept,
/// measurement setting applied to the data qubits, s/f read out in X.
Circuit build_gme4_circuit(const ExperimentConfig& cfg, const Setting& setting);

/// Six-qubit generation: full gate sequence plus R_s(pi/2, 0) between d2s and
/// d3s and R_s(3pi/2, -pi/2) before the syndrome analysis pulse.
Circuit build_gme6_circuit(const ExperimentConfig& cfg, const Setting& setting);

/// Runs the circuit with stochastic noise sampling; deterministic for fixed
/// (circuit, noise, shots, seed). Shot k draws from an independent stream
/// derived from (seed, k).
ShotTallies run_shots(const Circuit& circuit, const NoiseParams& noise, std::uint64_t shots,
                      std::uint64_t seed);

/// Noiseless end-of-circuit state (all unitaries applied, no measurement).
StateVector final_state(const Circuit& circuit);

/// Noiseless state just before the analysis stage.
StateVector pre_analysis_state(const Circuit& circuit);

/// Eq.-(7)-style parity fidelity: mean of p(M_s=-1 | even input) and
/// p(M_s=+1 | odd input), counts pooled within each parity class.
double parity_fidelity(const std::map<std::string, ShotTallies>& tallies_by_input);

struct PostselectResult {
  double kept_fraction = 0.0;
  ShotTallies kept;
};

/// Keeps shots with the flag reading M_f = -1.
PostselectResult flag_postselect(const ShotTallies& tallies);

int input_parity(const std::string& data_input);  // +1 even, -1 odd

/// Deterministic per-shot RNG stream.
Rng shot_rng(std::uint64_t master_seed, std::uint64_t shot_index);

}  // namespace ftpcm
