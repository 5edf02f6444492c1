#pragma once

#include <string>
#include <vector>

#include "ftpcm/experiments.hpp"
#include "ftpcm/pauli.hpp"

namespace ftpcm {

struct GeneratorSet {
  int n = 0;  // 4 or 6
  std::vector<PauliString> generators;  // signed, on the 6-qubit register
  bool conditional_g4_sign = false;     // n=4: sign of g4 follows M_s^(X)
};

/// The signed stabilizer generator sets of the 4- and 6-qubit GME states.
/// For n=4 the Z-type generator is returned with the M_s=+1 branch sign;
/// callers flip it for the M_s=-1 branch.
GeneratorSet generator_set(int n);

/// Per-qubit readout basis for one generator: its letter where non-identity,
/// Z on identity slots.
Setting measurement_setting(const PauliString& g);

struct GeneratorEstimate {
  PauliString generator;
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t shots = 0;
};

struct WitnessReport {
  int n = 0;
  double threshold = 0.0;  // l_n = (n-1)/n
  std::vector<GeneratorEstimate> generators;
  double witness = 0.0;  // <W_n> = l_n - (1/n) sum <g_i>
  double witness_stderr = 0.0;
  double k_sigma = 3.0;
  bool certified = false;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Evaluates every generator from the tallies of its own measurement setting
/// (one ShotTallies per generator, same order). Standard errors are binomial
/// and treated as independent across generators.
WitnessReport witness_value(const std::vector<ShotTallies>& tallies_per_generator,
                            const GeneratorSet& set, double k_sigma = 3.0);

/// <g> from one setting's tallies: mean outcome product over the generator's
/// support, times the generator's sign.
GeneratorEstimate estimate_generator(const ShotTallies& tallies, const PauliString& g);

bool certify_gme(const WitnessReport& report, double k_sigma);

/// <W_n> evaluated exactly on a state (noiseless analytics / sanity checks).
double witness_expectation(const StateVector& state, const GeneratorSet& set);

}  // namespace ftpcm
