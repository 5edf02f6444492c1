#include "ftpcm/experiments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftpcm {

namespace {
constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}
}  // namespace

Rng shot_rng(std::uint64_t master_seed, std::uint64_t shot_index) {
  const std::uint64_t mixed = splitmix64(splitmix64(master_seed) ^ (shot_index + 1));
  return Rng(mixed);
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::PcmLogical: return "pcm_logical";
    case Variant::PcmInject: return "pcm_inject";
    case Variant::Gme4: return "gme4";
    case Variant::Gme6: return "gme6";
  }
  throw std::logic_error("bad variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "pcm_logical") return Variant::PcmLogical;
  if (name == "pcm_inject") return Variant::PcmInject;
  if (name == "gme4") return Variant::Gme4;
  if (name == "gme6") return Variant::Gme6;
  throw std::invalid_argument("unknown variant: " + name);
}

void ExperimentConfig::validate() const {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const bool pcm = variant == Variant::PcmLogical || variant == Variant::PcmInject;
  if (pcm) {
    if (data_input.size() != 4) throw std::invalid_argument("data_input must have 4 bits");
    for (char c : data_input) {
      if (c != '0' && c != '1') throw std::invalid_argument("data_input must be a 4-bit string");
    }
  }
  if (injection.has_value() && variant != Variant::PcmInject) {
    throw std::invalid_argument("injection is only valid for pcm_inject");
  }
  if (injection.has_value()) {
    if (injection->error.size() != kRegisterSize) {
      throw std::invalid_argument("injected error must span the 6-qubit register");
    }
    if (injection->error.weight() != 1) {
      throw std::invalid_argument("injected error must have single-qubit support");
    }
    if (injection->position < 0 || injection->position > 6) {
      throw std::out_of_range("injection position must be in [0, 6]");
    }
  }
}

int input_parity(const std::string& data_input) {
  int ones = 0;
  for (char c : data_input) ones += (c == '1');
  return ones % 2 == 0 ? +1 : -1;
}

void ShotTallies::add(const std::array<int8_t, kRegisterSize>& outcome) {
  ++counts[outcome];
  ++shots;
}

void ShotTallies::merge(const ShotTallies& other) {
  for (const auto& [k, v] : other.counts) counts[k] += v;
  shots += other.shots;
}

std::uint64_t ShotTallies::count_where(int qubit, int value) const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : counts) {
    if (k[qubit] == value) n += v;
  }
  return n;
}

double ShotTallies::outcome_rate(int qubit, int value) const {
  if (shots == 0) throw std::runtime_error("no shots recorded");
  return static_cast<double>(count_where(qubit, value)) / static_cast<double>(shots);
}

double ShotTallies::product_mean(const std::vector<int>& support) const {
  if (shots == 0) throw std::runtime_error("no shots recorded");
  double acc = 0.0;
  for (const auto& [k, v] : counts) {
    int prod = 1;
    for (int q : support) prod *= k[q];
    acc += static_cast<double>(prod) * static_cast<double>(v);
  }
  return acc / static_cast<double>(shots);
}

namespace {

// Deterministic frame bookkeeping of the gate sequence, absorbed into the
// analysis pulses the way the hardware absorbs its calibrated phases. The
// sf gate pair leaves a Z frame on both s and f (phase pi on their analysis
// pulses); in the GME sequences each data qubit additionally keeps the
// Z-quarter frame from its own entangling gate, whose sign follows the
// rephasing-pulse bookkeeping of the gate order.
struct AnalysisCorrection {
  double pre_theta = 0.0;  // optional frame-reset pulse, 0 = none
  double pre_phi = 0.0;
  double phase = 0.0;  // drive-phase offset added to the analysis pulse
};

using CorrectionTable = std::array<AnalysisCorrection, kRegisterSize>;

CorrectionTable corrections_for(Variant v, GateMode m) {
  constexpr double h = kPi / 2.0;
  CorrectionTable t{};  // all zero
  switch (v) {
    case Variant::PcmLogical:
    case Variant::PcmInject:
      t[kS].phase = kPi;
      t[kF].phase = kPi;
      return t;
    case Variant::Gme4:
      if (m == GateMode::Ideal) {
        t[kD1].phase = +h;
        t[kD2].phase = -h;
        t[kD3].phase = +h;
        t[kD4].phase = -h;
      } else {
        t[kD1].phase = -h;
        t[kD2].phase = -h;
        t[kD3].phase = -h;
        t[kD4].phase = -h;
      }
      t[kS].phase = kPi;
      return t;
    case Variant::Gme6:
      if (m == GateMode::Ideal) {
        t[kD1].phase = -h;
        t[kD2].phase = -h;
        t[kD3].phase = -h;
        t[kD4].phase = -h;
      } else {
        t[kD1].phase = -h;
        t[kD2].phase = -h;
        t[kD3].phase = +h;
        t[kD4].phase = +h;
      }
      return t;
  }
  throw std::logic_error("bad variant");
}

void append_analysis(Circuit& c, int q, MeasBasis basis, const AnalysisCorrection& corr) {
  if (corr.pre_theta != 0.0) {
    c.ops.push_back(CircuitOp::rotation(q, corr.pre_theta, corr.pre_phi));
  }
  if (basis == MeasBasis::X) {
    c.ops.push_back(CircuitOp::rotation(q, kPi / 2.0, -kPi / 2.0 + corr.phase));
  } else if (basis == MeasBasis::Y) {
    c.ops.push_back(CircuitOp::rotation(q, kPi / 2.0, corr.phase));
  }
}

void append_measures(Circuit& c) {
  for (int q = 0; q < kRegisterSize; ++q) {
    c.ops.push_back(CircuitOp::measure(q, MeasBasis::Z));
  }
}

}  // namespace

Circuit build_pcm_circuit(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.variant != Variant::PcmLogical && cfg.variant != Variant::PcmInject) {
    throw std::invalid_argument("build_pcm_circuit needs a pcm variant");
  }
  Circuit c;
  c.ops.push_back(CircuitOp::prep_zero());
  for (int i = 0; i < 4; ++i) {
    if (cfg.data_input[i] == '1') {
      c.ops.push_back(CircuitOp::rotation(kD1 + i, kPi, -kPi / 2.0));
    }
  }
  c.ops.push_back(CircuitOp::rotation(kS, kPi / 2.0, -kPi / 2.0));
  c.ops.push_back(CircuitOp::dephase_exposure(kS));
  c.ops.push_back(CircuitOp::rotation(kF, kPi / 2.0, -kPi / 2.0));
  c.ops.push_back(CircuitOp::dephase_exposure(kF));

  static constexpr std::array<std::pair<int, int>, 6> kGates = {{
      {kD1, kS}, {kS, kF}, {kD2, kS}, {kD3, kS}, {kS, kF}, {kD4, kS},
  }};
  for (int g = 0; g <= 6; ++g) {
    c.gate_boundaries.push_back(c.ops.size());
    if (cfg.injection && cfg.injection->position == g) {
      c.ops.push_back(CircuitOp::inject(cfg.injection->error));
    }
    if (g < 6) {
      c.ops.push_back(CircuitOp::entangle(kGates[g].first, kGates[g].second, cfg.gate_mode));
    }
  }
  for (int d = kD1; d <= kD4; ++d) c.ops.push_back(CircuitOp::dephase_exposure(d));
  c.analysis_start = c.ops.size();

  const auto corr = corrections_for(cfg.variant, cfg.gate_mode);
  append_analysis(c, kS, MeasBasis::X, corr[kS]);
  append_analysis(c, kF, MeasBasis::X, corr[kF]);
  append_measures(c);
  c.reported_bases = {MeasBasis::Z, MeasBasis::Z, MeasBasis::Z, MeasBasis::Z, MeasBasis::X,
                      MeasBasis::X};
  return c;
}

Circuit build_gme4_circuit(const ExperimentConfig& cfg, const Setting& setting) {
  cfg.validate();
  if (cfg.variant != Variant::Gme4) throw std::invalid_argument("variant must be gme4");
  Circuit c;
  c.ops.push_back(CircuitOp::prep_zero());
  c.ops.push_back(CircuitOp::rotation(kS, kPi / 2.0, -kPi / 2.0));
  c.ops.push_back(CircuitOp::dephase_exposure(kS));
  c.ops.push_back(CircuitOp::rotation(kF, kPi / 2.0, -kPi / 2.0));
  c.ops.push_back(CircuitOp::dephase_exposure(kF));

  const auto corr = corrections_for(cfg.variant, cfg.gate_mode);
  // Data qubits are prepped directly before their gate and analysed directly
  // after it, so they spend almost no time in superposition and see no idle
  // dephasing; both rotations happen within the qubit's LIZ visit.
  auto data_block = [&](int d) {
    c.ops.push_back(CircuitOp::rotation(d, 3.0 * kPi / 2.0, -kPi / 2.0));
    c.ops.push_back(CircuitOp::entangle(d, kS, cfg.gate_mode));
    append_analysis(c, d, setting[d], corr[d]);
  };
  auto sf_echo = [&] {
    c.ops.push_back(CircuitOp::pair_rotation(kS, kF, kPi, -kPi / 2.0));
  };

  data_block(kD1);
  sf_echo();
  data_block(kD2);
  data_block(kD3);
  sf_echo();
  data_block(kD4);

  c.analysis_start = c.ops.size();
  append_analysis(c, kS, MeasBasis::X, corr[kS]);
  append_analysis(c, kF, MeasBasis::X, corr[kF]);
  append_measures(c);
  c.reported_bases = {setting[kD1], setting[kD2], setting[kD3], setting[kD4], MeasBasis::X,
                      MeasBasis::X};
  return c;
}

Circuit build_gme6_circuit(const ExperimentConfig& cfg, const Setting& setting) {
  cfg.validate();
  if (cfg.variant != Variant::Gme6) throw std::invalid_argument("variant must be gme6");
  Circuit c;
  c.ops.push_back(CircuitOp::prep_zero());
  c.ops.push_back(CircuitOp::rotation(kS, kPi / 2.0, -kPi / 2.0));
  c.ops.push_back(CircuitOp::dephase_exposure(kS));
  c.ops.push_back(CircuitOp::rotation(kF, kPi / 2.0, -kPi / 2.0));
  c.ops.push_back(CircuitOp::dephase_exposure(kF));

  // The drive phases of the two extra syndrome pulses are expressed in the
  // sequence's calibrated frame: the mid-circuit pulse sits a quarter turn
  // off the lab frame (one of the two sf gates has elapsed, with the sign
  // following the rephasing-pulse parity), and the pre-analysis pulse
  // carries the same pi offset as the parity-readout analysis pulses.
  const double mid_phase = cfg.gate_mode == GateMode::Ideal ? -kPi / 2.0 : kPi / 2.0;
  const auto corr = corrections_for(cfg.variant, cfg.gate_mode);
  // Early data preparation and analysis, as in the four-qubit sequence.
  auto data_block = [&](int d) {
    c.ops.push_back(CircuitOp::rotation(d, 3.0 * kPi / 2.0, -kPi / 2.0));
    c.ops.push_back(CircuitOp::entangle(d, kS, cfg.gate_mode));
    append_analysis(c, d, setting[d], corr[d]);
  };

  data_block(kD1);
  c.ops.push_back(CircuitOp::entangle(kS, kF, cfg.gate_mode));
  data_block(kD2);
  c.ops.push_back(CircuitOp::rotation(kS, kPi / 2.0, mid_phase));
  data_block(kD3);
  c.ops.push_back(CircuitOp::entangle(kS, kF, cfg.gate_mode));
  data_block(kD4);
  c.ops.push_back(CircuitOp::rotation(kS, 3.0 * kPi / 2.0, kPi / 2.0));

  c.analysis_start = c.ops.size();
  append_analysis(c, kS, setting[kS], corr[kS]);
  append_analysis(c, kF, setting[kF], corr[kF]);
  append_measures(c);
  c.reported_bases.assign(setting.begin(), setting.end());
  return c;
}

namespace {

void run_unitary_op(StateVector& st, const CircuitOp& op, const NoiseParams& noise, Rng& rng) {
  switch (op.kind) {
    case CircuitOp::Kind::PrepZero:
      st.set_basis_state(0);
      break;
    case CircuitOp::Kind::Rotation:
      st.apply_local_rotation(op.q1, op.theta, op.phi);
      apply_single_qubit_noise(st, op.q1, noise.p1, rng);
      break;
    case CircuitOp::Kind::PairRotation:
      st.apply_pairwise_rotation(op.q1, op.q2, op.theta, op.phi);
      apply_single_qubit_noise(st, op.q1, noise.p1, rng);
      apply_single_qubit_noise(st, op.q2, noise.p1, rng);
      break;
    case CircuitOp::Kind::Entangle:
      st.apply_entangling_gate(op.q1, op.q2, op.mode);
      if (noise.two_qubit_model == TwoQubitNoiseModel::Depolarizing) {
        apply_two_qubit_noise(st, op.q1, op.q2, noise.p2, rng);
      } else if (noise.sigma_phi > 0.0) {
        std::normal_distribution<double> excess(0.0, noise.sigma_phi);
        st.apply_zz(op.q1, op.q2, excess(rng));
      }
      break;
    case CircuitOp::Kind::Inject:
      st.apply_pauli(op.pauli);
      break;
    case CircuitOp::Kind::DephaseExposure:
      if (noise.z_offsets[op.q1] != 0.0) st.apply_rz(op.q1, noise.z_offsets[op.q1]);
      apply_dephasing(st, op.q1, noise.p_z_idle, rng);
      break;
    case CircuitOp::Kind::Measure:
      throw std::logic_error("measure handled by caller");
  }
}

}  // namespace

ShotTallies run_shots(const Circuit& circuit, const NoiseParams& noise, std::uint64_t shots,
                      std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  ShotTallies out;
  for (int q = 0; q < kRegisterSize; ++q) out.bases[q] = circuit.reported_bases[q];
  for (std::uint64_t k = 0; k < shots; ++k) {
    Rng rng = shot_rng(seed, k);
    StateVector st(circuit.num_qubits);
    std::array<int8_t, kRegisterSize> outcome{};
    for (const auto& op : circuit.ops) {
      if (op.kind == CircuitOp::Kind::Measure) {
        int o = st.measure_qubit(op.q1, op.basis, rng);
        o = apply_spam_flip(o, noise.spam[op.q1], rng);
        outcome[op.q1] = static_cast<int8_t>(o);
      } else {
        run_unitary_op(st, op, noise, rng);
      }
    }
    out.add(outcome);
  }
  return out;
}

StateVector final_state(const Circuit& circuit) {
  const NoiseParams none;
  Rng rng(0);
  StateVector st(circuit.num_qubits);
  for (const auto& op : circuit.ops) {
    if (op.kind == CircuitOp::Kind::Measure) continue;
    run_unitary_op(st, op, none, rng);
  }
  return st;
}

StateVector pre_analysis_state(const Circuit& circuit) {
  const NoiseParams none;
  Rng rng(0);
  StateVector st(circuit.num_qubits);
  for (std::size_t i = 0; i < circuit.analysis_start; ++i) {
    run_unitary_op(st, circuit.ops[i], none, rng);
  }
  return st;
}

double parity_fidelity(const std::map<std::string, ShotTallies>& tallies_by_input) {
  std::uint64_t even_shots = 0, even_correct = 0;
  std::uint64_t odd_shots = 0, odd_correct = 0;
  for (const auto& [input, tallies] : tallies_by_input) {
    if (input_parity(input) == +1) {
      even_shots += tallies.shots;
      even_correct += tallies.count_where(kS, -1);
    } else {
      odd_shots += tallies.shots;
      odd_correct += tallies.count_where(kS, +1);
    }
  }
  if (even_shots == 0 || odd_shots == 0) {
    throw std::invalid_argument("parity fidelity needs both parity classes");
  }
  const double p_even = static_cast<double>(even_correct) / static_cast<double>(even_shots);
  const double p_odd = static_cast<double>(odd_correct) / static_cast<double>(odd_shots);
  return 0.5 * (p_even + p_odd);
}

PostselectResult flag_postselect(const ShotTallies& tallies) {
  PostselectResult res;
  res.kept.bases = tallies.bases;
  for (const auto& [outcome, n] : tallies.counts) {
    if (outcome[kF] == -1) {
      res.kept.counts[outcome] += n;
      res.kept.shots += n;
    }
  }
  if (tallies.shots == 0) throw std::runtime_error("no shots to post-select");
  res.kept_fraction = static_cast<double>(res.kept.shots) / static_cast<double>(tallies.shots);
  return res;
}

}  // namespace ftpcm
