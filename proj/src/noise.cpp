#include "ftpcm/noise.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ftpcm {

bool NoiseParams::enabled() const {
  if (p2 > 0.0 || p1 > 0.0 || p_z_idle > 0.0 || sigma_phi > 0.0) return true;
  for (const auto& s : spam) {
    if (s.p_dark_err > 0.0 || s.p_bright_err > 0.0) return true;
  }
  for (double z : z_offsets) {
    if (z != 0.0) return true;
  }
  return false;
}

NoiseParams paper_default_params() {
  NoiseParams p;
  p.p2 = 0.004;          // 1 - 0.996 two-qubit gate fidelity
  p.p1 = 1e-4;           // single-qubit error per gate
  p.p_z_idle = 0.035;    // (1 - C)/2 with readout contrast C = 0.93
  // Detection-fidelity flips per qubit: data qubits from the GME-sequence
  // characterization, syndrome and flag from the parity-check sequence.
  p.spam[kD1] = {0.018, 0.003};
  p.spam[kD2] = {0.013, 0.004};
  p.spam[kD3] = {0.010, 0.008};
  p.spam[kD4] = {0.014, 0.014};
  p.spam[kS] = {0.014, 0.012};
  p.spam[kF] = {0.019, 0.012};
  return p;
}

NoiseParams no_noise() { return NoiseParams{}; }

std::string NoiseParams::to_json() const {
  nlohmann::json j;
  j["p2"] = p2;
  j["p1"] = p1;
  j["p_z_idle"] = p_z_idle;
  j["two_qubit_model"] =
      two_qubit_model == TwoQubitNoiseModel::Depolarizing ? "depolarizing" : "zz_overrotation";
  j["sigma_phi"] = sigma_phi;
  nlohmann::json spam_json;
  nlohmann::json z_json;
  for (int q = 0; q < kRegisterSize; ++q) {
    spam_json[qubit_name(q)] = {{"p_dark_err", spam[q].p_dark_err},
                                {"p_bright_err", spam[q].p_bright_err}};
    z_json[qubit_name(q)] = z_offsets[q];
  }
  j["spam"] = std::move(spam_json);
  j["z_offsets"] = std::move(z_json);
  return j.dump(2);
}

NoiseParams NoiseParams::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  NoiseParams p;
  p.p2 = j.value("p2", 0.0);
  p.p1 = j.value("p1", 0.0);
  p.p_z_idle = j.value("p_z_idle", 0.0);
  p.sigma_phi = j.value("sigma_phi", 0.0);
  if (j.value("two_qubit_model", "depolarizing") == std::string("zz_overrotation")) {
    p.two_qubit_model = TwoQubitNoiseModel::ZZOverrotation;
  }
  if (j.contains("spam")) {
    for (int q = 0; q < kRegisterSize; ++q) {
      const auto& s = j.at("spam").at(qubit_name(q));
      p.spam[q].p_dark_err = s.value("p_dark_err", 0.0);
      p.spam[q].p_bright_err = s.value("p_bright_err", 0.0);
    }
  }
  if (j.contains("z_offsets")) {
    for (int q = 0; q < kRegisterSize; ++q) {
      p.z_offsets[q] = j.at("z_offsets").value(qubit_name(q), 0.0);
    }
  }
  auto check = [](double v, const char* name) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument(std::string("probability out of range: ") + name);
  };
  check(p.p2, "p2");
  check(p.p1, "p1");
  check(p.p_z_idle, "p_z_idle");
  for (const auto& s : p.spam) {
    check(s.p_dark_err, "p_dark_err");
    check(s.p_bright_err, "p_bright_err");
  }
  return p;
}

NoiseParams NoiseParams::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open noise config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void apply_two_qubit_noise(StateVector& state, int q1, int q2, double p2, Rng& rng) {
  if (p2 <= 0.0) return;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (uni(rng) >= p2) return;
  std::uniform_int_distribution<int> pick(1, 15);
  const int code = pick(rng);
  const auto a = static_cast<Pauli>(code & 3);
  const auto b = static_cast<Pauli>(code >> 2);
  PauliString err(state.num_qubits());
  err.at(q1) = a;
  err.at(q2) = b;
  state.apply_pauli(err);
}

void apply_single_qubit_noise(StateVector& state, int q, double p1, Rng& rng) {
  if (p1 <= 0.0) return;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (uni(rng) >= p1) return;
  std::uniform_int_distribution<int> pick(1, 3);
  state.apply_pauli(PauliString(state.num_qubits(), q, static_cast<Pauli>(pick(rng))));
}

int apply_spam_flip(int outcome, const SpamRates& rates, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double p = outcome == +1 ? rates.p_dark_err : rates.p_bright_err;
  if (p > 0.0 && uni(rng) < p) return -outcome;
  return outcome;
}

void apply_dephasing(StateVector& state, int q, double p_z, Rng& rng) {
  if (p_z <= 0.0) return;
  if (p_z > 0.5) throw std::invalid_argument("p_z must be in [0, 1/2]");
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (uni(rng) < p_z) {
    state.apply_pauli(PauliString(state.num_qubits(), q, Pauli::Z));
  }
}

}  // namespace ftpcm
