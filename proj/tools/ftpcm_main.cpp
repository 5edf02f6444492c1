// Batch front end: runs the parity-check experiments, compiles and times
// shuttling schedules, and emits machine-first JSON/CSV reports.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ftpcm/compiler.hpp"
#include "ftpcm/experiments.hpp"
#include "ftpcm/witness.hpp"
#include "json.hpp"

using namespace ftpcm;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitValidation = 4;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Manifest {
  std::string command;
  std::string config_echo;
  std::uint64_t seed = 0;
  std::string timestamp;

  json to_json() const {
    json j;
    j["command"] = command;
    j["config_hash"] = fnv1a(config_echo);
    j["config"] = config_echo;
    j["seed"] = seed;
    j["timestamp"] = timestamp;
    j["version"] = kVersion;
    return j;
  }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

double binom_stderr(double p, double n) {
  return n > 0 ? std::sqrt(std::max(0.0, p * (1.0 - p)) / n) : 0.0;
}

NoiseParams load_noise(const std::string& noise_arg) {
  if (noise_arg.empty() || noise_arg == "none") return no_noise();
  if (noise_arg == "paper-defaults") return paper_default_params();
  return NoiseParams::from_json_file(noise_arg);
}

GateMode parse_mode(const std::string& mode) {
  if (mode == "ideal") return GateMode::Ideal;
  if (mode == "hardware") return GateMode::Hardware;
  throw std::invalid_argument("gate-mode must be ideal or hardware");
}

std::vector<std::string> expand_inputs(const std::string& inputs) {
  if (inputs != "all") {
    ExperimentConfig probe;
    probe.data_input = inputs;
    probe.validate();
    return {inputs};
  }
  std::vector<std::string> all;
  for (int bits = 0; bits < 16; ++bits) {
    std::string s = "0000";
    for (int i = 0; i < 4; ++i) s[i] = (bits >> i) & 1 ? '1' : '0';
    all.push_back(s);
  }
  return all;
}

struct PcmRun {
  std::map<std::string, ShotTallies> raw;
  std::map<std::string, ShotTallies> kept;
  double kept_fraction = 0.0;
};

PcmRun run_pcm_inputs(const std::vector<std::string>& inputs, std::uint64_t shots,
                      const NoiseParams& noise, GateMode mode, std::uint64_t seed,
                      const std::optional<InjectionSite>& injection = std::nullopt) {
  PcmRun run;
  double kept_shots = 0.0, total_shots = 0.0;
  std::uint64_t stream = 0;
  for (const auto& input : inputs) {
    ExperimentConfig cfg;
    cfg.variant = injection ? Variant::PcmInject : Variant::PcmLogical;
    cfg.data_input = input;
    cfg.gate_mode = mode;
    cfg.injection = injection;
    auto tallies = run_shots(build_pcm_circuit(cfg), noise, shots, seed + 7919 * stream++);
    auto post = flag_postselect(tallies);
    kept_shots += static_cast<double>(post.kept.shots);
    total_shots += static_cast<double>(tallies.shots);
    run.kept[input] = std::move(post.kept);
    run.raw[input] = std::move(tallies);
  }
  run.kept_fraction = total_shots > 0 ? kept_shots / total_shots : 0.0;
  return run;
}

std::string pcm_csv(const Manifest& manifest, const PcmRun& run) {
  std::ostringstream csv;
  csv << "# manifest: " << manifest.to_json().dump() << "\n";
  csv << "input,parity,shots,rate_ms_minus,stderr_raw,rate_ms_minus_postselected,"
         "stderr_postselected,kept_fraction,ideal_rate\n";
  for (const auto& [input, tallies] : run.raw) {
    const double p = tallies.outcome_rate(kS, -1);
    const auto& kept = run.kept.at(input);
    const double pk = kept.shots ? kept.outcome_rate(kS, -1) : 0.0;
    const double ideal = input_parity(input) == +1 ? 1.0 : 0.0;
    csv << input << "," << input_parity(input) << "," << tallies.shots << "," << p << ","
        << binom_stderr(p, static_cast<double>(tallies.shots)) << "," << pk << ","
        << binom_stderr(pk, static_cast<double>(kept.shots)) << ","
        << (tallies.shots ? static_cast<double>(kept.shots) / tallies.shots : 0.0) << "," << ideal
        << "\n";
  }
  return csv.str();
}

json fidelity_json(const std::map<std::string, ShotTallies>& by_input) {
  double even = 0.0, odd = 0.0;
  for (const auto& [input, tallies] : by_input) {
    (input_parity(input) == +1 ? even : odd) += static_cast<double>(tallies.shots);
  }
  json j;
  if (even > 0 && odd > 0) {
    const double p = parity_fidelity(by_input);
    j["value"] = p;
    j["stderr"] = 0.5 * std::sqrt(binom_stderr(p, even) * binom_stderr(p, even) +
                                  binom_stderr(p, odd) * binom_stderr(p, odd)) *
                  std::numbers::sqrt2;
  } else {
    j["value"] = nullptr;
    j["note"] = "needs both parity classes";
  }
  return j;
}

int cmd_run_pcm(const std::string& inputs_arg, std::uint64_t shots, const std::string& noise_arg,
                std::uint64_t seed, const std::string& mode_arg, const std::string& out_dir,
                const std::string& stamp) {
  const auto inputs = expand_inputs(inputs_arg);
  const NoiseParams noise = load_noise(noise_arg);
  const GateMode mode = parse_mode(mode_arg);

  Manifest manifest;
  manifest.command = "run-pcm";
  manifest.config_echo = "inputs=" + inputs_arg + " shots=" + std::to_string(shots) +
                         " noise=" + noise_arg + " gate-mode=" + mode_arg;
  manifest.seed = seed;
  manifest.timestamp = stamp.empty() ? iso_timestamp() : stamp;

  const PcmRun run = run_pcm_inputs(inputs, shots, noise, mode, seed);

  json summary;
  summary["manifest"] = manifest.to_json();
  summary["parity_fidelity"] = fidelity_json(run.raw);
  summary["parity_fidelity_postselected"] = fidelity_json(run.kept);
  summary["flag_kept_fraction"] = run.kept_fraction;
  summary["experimental_reference"] = {
      {"parity_fidelity", "92.3(2)%"},
      {"parity_fidelity_postselected", "93.2(2)%"},
      {"flag_kept_fraction", "93.7(2)%"},
  };

  write_file(std::filesystem::path(out_dir) / "pcm_summary.json", summary.dump(2) + "\n");
  write_file(std::filesystem::path(out_dir) / "pcm_inputs.csv", pcm_csv(manifest, run));
  std::printf("%s\n", summary.dump(2).c_str());
  return 0;
}

int cmd_inject_error(const std::string& pauli_arg, const std::string& qubit_arg, int site,
                     const std::string& inputs_arg, std::uint64_t shots,
                     const std::string& noise_arg, std::uint64_t seed,
                     const std::string& mode_arg, const std::string& out_dir,
                     const std::string& stamp) {
  const Pauli letter = pauli_from_char(pauli_arg.empty() ? 'Y' : pauli_arg[0]);
  if (letter == Pauli::I) throw std::invalid_argument("injected error must be X, Y or Z");
  const int qubit = qubit_from_name(qubit_arg);
  const InjectionSite site_spec{site, PauliString(kRegisterSize, qubit, letter)};

  const auto inputs = expand_inputs(inputs_arg);
  const NoiseParams noise = load_noise(noise_arg);
  const GateMode mode = parse_mode(mode_arg);

  Manifest manifest;
  manifest.command = "inject-error";
  manifest.config_echo = "pauli=" + pauli_arg + " qubit=" + qubit_arg +
                         " site=" + std::to_string(site) + " inputs=" + inputs_arg +
                         " shots=" + std::to_string(shots) + " noise=" + noise_arg +
                         " gate-mode=" + mode_arg;
  manifest.seed = seed;
  manifest.timestamp = stamp.empty() ? iso_timestamp() : stamp;

  // Frame prediction from the clean circuit.
  ExperimentConfig clean_cfg;
  clean_cfg.variant = Variant::PcmLogical;
  clean_cfg.gate_mode = mode;
  const Circuit clean = build_pcm_circuit(clean_cfg);
  const PauliString final_op = propagate_to_end(clean, site_spec);
  const ReadoutEffect effect = predict_readout_effect(final_op);

  const PcmRun run = run_pcm_inputs(inputs, shots, noise, mode, seed, site_spec);

  double flag_detect = 0.0;
  for (const auto& [input, tallies] : run.raw) flag_detect += tallies.outcome_rate(kF, +1);
  flag_detect /= static_cast<double>(run.raw.size());

  json summary;
  summary["manifest"] = manifest.to_json();
  summary["injection"] = {{"pauli", std::string(1, pauli_char(letter))},
                          {"qubit", qubit_arg},
                          {"site", site}};
  summary["frame_prediction"] = {
      {"final_operator", final_op.to_string()},
      {"syndrome_flip", effect.syndrome_flip},
      {"flag_flip", effect.flag_flip},
      {"data_z_weight", effect.data_z_weight},
  };
  summary["flag_detection_rate"] = flag_detect;
  summary["parity_fidelity"] = fidelity_json(run.raw);
  summary["experimental_reference"] = {
      {"Y_s", "flag 90.6(6)%, parity fidelity 88.3(7)%"},
      {"X_s", "flag 89.7(6)%, parity fidelity 14.7(7)%"},
  };

  write_file(std::filesystem::path(out_dir) / "inject_summary.json", summary.dump(2) + "\n");
  write_file(std::filesystem::path(out_dir) / "inject_inputs.csv", pcm_csv(manifest, run));
  std::printf("%s\n", summary.dump(2).c_str());
  return 0;
}

int cmd_gme(int n, std::uint64_t shots_x, std::uint64_t shots_z, const std::string& noise_arg,
            std::uint64_t seed, const std::string& mode_arg, double k_sigma,
            const std::string& out_dir, const std::string& stamp) {
  if (n != 4 && n != 6) throw std::invalid_argument("n must be 4 or 6");
  const NoiseParams noise = load_noise(noise_arg);
  const GateMode mode = parse_mode(mode_arg);

  Manifest manifest;
  manifest.command = "gme";
  manifest.config_echo = "n=" + std::to_string(n) + " shots_x=" + std::to_string(shots_x) +
                         " shots_z=" + std::to_string(shots_z) + " noise=" + noise_arg +
                         " gate-mode=" + mode_arg + " k=" + std::to_string(k_sigma);
  manifest.seed = seed;
  manifest.timestamp = stamp.empty() ? iso_timestamp() : stamp;

  const GeneratorSet set = generator_set(n);
  ExperimentConfig cfg;
  cfg.variant = n == 4 ? Variant::Gme4 : Variant::Gme6;
  cfg.gate_mode = mode;

  json summary;
  summary["manifest"] = manifest.to_json();
  std::string csv;

  auto run_setting = [&](const PauliString& g, std::uint64_t shots, std::uint64_t stream) {
    const Setting setting = measurement_setting(g);
    const Circuit circ = n == 4 ? build_gme4_circuit(cfg, setting) : build_gme6_circuit(cfg, setting);
    return run_shots(circ, noise, shots, seed + 104729 * stream);
  };

  if (n == 6) {
    std::vector<ShotTallies> tallies;
    for (std::size_t i = 0; i < set.generators.size(); ++i) {
      const bool x_type = set.generators[i].at(kS) == Pauli::X ||
                          set.generators[i].at(kF) == Pauli::X;
      tallies.push_back(run_setting(set.generators[i], x_type ? shots_x : shots_z, i));
    }
    const WitnessReport report = witness_value(tallies, set, k_sigma);
    summary["report"] = json::parse(report.to_json());
    summary["experimental_reference"] = {{"witness", "-0.031(8)"}};
    csv = "# manifest: " + manifest.to_json().dump() + "\n" + report.to_csv();
  } else {
    // Conditional evaluation per syndrome branch.
    std::vector<ShotTallies> raw;
    for (std::size_t i = 0; i < set.generators.size(); ++i) {
      const bool x_type = set.generators[i].at(kD1) == Pauli::X ||
                          set.generators[i].at(kD2) == Pauli::X ||
                          set.generators[i].at(kD3) == Pauli::X;
      raw.push_back(run_setting(set.generators[i], x_type ? shots_x : shots_z, i));
    }
    for (const int branch : {+1, -1}) {
      GeneratorSet branch_set = set;
      branch_set.generators[3].set_phase_pow(branch == +1 ? 0 : 2);
      std::vector<ShotTallies> conditioned;
      for (const auto& tallies : raw) {
        ShotTallies keep;
        keep.bases = tallies.bases;
        for (const auto& [outcome, count] : tallies.counts) {
          if (outcome[kS] == branch) {
            keep.counts[outcome] += count;
            keep.shots += count;
          }
        }
        conditioned.push_back(std::move(keep));
      }
      const WitnessReport report = witness_value(conditioned, branch_set, k_sigma);
      const std::string key = branch == +1 ? "ms_plus" : "ms_minus";
      summary["report"][key] = json::parse(report.to_json());
      csv += "# manifest: " + manifest.to_json().dump() + "\n# branch M_s=" +
             (branch == +1 ? std::string("+1") : std::string("-1")) + "\n" + report.to_csv();
    }
    summary["experimental_reference"] = {{"witness_ms_plus", "-0.14(1)"},
                                         {"witness_ms_minus", "-0.11(1)"}};
  }

  write_file(std::filesystem::path(out_dir) / "witness_report.json", summary.dump(2) + "\n");
  write_file(std::filesystem::path(out_dir) / "witness_generators.csv", csv);
  std::printf("%s\n", summary.dump(2).c_str());
  return 0;
}

std::vector<GateRequest> load_gates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gates file: " + path);
  json j;
  in >> j;
  std::vector<GateRequest> gates;
  for (const auto& g : j.at("gates")) {
    const std::string kind = g.at("kind").get<std::string>();
    if (kind == "entangle") {
      gates.push_back(GateRequest::entangle(qubit_from_name(g.at("q1").get<std::string>()),
                                            qubit_from_name(g.at("q2").get<std::string>())));
    } else if (kind == "rotation") {
      gates.push_back(GateRequest::rotation(qubit_from_name(g.at("q1").get<std::string>())));
    } else {
      throw std::invalid_argument("unknown gate kind: " + kind);
    }
  }
  return gates;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_compile(const std::string& gates_file, const std::string& trap_config,
                const std::string& durations_config, bool full, const std::string& out_dir,
                const std::string& stamp) {
  const TrapSpec spec = trap_config.empty() ? TrapSpec{} : TrapSpec::from_json(read_file(trap_config));
  const DurationTable durations =
      durations_config.empty() ? DurationTable{} : DurationTable::from_json(read_file(durations_config));
  const TrapState layout = initial_layout(spec);

  Manifest manifest;
  manifest.command = "compile";
  manifest.config_echo = "gates=" + (gates_file.empty() ? std::string("pcm") : gates_file) +
                         " trap=" + trap_config + " durations=" + durations_config +
                         (full ? " full" : "");
  manifest.timestamp = stamp.empty() ? iso_timestamp() : stamp;

  Schedule schedule;
  ValidationOptions opt;
  if (full) {
    schedule = full_pcm_schedule(layout, spec, durations);
  } else if (gates_file.empty()) {
    schedule = compile(pcm_gate_list(), layout, spec, durations);
    opt.expected_entangle_order = pcm_entangle_order();
  } else {
    schedule = compile(load_gates_file(gates_file), layout, spec, durations);
  }

  const auto violations = validate(schedule, layout, spec, durations, opt);

  json summary;
  summary["manifest"] = manifest.to_json();
  summary["num_steps"] = schedule.steps.size();
  summary["num_ops"] = schedule.num_ops();
  summary["valid"] = violations.empty();
  json vlist = json::array();
  for (const auto& v : violations) {
    vlist.push_back({{"step", v.step}, {"rule", rule_name(v.rule)}, {"detail", v.detail}});
  }
  summary["violations"] = std::move(vlist);
  {
    TrapState st = layout;
    int lo = spec.num_segments, hi = -1;
    auto scan = [&](const TrapState& s) {
      for (const auto& w : s.wells) {
        lo = std::min(lo, w.segment);
        hi = std::max(hi, w.segment);
      }
    };
    scan(st);
    for (const auto& group : schedule.steps) {
      for (const auto& op : group) st = apply_primitive(st, op, spec);
      scan(st);
    }
    summary["max_extent_segments"] = hi - lo + 1;
  }

  json sched_json = json::parse(schedule.to_json());
  sched_json["manifest"] = manifest.to_json();
  write_file(std::filesystem::path(out_dir) / "schedule.json", sched_json.dump(2) + "\n");
  write_file(std::filesystem::path(out_dir) / "schedule_timeline.txt",
             schedule.render_timeline(layout, spec));
  write_file(std::filesystem::path(out_dir) / "compile_summary.json", summary.dump(2) + "\n");
  std::printf("%s\n", summary.dump(2).c_str());
  return violations.empty() ? 0 : kExitValidation;
}

int cmd_timing(const std::string& schedule_file, const std::string& durations_config,
               const std::string& out_dir, const std::string& stamp) {
  const DurationTable durations =
      durations_config.empty() ? DurationTable{} : DurationTable::from_json(read_file(durations_config));

  Schedule schedule;
  if (schedule_file.empty()) {
    const TrapSpec spec;
    schedule = full_pcm_schedule(initial_layout(spec), spec, durations);
  } else {
    schedule = Schedule::from_json(read_file(schedule_file));
  }

  Manifest manifest;
  manifest.command = "timing";
  manifest.config_echo =
      "schedule=" + (schedule_file.empty() ? std::string("full-pcm") : schedule_file) +
      " durations=" + durations_config;
  manifest.timestamp = stamp.empty() ? iso_timestamp() : stamp;

  const TimingBudget budget = timing_budget(schedule, durations);
  json summary = json::parse(budget.to_json());
  summary["manifest"] = manifest.to_json();
  const double total = budget.total().total();
  json shares;
  std::ostringstream csv;
  csv << "# manifest: " << manifest.to_json().dump() << "\n";
  csv << "phase,shuttle_us,laser_us,total_us,share_of_total,laser_share\n";
  for (const auto& [phase, b] : budget.phases) {
    shares[phase_name(phase)] = {{"share_of_total", total > 0 ? b.total() / total : 0.0},
                                 {"laser_share", b.total() > 0 ? b.laser_us / b.total() : 0.0}};
    csv << phase_name(phase) << "," << b.shuttle_us << "," << b.laser_us << "," << b.total() << ","
        << (total > 0 ? b.total() / total : 0.0) << ","
        << (b.total() > 0 ? b.laser_us / b.total() : 0.0) << "\n";
  }
  summary["shares"] = std::move(shares);

  write_file(std::filesystem::path(out_dir) / "timing.json", summary.dump(2) + "\n");
  write_file(std::filesystem::path(out_dir) / "timing.csv", csv.str());
  std::printf("%s\n", summary.dump(2).c_str());
  return 0;
}

int cmd_defaults(const std::string& kind, const std::string& out_file) {
  std::string content;
  if (kind == "noise") {
    content = paper_default_params().to_json() + "\n";
  } else if (kind == "trap") {
    content = TrapSpec{}.to_json() + "\n";
  } else if (kind == "durations") {
    content = DurationTable{}.to_json() + "\n";
  } else {
    throw std::invalid_argument("kind must be noise, trap or durations");
  }
  if (out_file.empty()) {
    std::printf("%s", content.c_str());
  } else {
    write_file(out_file, content);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag-based fault-tolerant parity readout: simulator and shuttling compiler"};
  app.require_subcommand(1);

  std::string inputs = "all", noise = "none", mode = "ideal", out_dir = "out", stamp;
  std::uint64_t shots = 960, seed = 1;

  auto add_common = [&](CLI::App* cmd, bool with_inputs = true) {
    if (with_inputs) cmd->add_option("--inputs", inputs, "all or a 4-bit string (d1..d4)");
    cmd->add_option("--shots", shots, "shots per input state");
    cmd->add_option("--noise", noise, "none, paper-defaults, or a JSON config path");
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--gate-mode", mode, "ideal or hardware");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--fixed-timestamp", stamp, "timestamp override for reproducible files");
  };

  auto* run_pcm = app.add_subcommand("run-pcm", "parity readout in the logical basis");
  add_common(run_pcm);

  auto* inject = app.add_subcommand("inject-error", "parity readout with a deliberate error");
  std::string pauli = "Y", qubit = "s";
  int site = 3;
  inject->add_option("--pauli", pauli, "X, Y or Z");
  inject->add_option("--qubit", qubit, "d1..d4, s or f");
  inject->add_option("--site", site, "inter-gate position 0..6 (3 = between d2s and d3s)");
  add_common(inject);

  auto* gme = app.add_subcommand("gme", "GHZ-type state generation and witness evaluation");
  int n = 6;
  double k_sigma = 3.0;
  std::uint64_t shots_per_setting = 0;
  gme->add_option("--n", n, "4 or 6");
  gme->add_option("--shots-per-setting", shots_per_setting,
                  "override the per-setting shot defaults");
  gme->add_option("--k-sigma", k_sigma, "certification threshold in standard errors");
  add_common(gme, false);

  auto* compile_cmd = app.add_subcommand("compile", "gate list -> shuttling schedule");
  std::string gates_file, trap_config, durations_config, schedule_file;
  bool full = false;
  compile_cmd->add_option("--gates-file", gates_file,
                          "JSON gate list; defaults to the parity-check sequence");
  compile_cmd->add_option("--trap-config", trap_config, "TrapSpec JSON");
  compile_cmd->add_option("--durations-config", durations_config, "DurationTable JSON");
  compile_cmd->add_flag("--full", full, "include register preparation and readout phases");
  compile_cmd->add_option("--out", out_dir, "output directory");
  compile_cmd->add_option("--fixed-timestamp", stamp, "timestamp override");

  auto* timing = app.add_subcommand("timing", "phase/category timing budget of a schedule");
  timing->add_option("--schedule-file", schedule_file,
                     "schedule JSON; defaults to the full compiled sequence");
  timing->add_option("--durations-config", durations_config, "DurationTable JSON");
  timing->add_option("--out", out_dir, "output directory");
  timing->add_option("--fixed-timestamp", stamp, "timestamp override");

  auto* defaults = app.add_subcommand("defaults", "emit editable default configs");
  std::string kind = "noise", out_file;
  defaults->add_option("--kind", kind, "noise, trap or durations");
  defaults->add_option("--out", out_file, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_pcm->parsed()) {
      return cmd_run_pcm(inputs, shots, noise, seed, mode, out_dir, stamp);
    }
    if (inject->parsed()) {
      return cmd_inject_error(pauli, qubit, site, inputs, shots, noise, seed, mode, out_dir,
                              stamp);
    }
    if (gme->parsed()) {
      const std::uint64_t default_x = n == 4 ? 330 : 500;
      const std::uint64_t default_z = n == 4 ? 990 : 1000;
      const std::uint64_t sx = shots_per_setting ? shots_per_setting : default_x;
      const std::uint64_t sz = shots_per_setting ? shots_per_setting : default_z;
      return cmd_gme(n, sx, sz, noise, seed, mode, k_sigma, out_dir, stamp);
    }
    if (compile_cmd->parsed()) {
      return cmd_compile(gates_file, trap_config, durations_config, full, out_dir, stamp);
    }
    if (timing->parsed()) {
      return cmd_timing(schedule_file, durations_config, out_dir, stamp);
    }
    if (defaults->parsed()) {
      return cmd_defaults(kind, out_file);
    }
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  return 0;
}
