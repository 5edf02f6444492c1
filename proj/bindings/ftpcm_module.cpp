#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ftpcm/compiler.hpp"
#include "ftpcm/experiments.hpp"
#include "ftpcm/frame.hpp"
#include "ftpcm/witness.hpp"

namespace py = pybind11;
using namespace ftpcm;

namespace {

// Python-side RNG wrapper so measurement sampling is explicit and seedable.
struct PyRng {
  Rng rng;
  explicit PyRng(std::uint64_t seed) : rng(seed) {}
};

}  // namespace

PYBIND11_MODULE(_ftpcm, m) {
  m.doc() = "Flag-based fault-tolerant parity readout: state-vector simulator, "
            "Pauli-frame oracle, entanglement witnesses and shuttling compiler";

  py::enum_<Pauli>(m, "Pauli")
      .value("I", Pauli::I)
      .value("X", Pauli::X)
      .value("Y", Pauli::Y)
      .value("Z", Pauli::Z);

  py::enum_<MeasBasis>(m, "MeasBasis")
      .value("Z", MeasBasis::Z)
      .value("X", MeasBasis::X)
      .value("Y", MeasBasis::Y);

  py::enum_<GateMode>(m, "GateMode")
      .value("ideal", GateMode::Ideal)
      .value("hardware", GateMode::Hardware);

  py::enum_<Variant>(m, "Variant")
      .value("pcm_logical", Variant::PcmLogical)
      .value("pcm_inject", Variant::PcmInject)
      .value("gme4", Variant::Gme4)
      .value("gme6", Variant::Gme6);

  m.attr("D1") = kD1;
  m.attr("D2") = kD2;
  m.attr("D3") = kD3;
  m.attr("D4") = kD4;
  m.attr("S") = kS;
  m.attr("F") = kF;

  py::class_<PyRng>(m, "Rng").def(py::init<std::uint64_t>(), py::arg("seed"));

  py::class_<PauliString>(m, "PauliString")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def(py::init<std::size_t, std::size_t, Pauli, int>(), py::arg("n"), py::arg("qubit"),
           py::arg("pauli"), py::arg("phase_pow") = 0)
      .def_static("parse", &PauliString::parse)
      .def("__len__", &PauliString::size)
      .def("__getitem__", [](const PauliString& p, std::size_t q) { return p.at(q); })
      .def("__setitem__", [](PauliString& p, std::size_t q, Pauli v) { p.at(q) = v; })
      .def_property_readonly("phase", &PauliString::phase)
      .def("weight", &PauliString::weight)
      .def("commutes_with", &PauliString::commutes_with)
      .def("__mul__", &PauliString::operator*)
      .def("__eq__", &PauliString::operator==)
      .def("__repr__", &PauliString::to_string)
      .def("__str__", &PauliString::to_string);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<int>(), py::arg("num_qubits"))
      .def_property_readonly("num_qubits", &StateVector::num_qubits)
      .def_property_readonly("amplitudes",
                             [](const StateVector& s) { return s.amplitudes(); })
      .def("set_basis_state", &StateVector::set_basis_state)
      .def("norm", &StateVector::norm)
      .def("apply_local_rotation", &StateVector::apply_local_rotation, py::arg("q"),
           py::arg("theta"), py::arg("phi"))
      .def("apply_pairwise_rotation", &StateVector::apply_pairwise_rotation, py::arg("q1"),
           py::arg("q2"), py::arg("theta"), py::arg("phi"))
      .def("apply_zz", &StateVector::apply_zz, py::arg("i"), py::arg("j"), py::arg("phi"))
      .def("apply_entangling_gate", &StateVector::apply_entangling_gate, py::arg("i"),
           py::arg("j"), py::arg("mode") = GateMode::Ideal)
      .def("apply_pauli", &StateVector::apply_pauli)
      .def("measure_qubit",
           [](StateVector& s, int q, MeasBasis basis, PyRng& rng) {
             return s.measure_qubit(q, basis, rng.rng);
           })
      .def("expectation_pauli", &StateVector::expectation_pauli)
      .def("sample_bitstring",
           [](StateVector& s, const std::vector<MeasBasis>& bases, PyRng& rng) {
             return s.sample_bitstring(bases, rng.rng);
           })
      .def("equals_up_to_global_phase", &StateVector::equals_up_to_global_phase, py::arg("other"),
           py::arg("tol") = 1e-10);

  py::class_<InjectionSite>(m, "InjectionSite")
      .def(py::init([](int position, const PauliString& error) {
             return InjectionSite{position, error};
           }),
           py::arg("position"), py::arg("error"))
      .def_readwrite("position", &InjectionSite::position)
      .def_readwrite("error", &InjectionSite::error);

  py::class_<ReadoutEffect>(m, "ReadoutEffect")
      .def_readonly("syndrome_flip", &ReadoutEffect::syndrome_flip)
      .def_readonly("flag_flip", &ReadoutEffect::flag_flip)
      .def_readonly("data_z_weight", &ReadoutEffect::data_z_weight);

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def_readonly("analysis_start", &Circuit::analysis_start)
      .def_readonly("gate_boundaries", &Circuit::gate_boundaries)
      .def("num_ops", [](const Circuit& c) { return c.ops.size(); })
      .def("to_json", &Circuit::to_json)
      .def_static("from_json", &Circuit::from_json);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("variant", &ExperimentConfig::variant)
      .def_readwrite("data_input", &ExperimentConfig::data_input)
      .def_readwrite("injection", &ExperimentConfig::injection)
      .def_readwrite("shots", &ExperimentConfig::shots)
      .def_readwrite("gate_mode", &ExperimentConfig::gate_mode)
      .def_readwrite("seed", &ExperimentConfig::seed);

  py::class_<SpamRates>(m, "SpamRates")
      .def(py::init<>())
      .def_readwrite("p_dark_err", &SpamRates::p_dark_err)
      .def_readwrite("p_bright_err", &SpamRates::p_bright_err);

  py::class_<NoiseParams>(m, "NoiseParams")
      .def(py::init<>())
      .def_readwrite("p2", &NoiseParams::p2)
      .def_readwrite("p1", &NoiseParams::p1)
      .def_readwrite("p_z_idle", &NoiseParams::p_z_idle)
      .def_readwrite("spam", &NoiseParams::spam)
      .def_readwrite("z_offsets", &NoiseParams::z_offsets)
      .def("enabled", &NoiseParams::enabled)
      .def("to_json", &NoiseParams::to_json)
      .def_static("from_json", &NoiseParams::from_json);

  m.def("paper_default_params", &paper_default_params);
  m.def("no_noise", &no_noise);

  py::class_<ShotTallies>(m, "ShotTallies")
      .def_readonly("shots", &ShotTallies::shots)
      .def_property_readonly("counts",
                             [](const ShotTallies& t) {
                               py::dict d;
                               for (const auto& [outcome, count] : t.counts) {
                                 py::tuple key(kRegisterSize);
                                 for (int q = 0; q < kRegisterSize; ++q) {
                                   key[q] = static_cast<int>(outcome[q]);
                                 }
                                 d[key] = count;
                               }
                               return d;
                             })
      .def("outcome_rate", &ShotTallies::outcome_rate, py::arg("qubit"), py::arg("value"))
      .def("product_mean", &ShotTallies::product_mean);

  m.def("build_pcm_circuit", &build_pcm_circuit);
  m.def(
      "build_gme4_circuit",
      [](const ExperimentConfig& cfg, const std::vector<MeasBasis>& setting) {
        Setting s{};
        for (int q = 0; q < kRegisterSize && q < static_cast<int>(setting.size()); ++q) {
          s[q] = setting[q];
        }
        return build_gme4_circuit(cfg, s);
      },
      py::arg("config"), py::arg("setting"));
  m.def(
      "build_gme6_circuit",
      [](const ExperimentConfig& cfg, const std::vector<MeasBasis>& setting) {
        Setting s{};
        for (int q = 0; q < kRegisterSize && q < static_cast<int>(setting.size()); ++q) {
          s[q] = setting[q];
        }
        return build_gme6_circuit(cfg, s);
      },
      py::arg("config"), py::arg("setting"));
  m.def("run_shots", &run_shots, py::arg("circuit"), py::arg("noise"), py::arg("shots"),
        py::arg("seed"));
  m.def("final_state", &final_state);
  m.def("pre_analysis_state", &pre_analysis_state);
  m.def("parity_fidelity", &parity_fidelity);
  m.def("flag_postselect", [](const ShotTallies& t) {
    auto res = flag_postselect(t);
    return py::make_tuple(res.kept_fraction, res.kept);
  });
  m.def("input_parity", &input_parity);

  m.def("propagate_to_end", &propagate_to_end, py::arg("circuit"), py::arg("site"));
  m.def("predict_readout_effect", &predict_readout_effect);

  py::class_<GeneratorSet>(m, "GeneratorSet")
      .def_readonly("n", &GeneratorSet::n)
      .def_readonly("generators", &GeneratorSet::generators)
      .def_readonly("conditional_g4_sign", &GeneratorSet::conditional_g4_sign);

  py::class_<GeneratorEstimate>(m, "GeneratorEstimate")
      .def_readonly("generator", &GeneratorEstimate::generator)
      .def_readonly("value", &GeneratorEstimate::value)
      .def_property_readonly("stderr", [](const GeneratorEstimate& e) { return e.stderr_; })
      .def_readonly("shots", &GeneratorEstimate::shots);

  py::class_<WitnessReport>(m, "WitnessReport")
      .def_readonly("n", &WitnessReport::n)
      .def_readonly("threshold", &WitnessReport::threshold)
      .def_readonly("generators", &WitnessReport::generators)
      .def_readonly("witness", &WitnessReport::witness)
      .def_property_readonly("stderr", [](const WitnessReport& r) { return r.witness_stderr; })
      .def_readonly("certified", &WitnessReport::certified)
      .def("to_json", &WitnessReport::to_json)
      .def("to_csv", &WitnessReport::to_csv);

  m.def("generator_set", &generator_set, py::arg("n"));
  m.def("measurement_setting", [](const PauliString& g) {
    const Setting s = measurement_setting(g);
    return std::vector<MeasBasis>(s.begin(), s.end());
  });
  m.def("witness_value", &witness_value, py::arg("tallies_per_generator"), py::arg("set"),
        py::arg("k_sigma") = 3.0);
  m.def("estimate_generator", &estimate_generator);
  m.def("certify_gme", &certify_gme);
  m.def("witness_expectation", &witness_expectation);

  py::class_<TrapSpec>(m, "TrapSpec")
      .def(py::init<>())
      .def_readwrite("num_segments", &TrapSpec::num_segments)
      .def_readwrite("liz_index", &TrapSpec::liz_index)
      .def_readwrite("segment_pitch_mm", &TrapSpec::segment_pitch_mm)
      .def_readwrite("min_gap_segments", &TrapSpec::min_gap_segments)
      .def_readwrite("max_ions_per_well", &TrapSpec::max_ions_per_well)
      .def("to_json", &TrapSpec::to_json)
      .def_static("from_json", &TrapSpec::from_json);

  py::class_<Well>(m, "Well")
      .def_readwrite("segment", &Well::segment)
      .def_readwrite("ions", &Well::ions);

  py::class_<TrapState>(m, "TrapState")
      .def(py::init<>())
      .def_readwrite("wells", &TrapState::wells)
      .def("segment_of", &TrapState::segment_of)
      .def("span", &TrapState::span)
      .def("__repr__", &TrapState::to_string);

  m.def("initial_layout", &initial_layout, py::arg("spec") = TrapSpec{});

  py::class_<DurationTable>(m, "DurationTable")
      .def(py::init<>())
      .def("to_json", &DurationTable::to_json)
      .def_static("from_json", &DurationTable::from_json);

  py::class_<ConstraintViolation>(m, "ConstraintViolation")
      .def_readonly("step", &ConstraintViolation::step)
      .def_readonly("detail", &ConstraintViolation::detail)
      .def_property_readonly("rule",
                             [](const ConstraintViolation& v) { return rule_name(v.rule); });

  py::class_<Schedule>(m, "Schedule")
      .def("num_ops", &Schedule::num_ops)
      .def("num_steps", [](const Schedule& s) { return s.steps.size(); })
      .def("to_json", &Schedule::to_json)
      .def_static("from_json", &Schedule::from_json)
      .def("render_timeline", &Schedule::render_timeline);

  py::class_<GateRequest>(m, "GateRequest")
      .def_static("entangle", &GateRequest::entangle)
      .def_static("rotation", &GateRequest::rotation);

  py::class_<CompileOptions>(m, "CompileOptions")
      .def(py::init<>())
      .def_readwrite("parallel_moves", &CompileOptions::parallel_moves)
      .def_readwrite("max_plan_ops", &CompileOptions::max_plan_ops)
      .def_readwrite("max_extent_segments", &CompileOptions::max_extent_segments);


  m.def("pcm_gate_list", &pcm_gate_list);
  m.def(
      "compile_schedule",
      [](const std::vector<GateRequest>& gates, const TrapState& layout, const TrapSpec& spec,
         const DurationTable& durations) { return compile(gates, layout, spec, durations); },
      py::arg("gates"), py::arg("layout"), py::arg("spec") = TrapSpec{},
      py::arg("durations") = DurationTable{});
  m.def(
      "validate_schedule",
      [](const Schedule& schedule, const TrapState& layout, const TrapSpec& spec,
         const DurationTable& durations) { return validate(schedule, layout, spec, durations); },
      py::arg("schedule"), py::arg("layout"), py::arg("spec") = TrapSpec{},
      py::arg("durations") = DurationTable{});
  m.def("prep_and_readout_schedule", &prep_and_readout_schedule, py::arg("layout"),
        py::arg("spec") = TrapSpec{}, py::arg("durations") = DurationTable{},
        py::arg("data_flips") = std::array<bool, 4>{});
  m.def("full_pcm_schedule", &full_pcm_schedule, py::arg("layout"), py::arg("spec") = TrapSpec{},
        py::arg("durations") = DurationTable{},
        py::arg("data_flips") = std::array<bool, 4>{},
        py::arg("options") = CompileOptions{});
  m.def("timing_budget", [](const Schedule& schedule, const DurationTable& durations) {
    const TimingBudget budget = timing_budget(schedule, durations);
    py::dict out;
    for (const auto& [phase, b] : budget.phases) {
      py::dict entry;
      entry["shuttle_us"] = b.shuttle_us;
      entry["laser_us"] = b.laser_us;
      entry["total_us"] = b.total();
      out[phase_name(phase).c_str()] = entry;
    }
    return out;
  });

  py::register_exception<InfeasibleError>(m, "InfeasibleError");
}
