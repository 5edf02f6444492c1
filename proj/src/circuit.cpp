#include "ftpcm/circuit.hpp"

#include <array>
#include <stdexcept>

#include "json.hpp"

namespace ftpcm {

namespace {
constexpr std::array<const char*, 6> kQubitNames = {"d1", "d2", "d3", "d4", "s", "f"};

const char* kind_name(CircuitOp::Kind k) {
  switch (k) {
    case CircuitOp::Kind::PrepZero: return "prep_zero";
    case CircuitOp::Kind::Rotation: return "rotation";
    case CircuitOp::Kind::PairRotation: return "pair_rotation";
    case CircuitOp::Kind::Entangle: return "entangle";
    case CircuitOp::Kind::Inject: return "inject";
    case CircuitOp::Kind::DephaseExposure: return "dephase_exposure";
    case CircuitOp::Kind::Measure: return "measure";
  }
  throw std::logic_error("bad op kind");
}

CircuitOp::Kind kind_from_name(const std::string& s) {
  if (s == "prep_zero") return CircuitOp::Kind::PrepZero;
  if (s == "rotation") return CircuitOp::Kind::Rotation;
  if (s == "pair_rotation") return CircuitOp::Kind::PairRotation;
  if (s == "entangle") return CircuitOp::Kind::Entangle;
  if (s == "inject") return CircuitOp::Kind::Inject;
  if (s == "dephase_exposure") return CircuitOp::Kind::DephaseExposure;
  if (s == "measure") return CircuitOp::Kind::Measure;
  throw std::invalid_argument("unknown op kind: " + s);
}

char basis_char(MeasBasis b) {
  switch (b) {
    case MeasBasis::X: return 'X';
    case MeasBasis::Y: return 'Y';
    case MeasBasis::Z: return 'Z';
  }
  throw std::logic_error("bad basis");
}

MeasBasis basis_from_char(char c) {
  switch (c) {
    case 'X': return MeasBasis::X;
    case 'Y': return MeasBasis::Y;
    case 'Z': return MeasBasis::Z;
    default: throw std::invalid_argument("bad basis char");
  }
}
}  // namespace

std::string qubit_name(int q) {
  if (q < 0 || q >= kRegisterSize) throw std::out_of_range("qubit index");
  return kQubitNames[q];
}

int qubit_from_name(const std::string& name) {
  for (int q = 0; q < kRegisterSize; ++q) {
    if (name == kQubitNames[q]) return q;
  }
  throw std::invalid_argument("unknown qubit name: " + name);
}

CircuitOp CircuitOp::prep_zero() {
  CircuitOp op;
  op.kind = Kind::PrepZero;
  return op;
}

CircuitOp CircuitOp::rotation(int q, double theta, double phi) {
  CircuitOp op;
  op.kind = Kind::Rotation;
  op.q1 = q;
  op.theta = theta;
  op.phi = phi;
  return op;
}

CircuitOp CircuitOp::pair_rotation(int q1, int q2, double theta, double phi) {
  CircuitOp op;
  op.kind = Kind::PairRotation;
  op.q1 = q1;
  op.q2 = q2;
  op.theta = theta;
  op.phi = phi;
  return op;
}

CircuitOp CircuitOp::entangle(int q1, int q2, GateMode mode) {
  CircuitOp op;
  op.kind = Kind::Entangle;
  op.q1 = q1;
  op.q2 = q2;
  op.mode = mode;
  return op;
}

CircuitOp CircuitOp::inject(PauliString p) {
  CircuitOp op;
  op.kind = Kind::Inject;
  op.pauli = std::move(p);
  return op;
}

CircuitOp CircuitOp::dephase_exposure(int q) {
  CircuitOp op;
  op.kind = Kind::DephaseExposure;
  op.q1 = q;
  return op;
}

CircuitOp CircuitOp::measure(int q, MeasBasis basis) {
  CircuitOp op;
  op.kind = Kind::Measure;
  op.q1 = q;
  op.basis = basis;
  return op;
}

std::string Circuit::to_json() const {
  nlohmann::json j;
  j["num_qubits"] = num_qubits;
  j["analysis_start"] = analysis_start;
  j["gate_boundaries"] = gate_boundaries;
  nlohmann::json ops_json = nlohmann::json::array();
  for (const auto& op : ops) {
    nlohmann::json o;
    o["kind"] = kind_name(op.kind);
    if (op.q1 >= 0) o["q1"] = op.q1;
    if (op.q2 >= 0) o["q2"] = op.q2;
    switch (op.kind) {
      case CircuitOp::Kind::Rotation:
      case CircuitOp::Kind::PairRotation:
        o["theta"] = op.theta;
        o["phi"] = op.phi;
        break;
      case CircuitOp::Kind::Entangle:
        o["mode"] = op.mode == GateMode::Ideal ? "ideal" : "hardware";
        break;
      case CircuitOp::Kind::Inject:
        o["pauli"] = op.pauli.to_string();
        break;
      case CircuitOp::Kind::Measure:
        o["basis"] = std::string(1, basis_char(op.basis));
        break;
      default:
        break;
    }
    ops_json.push_back(std::move(o));
  }
  j["ops"] = std::move(ops_json);
  return j.dump(2);
}

Circuit Circuit::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Circuit c;
  c.num_qubits = j.at("num_qubits").get<int>();
  c.analysis_start = j.at("analysis_start").get<std::size_t>();
  c.gate_boundaries = j.at("gate_boundaries").get<std::vector<std::size_t>>();
  for (const auto& o : j.at("ops")) {
    CircuitOp op;
    op.kind = kind_from_name(o.at("kind").get<std::string>());
    op.q1 = o.value("q1", -1);
    op.q2 = o.value("q2", -1);
    op.theta = o.value("theta", 0.0);
    op.phi = o.value("phi", 0.0);
    if (o.contains("mode")) {
      op.mode = o.at("mode").get<std::string>() == "hardware" ? GateMode::Hardware : GateMode::Ideal;
    }
    if (o.contains("pauli")) op.pauli = PauliString::parse(o.at("pauli").get<std::string>());
    if (o.contains("basis")) op.basis = basis_from_char(o.at("basis").get<std::string>().at(0));
    c.ops.push_back(std::move(op));
  }
  return c;
}

}  // namespace ftpcm
