#include "ftpcm/schedule.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ftpcm/compiler.hpp"
#include "json.hpp"

namespace ftpcm {

std::string DurationTable::to_json() const {
  nlohmann::json j;
  j["move_per_segment_us"] = move_per_segment_us;
  j["settle_before_laser_us"] = settle_before_laser_us;
  j["separate_us"] = separate_us;
  j["merge_us"] = merge_us;
  j["swap_us"] = swap_us;
  j["entangling_gate_us"] = entangling_gate_us;
  j["local_rotation_us"] = local_rotation_us;
  j["shelving_per_pair_us"] = shelving_per_pair_us;
  j["detection_per_ion_us"] = detection_per_ion_us;
  j["doppler_per_pair_us"] = doppler_per_pair_us;
  j["sideband_per_pair_us"] = sideband_per_pair_us;
  j["sideband_second_per_pair_us"] = sideband_second_per_pair_us;
  j["pump_sequence_us"] = pump_sequence_us;
  return j.dump(2);
}

DurationTable DurationTable::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  DurationTable t;
  t.move_per_segment_us = j.value("move_per_segment_us", t.move_per_segment_us);
  t.settle_before_laser_us = j.value("settle_before_laser_us", t.settle_before_laser_us);
  t.separate_us = j.value("separate_us", t.separate_us);
  t.merge_us = j.value("merge_us", t.merge_us);
  t.swap_us = j.value("swap_us", t.swap_us);
  t.entangling_gate_us = j.value("entangling_gate_us", t.entangling_gate_us);
  t.local_rotation_us = j.value("local_rotation_us", t.local_rotation_us);
  t.shelving_per_pair_us = j.value("shelving_per_pair_us", t.shelving_per_pair_us);
  t.detection_per_ion_us = j.value("detection_per_ion_us", t.detection_per_ion_us);
  t.doppler_per_pair_us = j.value("doppler_per_pair_us", t.doppler_per_pair_us);
  t.sideband_per_pair_us = j.value("sideband_per_pair_us", t.sideband_per_pair_us);
  t.sideband_second_per_pair_us =
      j.value("sideband_second_per_pair_us", t.sideband_second_per_pair_us);
  t.pump_sequence_us = j.value("pump_sequence_us", t.pump_sequence_us);
  for (double v : {t.move_per_segment_us, t.settle_before_laser_us, t.separate_us, t.merge_us,
                   t.swap_us, t.entangling_gate_us, t.local_rotation_us, t.shelving_per_pair_us,
                   t.detection_per_ion_us, t.doppler_per_pair_us, t.sideband_per_pair_us,
                   t.sideband_second_per_pair_us, t.pump_sequence_us}) {
    if (v <= 0.0) throw std::invalid_argument("durations must be positive");
  }
  return t;
}

std::size_t Schedule::num_ops() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.size();
  return n;
}

void Schedule::append_sequential(std::vector<PrimitiveOp> ops) {
  for (auto& op : ops) steps.push_back({std::move(op)});
}

void Schedule::append(const Schedule& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

const char* primitive_kind_name(PrimitiveOp::Kind k) {
  switch (k) {
    case PrimitiveOp::Kind::Move: return "move";
    case PrimitiveOp::Kind::Separate: return "separate";
    case PrimitiveOp::Kind::Merge: return "merge";
    case PrimitiveOp::Kind::Swap: return "swap";
    case PrimitiveOp::Kind::Laser: return "laser";
  }
  throw std::logic_error("bad kind");
}

PrimitiveOp::Kind primitive_kind_from_name(const std::string& s) {
  if (s == "move") return PrimitiveOp::Kind::Move;
  if (s == "separate") return PrimitiveOp::Kind::Separate;
  if (s == "merge") return PrimitiveOp::Kind::Merge;
  if (s == "swap") return PrimitiveOp::Kind::Swap;
  if (s == "laser") return PrimitiveOp::Kind::Laser;
  throw std::invalid_argument("unknown primitive kind: " + s);
}

LaserKind laser_kind_from_name(const std::string& s) {
  if (s == "entangle") return LaserKind::Entangle;
  if (s == "rotation") return LaserKind::Rotation;
  if (s == "cool") return LaserKind::Cool;
  if (s == "pump") return LaserKind::Pump;
  if (s == "shelve") return LaserKind::Shelve;
  if (s == "detect") return LaserKind::Detect;
  throw std::invalid_argument("unknown laser kind: " + s);
}

SchedulePhase phase_from_name(const std::string& s) {
  if (s == "prep") return SchedulePhase::Prep;
  if (s == "gate_sequence") return SchedulePhase::GateSequence;
  if (s == "readout") return SchedulePhase::Readout;
  throw std::invalid_argument("unknown phase: " + s);
}

}  // namespace

std::string Schedule::to_json() const {
  nlohmann::json j;
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& group : steps) {
    nlohmann::json group_json = nlohmann::json::array();
    for (const auto& op : group) {
      nlohmann::json o;
      o["kind"] = primitive_kind_name(op.kind);
      o["segment"] = op.segment;
      if (op.segment2 >= 0) o["segment2"] = op.segment2;
      if (op.kind == PrimitiveOp::Kind::Laser) {
        o["laser"] = laser_kind_name(op.laser);
        o["targets"] = op.targets;
        o["settle_us"] = op.settle_us;
      }
      o["duration_us"] = op.duration_us;
      o["phase"] = phase_name(op.phase);
      group_json.push_back(std::move(o));
    }
    steps_json.push_back(std::move(group_json));
  }
  j["steps"] = std::move(steps_json);
  return j.dump(2);
}

Schedule Schedule::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Schedule sched;
  for (const auto& group_json : j.at("steps")) {
    std::vector<PrimitiveOp> group;
    for (const auto& o : group_json) {
      PrimitiveOp op;
      op.kind = primitive_kind_from_name(o.at("kind").get<std::string>());
      op.segment = o.value("segment", -1);
      op.segment2 = o.value("segment2", -1);
      if (o.contains("laser")) op.laser = laser_kind_from_name(o.at("laser").get<std::string>());
      if (o.contains("targets")) op.targets = o.at("targets").get<std::vector<int>>();
      op.duration_us = o.value("duration_us", 0.0);
      op.settle_us = o.value("settle_us", 0.0);
      op.phase = phase_from_name(o.value("phase", "gate_sequence"));
      group.push_back(std::move(op));
    }
    sched.steps.push_back(std::move(group));
  }
  return sched;
}

std::string Schedule::render_timeline(const TrapState& layout, const TrapSpec& spec) const {
  // One row per ion; co-trapped ions show the same segment.
  std::vector<TrapState> states;
  states.push_back(layout);
  TrapState st = layout;
  for (const auto& group : steps) {
    for (const auto& op : group) st = apply_primitive(st, op, spec);
    states.push_back(st);
  }
  std::ostringstream out;
  for (int q = 0; q < kRegisterSize; ++q) {
    out << std::setw(2) << qubit_name(q) << " |";
    for (const auto& s : states) {
      const int seg = s.segment_of(q);
      out << std::setw(3) << seg;
    }
    out << "\n";
  }
  return out.str();
}

TrapState replay(const Schedule& schedule, const TrapState& layout, const TrapSpec& spec) {
  TrapState st = layout;
  for (const auto& group : schedule.steps) {
    for (const auto& op : group) st = apply_primitive(st, op, spec);
  }
  return st;
}

namespace {

struct MotionRange {
  int lo, hi;
};

bool overlaps(const MotionRange& a, const MotionRange& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

MotionRange motion_range(const PrimitiveOp& op, const TrapSpec& spec) {
  switch (op.kind) {
    case PrimitiveOp::Kind::Move:
      return {std::min(op.segment, op.segment2), std::max(op.segment, op.segment2)};
    case PrimitiveOp::Kind::Separate:
    case PrimitiveOp::Kind::Merge:
      return {spec.liz_index - spec.staging_offset(), spec.liz_index + spec.staging_offset()};
    default:
      return {op.segment, op.segment};
  }
}

}  // namespace

std::vector<ConstraintViolation> validate(const Schedule& schedule, const TrapState& layout,
                                          const TrapSpec& spec, const DurationTable& durations,
                                          const ValidationOptions& options) {
  std::vector<ConstraintViolation> violations;
  TrapState st = layout;
  bool motion_since_laser = false;
  std::vector<std::pair<int, int>> entangle_order;

  for (std::size_t step = 0; step < schedule.steps.size(); ++step) {
    const auto& group = schedule.steps[step];
    if (group.size() > 1) {
      bool group_ok = true;
      for (const auto& op : group) {
        if (op.kind != PrimitiveOp::Kind::Move) {
          violations.push_back({ConstraintViolation::Rule::ParallelOverlap, step,
                                "only moves may run in parallel"});
          group_ok = false;
        }
      }
      for (std::size_t a = 0; a + 1 < group.size() && group_ok; ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          if (overlaps(motion_range(group[a], spec), motion_range(group[b], spec))) {
            violations.push_back({ConstraintViolation::Rule::ParallelOverlap, step,
                                  "parallel moves sweep overlapping segments"});
            group_ok = false;
            break;
          }
        }
      }
      if (!group_ok) continue;
    }
    for (const auto& op : group) {
      try {
        st = apply_primitive(st, op, spec);
      } catch (const ConstraintError& e) {
        ConstraintViolation v = e.violation;
        v.step = step;
        violations.push_back(std::move(v));
        continue;
      }
      if (op.kind == PrimitiveOp::Kind::Laser) {
        if (motion_since_laser && op.settle_us + 1e-9 < durations.settle_before_laser_us) {
          violations.push_back({ConstraintViolation::Rule::Settle, step,
                                "laser fired without the settle interval"});
        }
        motion_since_laser = false;
        if (op.laser == LaserKind::Entangle && op.targets.size() == 2) {
          entangle_order.emplace_back(op.targets[0], op.targets[1]);
        }
      } else {
        motion_since_laser = true;
      }
    }
  }

  if (!options.expected_entangle_order.empty()) {
    auto same_pair = [](std::pair<int, int> a, std::pair<int, int> b) {
      return (a.first == b.first && a.second == b.second) ||
             (a.first == b.second && a.second == b.first);
    };
    bool ok = entangle_order.size() == options.expected_entangle_order.size();
    if (ok) {
      for (std::size_t i = 0; i < entangle_order.size(); ++i) {
        if (!same_pair(entangle_order[i], options.expected_entangle_order[i])) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      violations.push_back({ConstraintViolation::Rule::GateOrder, schedule.steps.size(),
                            "entangling gates out of order"});
    }
  }
  return violations;
}

TimingBudget timing_budget(const Schedule& schedule, const DurationTable& durations) {
  (void)durations;  // durations are stored on the ops at build time
  TimingBudget budget;
  for (const auto& group : schedule.steps) {
    if (group.empty()) continue;
    const SchedulePhase phase = group.front().phase;
    for (const auto& op : group) {
      if (op.phase != phase) throw std::invalid_argument("mixed phases within one step");
    }
    double wall = 0.0;
    double laser_part = 0.0;
    for (const auto& op : group) {
      const double total = op.duration_us + op.settle_us;
      wall = std::max(wall, total);
      if (op.kind == PrimitiveOp::Kind::Laser) laser_part = std::max(laser_part, op.duration_us);
    }
    auto& b = budget.phases[phase];
    const double laser_credit = std::min(laser_part, wall);
    b.laser_us += laser_credit;
    b.shuttle_us += wall - laser_credit;
  }
  return budget;
}

PhaseBudget TimingBudget::total() const {
  PhaseBudget t;
  for (const auto& [phase, b] : phases) {
    t.shuttle_us += b.shuttle_us;
    t.laser_us += b.laser_us;
  }
  return t;
}

std::string TimingBudget::to_json() const {
  nlohmann::json j;
  for (const auto& [phase, b] : phases) {
    j["phases"][phase_name(phase)] = {
        {"shuttle_us", b.shuttle_us}, {"laser_us", b.laser_us}, {"total_us", b.total()}};
  }
  const PhaseBudget t = total();
  j["total"] = {{"shuttle_us", t.shuttle_us}, {"laser_us", t.laser_us}, {"total_us", t.total()}};
  return j.dump(2);
}

namespace {

/// Helper that threads a TrapState through plan fragments while stamping
/// durations and phases.
class SequenceBuilder {
 public:
  SequenceBuilder(TrapState state, const TrapSpec& spec, const DurationTable& durations,
                  SchedulePhase phase)
      : state_(std::move(state)), spec_(spec), durations_(durations), phase_(phase),
        limits_(PlanLimits::extent_window(spec, 24)) {}

  const TrapState& state() const { return state_; }
  Schedule take() { return std::move(schedule_); }
  bool motion_pending() const { return motion_since_laser_; }

  void push(PrimitiveOp op) {
    op.phase = phase_;
    stamp_duration(op);
    state_ = apply_primitive(state_, op, spec_);
    if (op.kind == PrimitiveOp::Kind::Laser) {
      motion_since_laser_ = false;
    } else {
      motion_since_laser_ = true;
    }
    schedule_.steps.push_back({std::move(op)});
  }

  void push_plan(const std::vector<PrimitiveOp>& plan) {
    for (const auto& op : plan) push(op);
  }

  void bring_pair_to_liz(int a, int b) {
    auto plan = plan_pair_at_liz(state_, a, b, spec_, limits_);
    if (!plan) throw InfeasibleError("cannot co-trap " + qubit_name(a) + "," + qubit_name(b));
    push_plan(*plan);
  }

  void bring_single_to_liz(int q) {
    auto plan = plan_single_at_liz(state_, q, spec_, limits_);
    if (!plan) throw InfeasibleError("cannot single " + qubit_name(q) + " at the LIZ");
    push_plan(*plan);
  }

  void restore(const TrapState& target) {
    auto plan = plan_to_state(state_, target, spec_, limits_);
    if (!plan) throw InfeasibleError("cannot restore layout");
    push_plan(*plan);
  }

  void fire(LaserKind kind, std::vector<int> targets, double duration_us) {
    PrimitiveOp op = PrimitiveOp::laser_op(kind, std::move(targets), spec_.liz_index);
    op.duration_us = duration_us;
    op.settle_us = motion_since_laser_ ? durations_.settle_before_laser_us : 0.0;
    push(std::move(op));
  }

 private:
  void stamp_duration(PrimitiveOp& op) {
    switch (op.kind) {
      case PrimitiveOp::Kind::Move:
        op.duration_us = durations_.move_per_segment_us * std::abs(op.segment2 - op.segment);
        break;
      case PrimitiveOp::Kind::Separate:
        op.duration_us = durations_.separate_us;
        break;
      case PrimitiveOp::Kind::Merge:
        op.duration_us = durations_.merge_us;
        break;
      case PrimitiveOp::Kind::Swap:
        op.duration_us = durations_.swap_us;
        break;
      case PrimitiveOp::Kind::Laser:
        break;  // set by fire()
    }
  }

  TrapState state_;
  const TrapSpec& spec_;
  const DurationTable& durations_;
  SchedulePhase phase_;
  PlanLimits limits_;
  Schedule schedule_;
  bool motion_since_laser_ = false;
};

}  // namespace

Schedule prep_and_readout_schedule(const TrapState& layout, const TrapSpec& spec,
                                   const DurationTable& durations,
                                   const std::array<bool, 4>& data_flips) {
  const TrapState expected = initial_layout(spec);
  bool matches = layout.wells.size() == expected.wells.size();
  for (std::size_t i = 0; matches && i < layout.wells.size(); ++i) {
    matches = layout.wells[i].ions == expected.wells[i].ions;
  }
  if (!matches) throw std::invalid_argument("prep/readout sequence expects the standard layout");

  const std::vector<std::vector<int>> doppler_order = {{kD3, kD4}, {kS, kF}, {kD2, kD1}};
  const std::vector<std::vector<int>> sideband_order = {{kD2, kD1}, {kS, kF}, {kD3, kD4}};
  const std::vector<std::vector<int>> shelve_order = {{kD3, kD4}, {kS, kF}, {kD2, kD1}};

  Schedule out;

  // --- register preparation ---
  {
    SequenceBuilder b(layout, spec, durations, SchedulePhase::Prep);
    for (const auto& pair : doppler_order) {
      b.bring_pair_to_liz(pair[0], pair[1]);
      b.fire(LaserKind::Cool, pair, durations.doppler_per_pair_us);
    }
    for (const auto& pair : sideband_order) {
      b.bring_pair_to_liz(pair[0], pair[1]);
      b.fire(LaserKind::Cool, pair, durations.sideband_per_pair_us);
    }
    for (const auto& pair : sideband_order) {
      b.bring_pair_to_liz(pair[0], pair[1]);
      b.fire(LaserKind::Cool, pair, durations.sideband_second_per_pair_us);
    }
    for (const auto& pair : sideband_order) {
      b.bring_pair_to_liz(pair[0], pair[1]);
      b.fire(LaserKind::Pump, pair, durations.pump_sequence_us);
    }
    // Optional logical-state preparation: every data qubit visits the LIZ,
    // flips fire only where requested.
    for (const std::vector<int>& pair : {std::vector<int>{kD2, kD1}, std::vector<int>{kD3, kD4}}) {
      for (int q : pair) {
        b.bring_single_to_liz(q);
        if (data_flips[q]) b.fire(LaserKind::Rotation, {q}, durations.local_rotation_us);
      }
    }
    b.restore(layout);
    out.append(b.take());
  }

  // --- readout ---
  {
    SequenceBuilder b(layout, spec, durations, SchedulePhase::Readout);
    for (const auto& pair : shelve_order) {
      b.bring_pair_to_liz(pair[0], pair[1]);
      b.fire(LaserKind::Shelve, pair, durations.shelving_per_pair_us);
    }
    // Two detection rounds per qubit, pairs processed in reverse shelving
    // order, each ion singled at the LIZ for fluorescence collection.
    for (int round = 0; round < 2; ++round) {
      for (auto it = shelve_order.rbegin(); it != shelve_order.rend(); ++it) {
        for (int q : *it) {
          b.bring_single_to_liz(q);
          b.fire(LaserKind::Detect, {q}, durations.detection_per_ion_us);
        }
      }
    }
    b.restore(layout);
    out.append(b.take());
  }
  return out;
}

}  // namespace ftpcm
