#include "ftpcm/trap.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ftpcm {

std::string TrapSpec::to_json() const {
  nlohmann::json j;
  j["num_segments"] = num_segments;
  j["liz_index"] = liz_index;
  j["segment_pitch_mm"] = segment_pitch_mm;
  j["min_gap_segments"] = min_gap_segments;
  j["max_ions_per_well"] = max_ions_per_well;
  return j.dump(2);
}

TrapSpec TrapSpec::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TrapSpec s;
  s.num_segments = j.value("num_segments", 32);
  s.liz_index = j.value("liz_index", 19);
  s.segment_pitch_mm = j.value("segment_pitch_mm", 0.2);
  s.min_gap_segments = j.value("min_gap_segments", 2);
  s.max_ions_per_well = j.value("max_ions_per_well", 2);
  if (s.liz_index < 0 || s.liz_index >= s.num_segments) {
    throw std::invalid_argument("liz_index must lie inside the trap");
  }
  if (s.min_gap_segments < 0) throw std::invalid_argument("min_gap_segments must be >= 0");
  return s;
}

void TrapState::sort_wells() {
  std::sort(wells.begin(), wells.end(),
            [](const Well& a, const Well& b) { return a.segment < b.segment; });
}

const Well* TrapState::well_at(int segment) const {
  for (const auto& w : wells) {
    if (w.segment == segment) return &w;
  }
  return nullptr;
}

Well* TrapState::well_at(int segment) {
  for (auto& w : wells) {
    if (w.segment == segment) return &w;
  }
  return nullptr;
}

int TrapState::segment_of(int qubit) const {
  const Well* w = well_of(qubit);
  return w ? w->segment : -1;
}

const Well* TrapState::well_of(int qubit) const {
  for (const auto& w : wells) {
    for (int ion : w.ions) {
      if (ion == qubit) return &w;
    }
  }
  return nullptr;
}

int TrapState::span() const {
  if (wells.empty()) return 0;
  int lo = wells.front().segment, hi = wells.front().segment;
  for (const auto& w : wells) {
    lo = std::min(lo, w.segment);
    hi = std::max(hi, w.segment);
  }
  return hi - lo + 1;
}

std::optional<std::string> TrapState::check(const TrapSpec& spec) const {
  std::vector<int> seen;
  for (const auto& w : wells) {
    if (w.segment < 0 || w.segment >= spec.num_segments) {
      return "well outside the trap at segment " + std::to_string(w.segment);
    }
    if (w.ions.empty() || static_cast<int>(w.ions.size()) > spec.max_ions_per_well) {
      return "well occupancy out of range at segment " + std::to_string(w.segment);
    }
    for (int ion : w.ions) seen.push_back(ion);
  }
  std::vector<int> sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return "duplicate qubit in layout";
  }
  for (std::size_t i = 1; i < wells.size(); ++i) {
    const int d = wells[i].segment - wells[i - 1].segment;
    if (d <= 0) return "wells out of order";
    if (d < spec.min_well_distance()) {
      return "gap violation between segments " + std::to_string(wells[i - 1].segment) + " and " +
             std::to_string(wells[i].segment);
    }
  }
  return std::nullopt;
}

std::string TrapState::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < wells.size(); ++i) {
    if (i) out << " ";
    out << "[";
    for (std::size_t k = 0; k < wells[i].ions.size(); ++k) {
      if (k) out << ",";
      out << qubit_name(wells[i].ions[k]);
    }
    out << "]@" << wells[i].segment;
  }
  return out.str();
}

TrapState initial_layout(const TrapSpec& spec) {
  TrapState st;
  const int liz = spec.liz_index;
  const int off = 2 * spec.min_well_distance();
  st.wells.push_back({liz - off, {kD2, kD1}});
  st.wells.push_back({liz, {kS, kF}});
  st.wells.push_back({liz + off, {kD3, kD4}});
  st.sort_wells();
  if (auto problem = st.check(spec)) throw std::invalid_argument("bad initial layout: " + *problem);
  return st;
}

std::string laser_kind_name(LaserKind k) {
  switch (k) {
    case LaserKind::Entangle: return "entangle";
    case LaserKind::Rotation: return "rotation";
    case LaserKind::Cool: return "cool";
    case LaserKind::Pump: return "pump";
    case LaserKind::Shelve: return "shelve";
    case LaserKind::Detect: return "detect";
  }
  throw std::logic_error("bad laser kind");
}

std::string phase_name(SchedulePhase p) {
  switch (p) {
    case SchedulePhase::Prep: return "prep";
    case SchedulePhase::GateSequence: return "gate_sequence";
    case SchedulePhase::Readout: return "readout";
  }
  throw std::logic_error("bad phase");
}

std::string rule_name(ConstraintViolation::Rule r) {
  switch (r) {
    case ConstraintViolation::Rule::Gap: return "gap";
    case ConstraintViolation::Rule::LizOnly: return "liz_only";
    case ConstraintViolation::Rule::Occupancy: return "occupancy";
    case ConstraintViolation::Rule::Crossing: return "crossing";
    case ConstraintViolation::Rule::Bounds: return "bounds";
    case ConstraintViolation::Rule::UnknownWell: return "unknown_well";
    case ConstraintViolation::Rule::Settle: return "settle";
    case ConstraintViolation::Rule::GateOrder: return "gate_order";
    case ConstraintViolation::Rule::ParallelOverlap: return "parallel_overlap";
  }
  throw std::logic_error("bad rule");
}

PrimitiveOp PrimitiveOp::move(int from, int to) {
  PrimitiveOp op;
  op.kind = Kind::Move;
  op.segment = from;
  op.segment2 = to;
  return op;
}

PrimitiveOp PrimitiveOp::separate(int liz) {
  PrimitiveOp op;
  op.kind = Kind::Separate;
  op.segment = liz;
  return op;
}

PrimitiveOp PrimitiveOp::merge(int left, int right) {
  PrimitiveOp op;
  op.kind = Kind::Merge;
  op.segment = left;
  op.segment2 = right;
  return op;
}

PrimitiveOp PrimitiveOp::swap(int liz) {
  PrimitiveOp op;
  op.kind = Kind::Swap;
  op.segment = liz;
  return op;
}

PrimitiveOp PrimitiveOp::laser_op(LaserKind kind, std::vector<int> targets, int liz) {
  PrimitiveOp op;
  op.kind = Kind::Laser;
  op.laser = kind;
  op.targets = std::move(targets);
  op.segment = liz;
  return op;
}

namespace {

[[noreturn]] void fail(ConstraintViolation::Rule rule, std::string detail) {
  throw ConstraintError({rule, 0, std::move(detail)});
}

void check_or_fail(const TrapState& st, const TrapSpec& spec, ConstraintViolation::Rule rule) {
  if (auto problem = st.check(spec)) fail(rule, *problem);
}

}  // namespace

TrapState apply_primitive(const TrapState& state, const PrimitiveOp& op, const TrapSpec& spec) {
  TrapState next = state;
  switch (op.kind) {
    case PrimitiveOp::Kind::Move: {
      Well* w = next.well_at(op.segment);
      if (!w) fail(ConstraintViolation::Rule::UnknownWell,
                   "no well at segment " + std::to_string(op.segment));
      if (op.segment2 < 0 || op.segment2 >= spec.num_segments) {
        fail(ConstraintViolation::Rule::Bounds,
             "move target outside the trap: " + std::to_string(op.segment2));
      }
      // A well may not cross a neighbor.
      for (const auto& other : state.wells) {
        if (other.segment == op.segment) continue;
        const bool was_left = other.segment < op.segment;
        const bool ends_left = other.segment < op.segment2;
        if (was_left != ends_left || other.segment == op.segment2) {
          fail(ConstraintViolation::Rule::Crossing,
               "move " + std::to_string(op.segment) + "->" + std::to_string(op.segment2) +
                   " crosses the well at " + std::to_string(other.segment));
        }
      }
      w->segment = op.segment2;
      next.sort_wells();
      check_or_fail(next, spec, ConstraintViolation::Rule::Gap);
      return next;
    }
    case PrimitiveOp::Kind::Separate: {
      if (op.segment != spec.liz_index) {
        fail(ConstraintViolation::Rule::LizOnly, "separate is limited to the LIZ");
      }
      Well* w = next.well_at(op.segment);
      if (!w) fail(ConstraintViolation::Rule::UnknownWell,
                   "no well at segment " + std::to_string(op.segment));
      if (w->ions.size() != 2) {
        fail(ConstraintViolation::Rule::Occupancy, "separate needs a two-ion well");
      }
      const int off = spec.staging_offset();
      Well left{spec.liz_index - off, {w->ions[0]}};
      Well right{spec.liz_index + off, {w->ions[1]}};
      next.wells.erase(next.wells.begin() + (w - next.wells.data()));
      next.wells.push_back(left);
      next.wells.push_back(right);
      next.sort_wells();
      check_or_fail(next, spec, ConstraintViolation::Rule::Gap);
      return next;
    }
    case PrimitiveOp::Kind::Merge: {
      const int off = spec.staging_offset();
      if (op.segment != spec.liz_index - off || op.segment2 != spec.liz_index + off) {
        fail(ConstraintViolation::Rule::LizOnly,
             "merge sources must straddle the LIZ at +/-" + std::to_string(off));
      }
      Well* left = next.well_at(op.segment);
      Well* right = next.well_at(op.segment2);
      if (!left || !right) {
        fail(ConstraintViolation::Rule::UnknownWell, "merge source well missing");
      }
      if (static_cast<int>(left->ions.size() + right->ions.size()) > spec.max_ions_per_well) {
        fail(ConstraintViolation::Rule::Occupancy, "merge would exceed the per-well ion limit");
      }
      if (next.well_at(spec.liz_index)) {
        fail(ConstraintViolation::Rule::Occupancy, "LIZ already occupied");
      }
      Well merged{spec.liz_index, left->ions};
      merged.ions.insert(merged.ions.end(), right->ions.begin(), right->ions.end());
      std::vector<Well> rest;
      for (const auto& w : next.wells) {
        if (w.segment != op.segment && w.segment != op.segment2) rest.push_back(w);
      }
      rest.push_back(merged);
      next.wells = std::move(rest);
      next.sort_wells();
      check_or_fail(next, spec, ConstraintViolation::Rule::Gap);
      return next;
    }
    case PrimitiveOp::Kind::Swap: {
      if (op.segment != spec.liz_index) {
        fail(ConstraintViolation::Rule::LizOnly, "swap is limited to the LIZ");
      }
      Well* w = next.well_at(op.segment);
      if (!w) fail(ConstraintViolation::Rule::UnknownWell,
                   "no well at segment " + std::to_string(op.segment));
      if (w->ions.size() != 2) {
        fail(ConstraintViolation::Rule::Occupancy, "swap needs a two-ion well");
      }
      std::swap(w->ions[0], w->ions[1]);
      return next;
    }
    case PrimitiveOp::Kind::Laser: {
      if (op.segment != spec.liz_index) {
        fail(ConstraintViolation::Rule::LizOnly, "laser operations address the LIZ");
      }
      const Well* w = next.well_at(spec.liz_index);
      if (!w) fail(ConstraintViolation::Rule::UnknownWell, "no well at the LIZ");
      for (int q : op.targets) {
        if (std::find(w->ions.begin(), w->ions.end(), q) == w->ions.end()) {
          fail(ConstraintViolation::Rule::LizOnly,
               "laser target " + qubit_name(q) + " is not at the LIZ");
        }
      }
      return next;
    }
  }
  throw std::logic_error("bad primitive kind");
}

}  // namespace ftpcm
