#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ftpcm/trap.hpp"

namespace ftpcm {

struct DurationTable {
  double move_per_segment_us = 20.9;
  double settle_before_laser_us = 50.6;
  double separate_us = 100.0;
  double merge_us = 100.0;
  double swap_us = 60.0;
  double entangling_gate_us = 120.0;
  double local_rotation_us = 4.0;
  double shelving_per_pair_us = 400.0;  // two population-transfer pulses
  double detection_per_ion_us = 800.0;
  double doppler_per_pair_us = 2000.0;
  double sideband_per_pair_us = 4000.0;
  double sideband_second_per_pair_us = 1000.0;  // second, shorter round
  double pump_sequence_us = 60.0;

  std::string to_json() const;
  static DurationTable from_json(const std::string& text);
};

/// Ordered list of steps; ops within one step run in parallel and must act
/// on disjoint wells over disjoint segment ranges.
struct Schedule {
  std::vector<std::vector<PrimitiveOp>> steps;

  std::size_t num_ops() const;
  void append_sequential(std::vector<PrimitiveOp> ops);
  void append(const Schedule& other);

  std::string to_json() const;
  static Schedule from_json(const std::string& text);

  /// One row per ion, one column per step, entries are segment indices.
  std::string render_timeline(const TrapState& layout, const TrapSpec& spec) const;
};

struct ValidationOptions {
  /// When non-empty, entangling lasers must appear exactly in this pair order.
  std::vector<std::pair<int, int>> expected_entangle_order;
};

/// Replays the schedule from the layout, collecting all violations with step
/// indices: illegal primitives, parallel-group overlaps, missing settle time
/// before laser ops, and entangling-gate order (when requested).
std::vector<ConstraintViolation> validate(const Schedule& schedule, const TrapState& layout,
                                          const TrapSpec& spec, const DurationTable& durations,
                                          const ValidationOptions& options = {});

struct PhaseBudget {
  double shuttle_us = 0.0;
  double laser_us = 0.0;
  double total() const { return shuttle_us + laser_us; }
};

struct TimingBudget {
  std::map<SchedulePhase, PhaseBudget> phases;
  PhaseBudget total() const;
  std::string to_json() const;
};

/// Per-phase shuttle/laser split. A parallel group contributes the maximum
/// duration of its members; laser settle time counts as shuttling overhead.
TimingBudget timing_budget(const Schedule& schedule, const DurationTable& durations);

/// Register preparation (pairwise Doppler cooling, two sideband-cooling
/// rounds, optical pumping, optional data flips) and readout (pairwise
/// shelving, two detection rounds per qubit) phases around the gate sequence.
Schedule prep_and_readout_schedule(const TrapState& layout, const TrapSpec& spec,
                                   const DurationTable& durations,
                                   const std::array<bool, 4>& data_flips = {});

/// The final trap state after replaying a valid schedule.
TrapState replay(const Schedule& schedule, const TrapState& layout, const TrapSpec& spec);

}  // namespace ftpcm
