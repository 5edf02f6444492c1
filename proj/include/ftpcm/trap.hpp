#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftpcm/circuit.hpp"

namespace ftpcm {

struct TrapSpec {
  int num_segments = 32;
  int liz_index = 19;
  double segment_pitch_mm = 0.2;
  int min_gap_segments = 2;  // empty segments required between wells
  int max_ions_per_well = 2;

  /// Smallest allowed distance between two well centers.
  int min_well_distance() const { return min_gap_segments + 1; }
  /// Daughter-well offset used by separate/merge.
  int staging_offset() const { return min_gap_segments + 1; }

  std::string to_json() const;
  static TrapSpec from_json(const std::string& text);
};

struct Well {
  int segment = 0;
  std::vector<int> ions;  // left-to-right qubit ids, 1 or 2 entries
};

/// Segment-occupancy snapshot; wells kept sorted by segment.
struct TrapState {
  std::vector<Well> wells;

  void sort_wells();
  const Well* well_at(int segment) const;
  Well* well_at(int segment);
  int segment_of(int qubit) const;  // -1 if absent
  const Well* well_of(int qubit) const;
  int span() const;  // occupied extent in segments (max - min + 1)

  /// Checks ordering, gaps, occupancy and bounds; returns a description of
  /// the first problem found, or nullopt.
  std::optional<std::string> check(const TrapSpec& spec) const;

  std::string to_string() const;
};

/// Three two-ion wells in axis order (d2,d1), (s,f), (d3,d4), with the
/// syndrome/flag pair centered on the LIZ.
TrapState initial_layout(const TrapSpec& spec = TrapSpec{});

enum class LaserKind : std::uint8_t { Entangle, Rotation, Cool, Pump, Shelve, Detect };
enum class SchedulePhase : std::uint8_t { Prep, GateSequence, Readout };

std::string laser_kind_name(LaserKind k);
std::string phase_name(SchedulePhase p);

struct PrimitiveOp {
  enum class Kind : std::uint8_t { Move, Separate, Merge, Swap, Laser };
  Kind kind;
  int segment = -1;      // Move: source; Separate/Swap/Laser: the LIZ well; Merge: left source
  int segment2 = -1;     // Move: destination; Merge: right source
  LaserKind laser = LaserKind::Rotation;
  std::vector<int> targets;  // Laser: qubit ids
  double duration_us = 0.0;
  double settle_us = 0.0;  // Laser only: wait inserted after preceding motion
  SchedulePhase phase = SchedulePhase::GateSequence;

  static PrimitiveOp move(int from, int to);
  static PrimitiveOp separate(int liz);
  static PrimitiveOp merge(int left, int right);
  static PrimitiveOp swap(int liz);
  static PrimitiveOp laser_op(LaserKind kind, std::vector<int> targets, int liz);
};

struct ConstraintViolation {
  enum class Rule : std::uint8_t {
    Gap,
    LizOnly,
    Occupancy,
    Crossing,
    Bounds,
    UnknownWell,
    Settle,
    GateOrder,
    ParallelOverlap,
  };
  Rule rule;
  std::size_t step = 0;
  std::string detail;
};

std::string rule_name(ConstraintViolation::Rule r);

class ConstraintError : public std::runtime_error {
 public:
  ConstraintError(ConstraintViolation v)
      : std::runtime_error(rule_name(v.rule) + ": " + v.detail), violation(std::move(v)) {}
  ConstraintViolation violation;
};

/// Applies one primitive, throwing ConstraintError when the op is illegal in
/// this state. Separate splits the LIZ well into daughters at LIZ +/- the
/// staging offset (left ion to the left daughter); Merge is its inverse;
/// Swap reverses the ion order of the LIZ well.
TrapState apply_primitive(const TrapState& state, const PrimitiveOp& op, const TrapSpec& spec);

}  // namespace ftpcm
