#pragma once

#include <optional>
#include <vector>

#include "ftpcm/schedule.hpp"

namespace ftpcm {

/// One laser-driven operation to be delivered at the LIZ: an entangling gate
/// on a qubit pair, or a local rotation on a singled qubit.
struct GateRequest {
  enum class Kind : std::uint8_t { Entangle, Rotation };
  Kind kind;
  int q1 = -1;
  int q2 = -1;  // Entangle only

  static GateRequest entangle(int a, int b) { return {Kind::Entangle, a, b}; }
  static GateRequest rotation(int q) { return {Kind::Rotation, q, -1}; }
};

struct CompileOptions {
  bool parallel_moves = true;   // group independent moves into one step
  int max_plan_ops = 32;        // per-stage search depth limit
  int max_extent_segments = 24; // spatial window around the LIZ; <= 0 disables
  SchedulePhase phase = SchedulePhase::GateSequence;
};

/// Per-plan search limits. A window restricts every move target (and hence
/// the register extent); planners fall back to the full trap when no plan
/// exists inside the window.
struct PlanLimits {
  int max_ops = 32;
  int window_lo = 0;
  int window_hi = -1;  // -1: last segment

  static PlanLimits extent_window(const TrapSpec& spec, int max_extent);
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compiles the gate list into a valid shuttling schedule: for each request
/// the operands are brought together at the LIZ via a shortest reconfiguration
/// (breadth-first search over move/separate/merge/swap, deterministic
/// tie-breaking that touches the syndrome-carrying well last), then the laser
/// op fires after the settle interval. Throws InfeasibleError when a request
/// cannot be scheduled.
Schedule compile(const std::vector<GateRequest>& gates, const TrapState& layout,
                 const TrapSpec& spec, const DurationTable& durations,
                 const CompileOptions& options = {});

/// The FT parity-check gate list: syndrome/flag init rotations, entangling
/// gates d1s, sf, d2s, d3s, sf, d4s, analysis rotations on s and f.
std::vector<GateRequest> pcm_gate_list();

/// Entangling pairs of the parity check, in order.
std::vector<std::pair<int, int>> pcm_entangle_order();

/// Shortest primitive sequence that brings the goal about, or nullopt.
/// Exposed for the sequence builders.
std::optional<std::vector<PrimitiveOp>> plan_pair_at_liz(const TrapState& from, int a, int b,
                                                         const TrapSpec& spec,
                                                         const PlanLimits& limits = {});
std::optional<std::vector<PrimitiveOp>> plan_single_at_liz(const TrapState& from, int q,
                                                           const TrapSpec& spec,
                                                           const PlanLimits& limits = {});
std::optional<std::vector<PrimitiveOp>> plan_to_state(const TrapState& from, const TrapState& to,
                                                      const TrapSpec& spec,
                                                      const PlanLimits& limits = {});

/// Register preparation + compiled gate sequence (with the layout restored
/// at the end) + readout, as one validated schedule.
Schedule full_pcm_schedule(const TrapState& layout, const TrapSpec& spec,
                           const DurationTable& durations, const std::array<bool, 4>& data_flips = {},
                           const CompileOptions& options = {});

}  // namespace ftpcm
