#include "ftpcm/compiler.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <unordered_map>

namespace ftpcm {

namespace {

// Packed state key: per qubit, 6 bits of (segment << 1 | leads_its_well).
// Ions sharing a segment are co-trapped; the flag orders them.
std::uint64_t state_key(const TrapState& st) {
  std::uint64_t key = 0;
  for (const auto& w : st.wells) {
    for (std::size_t i = 0; i < w.ions.size(); ++i) {
      const std::uint64_t field = (static_cast<std::uint64_t>(w.segment) << 1) | (i == 0 ? 1 : 0);
      key |= field << (6 * w.ions[i]);
    }
  }
  return key;
}

bool contains_qubit(const Well& w, int q) {
  return std::find(w.ions.begin(), w.ions.end(), q) != w.ions.end();
}

/// Fast in-search neighbor generation. All constraint checks are explicit
/// integer comparisons; apply_primitive re-validates every emitted op when
/// the plan is replayed.
template <typename Visit>
void for_each_neighbor(const TrapState& st, const TrapSpec& spec, int window_lo, int window_hi,
                       const Visit& visit) {
  const int liz = spec.liz_index;
  const int off = spec.staging_offset();
  const int pitch = spec.min_well_distance();
  const int lo_bound = std::max(0, window_lo);
  const int hi_bound = window_hi < 0 ? spec.num_segments - 1
                                     : std::min(spec.num_segments - 1, window_hi);

  const Well* at_liz = st.well_at(liz);
  const Well* at_left = st.well_at(liz - off);
  const Well* at_right = st.well_at(liz + off);

  auto clear_around = [&](int seg, const Well* ignore_a, const Well* ignore_b) {
    for (const auto& w : st.wells) {
      if (&w == ignore_a || &w == ignore_b) continue;
      if (std::abs(w.segment - seg) < pitch) return false;
    }
    return true;
  };

  // Merge two staged single ions (or a single and nothing to merge with).
  if (at_left && at_right && !at_liz &&
      static_cast<int>(at_left->ions.size() + at_right->ions.size()) <= spec.max_ions_per_well) {
    TrapState next = st;
    Well merged{liz, at_left->ions};
    merged.ions.insert(merged.ions.end(), at_right->ions.begin(), at_right->ions.end());
    std::erase_if(next.wells,
                  [&](const Well& w) { return w.segment == liz - off || w.segment == liz + off; });
    next.wells.push_back(std::move(merged));
    next.sort_wells();
    visit(PrimitiveOp::merge(liz - off, liz + off), next);
  }

  if (at_liz && at_liz->ions.size() == 2) {
    // Separate, when both staging slots are clear.
    if (!at_left && !at_right && clear_around(liz - off, at_liz, nullptr) &&
        clear_around(liz + off, at_liz, nullptr)) {
      TrapState next = st;
      Well* w = next.well_at(liz);
      const Well left_d{liz - off, {w->ions[0]}};
      const Well right_d{liz + off, {w->ions[1]}};
      std::erase_if(next.wells, [&](const Well& x) { return x.segment == liz; });
      next.wells.push_back(left_d);
      next.wells.push_back(right_d);
      next.sort_wells();
      visit(PrimitiveOp::separate(liz), next);
    }
    // Swap.
    {
      TrapState next = st;
      Well* w = next.well_at(liz);
      std::swap(w->ions[0], w->ions[1]);
      visit(PrimitiveOp::swap(liz), next);
    }
  }

  // Moves: lattice slots strictly between the neighbors, inside the window,
  // the syndrome-carrying well last.
  const std::size_t n = st.wells.size();
  std::array<std::size_t, 8> order{};
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains_qubit(st.wells[i], kS)) order[count++] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (contains_qubit(st.wells[i], kS)) order[count++] = i;
  }
  const int anchor = ((liz % pitch) + pitch) % pitch;
  for (std::size_t oi = 0; oi < count; ++oi) {
    const std::size_t i = order[oi];
    const int cur = st.wells[i].segment;
    int lo = lo_bound;
    int hi = hi_bound;
    if (i > 0) lo = std::max(lo, st.wells[i - 1].segment + pitch);
    if (i + 1 < n) hi = std::min(hi, st.wells[i + 1].segment - pitch);
    // Nearest lattice slot >= lo.
    int first = lo + ((anchor - lo) % pitch + pitch) % pitch;
    std::array<int, 16> targets{};
    std::size_t num_targets = 0;
    for (int p = first; p <= hi && num_targets < targets.size(); p += pitch) {
      if (p != cur) targets[num_targets++] = p;
    }
    std::sort(targets.begin(), targets.begin() + num_targets, [cur](int a, int b) {
      const int da = std::abs(a - cur), db = std::abs(b - cur);
      return da != db ? da < db : a < b;
    });
    for (std::size_t t = 0; t < num_targets; ++t) {
      TrapState next = st;
      next.wells[i].segment = targets[t];
      next.sort_wells();
      visit(PrimitiveOp::move(cur, targets[t]), next);
    }
  }
}

std::optional<std::vector<PrimitiveOp>> breadth_first_plan(
    const TrapState& from, const TrapSpec& spec, const PlanLimits& limits,
    const std::function<bool(const TrapState&)>& is_goal) {
  if (is_goal(from)) return std::vector<PrimitiveOp>{};
  struct Edge {
    std::uint64_t parent;
    PrimitiveOp op;
    int depth;
  };
  std::unordered_map<std::uint64_t, Edge> visited;
  std::deque<std::pair<std::uint64_t, TrapState>> queue;

  const std::uint64_t root = state_key(from);
  visited[root] = {root, {}, 0};
  queue.emplace_back(root, from);

  while (!queue.empty()) {
    auto [cur, cur_state] = std::move(queue.front());
    queue.pop_front();
    const int depth = visited[cur].depth;
    if (depth >= limits.max_ops) continue;
    std::optional<std::uint64_t> found;
    for_each_neighbor(cur_state, spec, limits.window_lo, limits.window_hi,
                      [&](const PrimitiveOp& op, const TrapState& next) {
      if (found) return;
      const std::uint64_t key = state_key(next);
      if (visited.count(key)) return;
      visited[key] = {cur, op, depth + 1};
      if (is_goal(next)) {
        found = key;
        return;
      }
      queue.emplace_back(key, next);
    });
    if (found) {
      std::vector<PrimitiveOp> plan;
      std::uint64_t k = *found;
      while (k != root) {
        plan.push_back(visited[k].op);
        k = visited[k].parent;
      }
      std::reverse(plan.begin(), plan.end());
      return plan;
    }
  }
  return std::nullopt;
}

}  // namespace

PlanLimits PlanLimits::extent_window(const TrapSpec& spec, int max_extent) {
  PlanLimits limits;
  if (max_extent > 0) {
    // Coarser lattices need proportionally more room; below eight slots the
    // window would force the slow full-trap fallback on most stages.
    const int extent = std::max(max_extent, 8 * spec.min_well_distance());
    limits.window_lo = spec.liz_index - extent / 2;
    limits.window_hi = limits.window_lo + extent - 1;
  }
  return limits;
}

namespace {

// Bounded search first; the full trap is the fallback when the window is
// too tight for the goal.
std::optional<std::vector<PrimitiveOp>> plan_with_fallback(
    const TrapState& from, const TrapSpec& spec, const PlanLimits& limits,
    const std::function<bool(const TrapState&)>& is_goal) {
  auto plan = breadth_first_plan(from, spec, limits, is_goal);
  if (plan || (limits.window_lo == 0 && limits.window_hi < 0)) return plan;
  PlanLimits unbounded = limits;
  unbounded.window_lo = 0;
  unbounded.window_hi = -1;
  return breadth_first_plan(from, spec, unbounded, is_goal);
}

}  // namespace

std::optional<std::vector<PrimitiveOp>> plan_pair_at_liz(const TrapState& from, int a, int b,
                                                         const TrapSpec& spec,
                                                         const PlanLimits& limits) {
  return plan_with_fallback(from, spec, limits, [&](const TrapState& st) {
    const Well* w = st.well_at(spec.liz_index);
    return w && w->ions.size() == 2 && contains_qubit(*w, a) && contains_qubit(*w, b);
  });
}

std::optional<std::vector<PrimitiveOp>> plan_single_at_liz(const TrapState& from, int q,
                                                           const TrapSpec& spec,
                                                           const PlanLimits& limits) {
  return plan_with_fallback(from, spec, limits, [&](const TrapState& st) {
    const Well* w = st.well_at(spec.liz_index);
    return w && w->ions.size() == 1 && w->ions[0] == q;
  });
}

std::optional<std::vector<PrimitiveOp>> plan_to_state(const TrapState& from, const TrapState& to,
                                                      const TrapSpec& spec,
                                                      const PlanLimits& limits) {
  const std::uint64_t target = state_key(to);
  return plan_with_fallback(from, spec, limits,
                            [&](const TrapState& st) { return state_key(st) == target; });
}

std::vector<GateRequest> pcm_gate_list() {
  return {
      GateRequest::rotation(kS),        GateRequest::rotation(kF),
      GateRequest::entangle(kD1, kS),   GateRequest::entangle(kS, kF),
      GateRequest::entangle(kD2, kS),   GateRequest::entangle(kD3, kS),
      GateRequest::entangle(kS, kF),    GateRequest::entangle(kD4, kS),
      GateRequest::rotation(kS),        GateRequest::rotation(kF),
  };
}

std::vector<std::pair<int, int>> pcm_entangle_order() {
  return {{kD1, kS}, {kS, kF}, {kD2, kS}, {kD3, kS}, {kS, kF}, {kD4, kS}};
}

namespace {

/// Groups runs of consecutive single-op move steps whose segment ranges do
/// not overlap; everything else stays sequential.
Schedule parallelize_moves(const Schedule& in, const TrapSpec& spec) {
  Schedule out;
  std::size_t i = 0;
  while (i < in.steps.size()) {
    const auto& step = in.steps[i];
    if (step.size() != 1 || step[0].kind != PrimitiveOp::Kind::Move) {
      out.steps.push_back(step);
      ++i;
      continue;
    }
    std::vector<PrimitiveOp> group{step[0]};
    auto range = [&](const PrimitiveOp& op) {
      return std::pair<int, int>{std::min(op.segment, op.segment2),
                                 std::max(op.segment, op.segment2)};
    };
    std::size_t j = i + 1;
    while (j < in.steps.size() && in.steps[j].size() == 1 &&
           in.steps[j][0].kind == PrimitiveOp::Kind::Move) {
      const auto& cand = in.steps[j][0];
      bool ok = true;
      for (const auto& member : group) {
        const auto [alo, ahi] = range(member);
        const auto [blo, bhi] = range(cand);
        if (alo <= bhi && blo <= ahi) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      group.push_back(cand);
      ++j;
    }
    (void)spec;
    out.steps.push_back(std::move(group));
    i = j;
  }
  return out;
}

}  // namespace

Schedule compile(const std::vector<GateRequest>& gates, const TrapState& layout,
                 const TrapSpec& spec, const DurationTable& durations,
                 const CompileOptions& options) {
  for (const auto& g : gates) {
    if (g.q1 < 0 || g.q1 >= kRegisterSize ||
        (g.kind == GateRequest::Kind::Entangle &&
         (g.q2 < 0 || g.q2 >= kRegisterSize || g.q1 == g.q2))) {
      throw std::invalid_argument("bad gate request");
    }
  }
  if (auto problem = layout.check(spec)) throw InfeasibleError("bad layout: " + *problem);

  Schedule sched;
  TrapState st = layout;
  bool motion_since_laser = false;
  auto push = [&](PrimitiveOp op) {
    op.phase = options.phase;
    switch (op.kind) {
      case PrimitiveOp::Kind::Move:
        op.duration_us = durations.move_per_segment_us * std::abs(op.segment2 - op.segment);
        break;
      case PrimitiveOp::Kind::Separate:
        op.duration_us = durations.separate_us;
        break;
      case PrimitiveOp::Kind::Merge:
        op.duration_us = durations.merge_us;
        break;
      case PrimitiveOp::Kind::Swap:
        op.duration_us = durations.swap_us;
        break;
      case PrimitiveOp::Kind::Laser:
        break;
    }
    st = apply_primitive(st, op, spec);
    motion_since_laser = op.kind != PrimitiveOp::Kind::Laser;
    sched.steps.push_back({std::move(op)});
  };

  PlanLimits limits = PlanLimits::extent_window(spec, options.max_extent_segments);
  limits.max_ops = options.max_plan_ops;
  for (const auto& gate : gates) {
    std::optional<std::vector<PrimitiveOp>> plan;
    if (gate.kind == GateRequest::Kind::Entangle) {
      plan = plan_pair_at_liz(st, gate.q1, gate.q2, spec, limits);
    } else {
      plan = plan_single_at_liz(st, gate.q1, spec, limits);
    }
    if (!plan) {
      throw InfeasibleError("no reconfiguration found for gate on " + qubit_name(gate.q1) +
                            (gate.q2 >= 0 ? "," + qubit_name(gate.q2) : ""));
    }
    for (const auto& op : *plan) push(op);

    PrimitiveOp laser =
        gate.kind == GateRequest::Kind::Entangle
            ? PrimitiveOp::laser_op(LaserKind::Entangle, {gate.q1, gate.q2}, spec.liz_index)
            : PrimitiveOp::laser_op(LaserKind::Rotation, {gate.q1}, spec.liz_index);
    laser.duration_us = gate.kind == GateRequest::Kind::Entangle ? durations.entangling_gate_us
                                                                 : durations.local_rotation_us;
    laser.settle_us = motion_since_laser ? durations.settle_before_laser_us : 0.0;
    push(std::move(laser));
  }

  return options.parallel_moves ? parallelize_moves(sched, spec) : sched;
}

Schedule full_pcm_schedule(const TrapState& layout, const TrapSpec& spec,
                           const DurationTable& durations, const std::array<bool, 4>& data_flips,
                           const CompileOptions& options) {
  const Schedule around = prep_and_readout_schedule(layout, spec, durations, data_flips);
  Schedule prep_part, readout_part;
  for (const auto& step : around.steps) {
    if (step.front().phase == SchedulePhase::Prep) {
      prep_part.steps.push_back(step);
    } else {
      readout_part.steps.push_back(step);
    }
  }

  Schedule gate_part = compile(pcm_gate_list(), layout, spec, durations, options);
  // The readout expects the qubits back in the standard pairwise layout.
  const TrapState after = replay(gate_part, layout, spec);
  PlanLimits limits = PlanLimits::extent_window(spec, options.max_extent_segments);
  limits.max_ops = options.max_plan_ops;
  auto restore = plan_to_state(after, layout, spec, limits);
  if (!restore) throw InfeasibleError("cannot restore the pairwise layout after the gates");
  for (auto op : *restore) {
    op.phase = options.phase;
    switch (op.kind) {
      case PrimitiveOp::Kind::Move:
        op.duration_us = durations.move_per_segment_us * std::abs(op.segment2 - op.segment);
        break;
      case PrimitiveOp::Kind::Separate: op.duration_us = durations.separate_us; break;
      case PrimitiveOp::Kind::Merge: op.duration_us = durations.merge_us; break;
      case PrimitiveOp::Kind::Swap: op.duration_us = durations.swap_us; break;
      case PrimitiveOp::Kind::Laser: break;
    }
    gate_part.steps.push_back({std::move(op)});
  }

  Schedule full;
  full.append(prep_part);
  full.append(gate_part);
  full.append(readout_part);
  return full;
}

}  // namespace ftpcm
