#include <algorithm>

#include "doctest.h"
#include "ftpcm/compiler.hpp"
#include "ftpcm/schedule.hpp"
#include "ftpcm/trap.hpp"

using namespace ftpcm;

namespace {
const TrapSpec kSpec;
const DurationTable kDurations;
}  // namespace

TEST_CASE("initial layout") {
  const TrapState st = initial_layout(kSpec);
  REQUIRE(st.wells.size() == 3);
  CHECK(st.wells[0].ions == std::vector<int>{kD2, kD1});
  CHECK(st.wells[1].ions == std::vector<int>{kS, kF});
  CHECK(st.wells[2].ions == std::vector<int>{kD3, kD4});
  CHECK(st.wells[1].segment == kSpec.liz_index);
  CHECK_FALSE(st.check(kSpec).has_value());
  // All six qubits present exactly once.
  for (int q = 0; q < kRegisterSize; ++q) CHECK(st.segment_of(q) >= 0);
}

TEST_CASE("swap reverses the LIZ pair and is an involution") {
  TrapState st = initial_layout(kSpec);
  const TrapState once = apply_primitive(st, PrimitiveOp::swap(kSpec.liz_index), kSpec);
  CHECK(once.well_at(kSpec.liz_index)->ions == std::vector<int>{kF, kS});
  const TrapState twice = apply_primitive(once, PrimitiveOp::swap(kSpec.liz_index), kSpec);
  CHECK(twice.well_at(kSpec.liz_index)->ions == std::vector<int>{kS, kF});
  CHECK(twice.wells.size() == st.wells.size());
}

TEST_CASE("primitive constraint checks") {
  TrapState st = initial_layout(kSpec);

  // A move landing within two segments of a neighbor violates the gap rule.
  CHECK_THROWS_AS(apply_primitive(st, PrimitiveOp::move(13, 17), kSpec), ConstraintError);
  try {
    apply_primitive(st, PrimitiveOp::move(13, 17), kSpec);
  } catch (const ConstraintError& e) {
    CHECK(e.violation.rule == ConstraintViolation::Rule::Gap);
  }

  // Separate away from the LIZ.
  try {
    apply_primitive(st, PrimitiveOp::separate(13), kSpec);
    CHECK(false);
  } catch (const ConstraintError& e) {
    CHECK(e.violation.rule == ConstraintViolation::Rule::LizOnly);
  }

  // Crossing another well.
  try {
    apply_primitive(st, PrimitiveOp::move(13, 25), kSpec);
    CHECK(false);
  } catch (const ConstraintError& e) {
    CHECK(e.violation.rule == ConstraintViolation::Rule::Crossing);
  }

  // Out of the trap.
  try {
    apply_primitive(st, PrimitiveOp::move(25, 40), kSpec);
    CHECK(false);
  } catch (const ConstraintError& e) {
    CHECK(e.violation.rule == ConstraintViolation::Rule::Bounds);
  }

  // Unknown well.
  try {
    apply_primitive(st, PrimitiveOp::move(14, 10), kSpec);
    CHECK(false);
  } catch (const ConstraintError& e) {
    CHECK(e.violation.rule == ConstraintViolation::Rule::UnknownWell);
  }

  // Separate then merge restores the pair.
  const TrapState split = apply_primitive(st, PrimitiveOp::separate(kSpec.liz_index), kSpec);
  CHECK(split.wells.size() == 4);
  CHECK(split.well_at(16)->ions == std::vector<int>{kS});
  CHECK(split.well_at(22)->ions == std::vector<int>{kF});
  const TrapState merged = apply_primitive(split, PrimitiveOp::merge(16, 22), kSpec);
  CHECK(merged.well_at(kSpec.liz_index)->ions == std::vector<int>{kS, kF});

  // Laser targets must sit at the LIZ.
  try {
    apply_primitive(st, PrimitiveOp::laser_op(LaserKind::Rotation, {kD1}, kSpec.liz_index), kSpec);
    CHECK(false);
  } catch (const ConstraintError& e) {
    CHECK(e.violation.rule == ConstraintViolation::Rule::LizOnly);
  }
}

TEST_CASE("schedule JSON round trip") {
  const TrapState layout = initial_layout(kSpec);
  const Schedule sched = compile(pcm_gate_list(), layout, kSpec, kDurations);
  const Schedule back = Schedule::from_json(sched.to_json());
  REQUIRE(back.steps.size() == sched.steps.size());
  CHECK(back.num_ops() == sched.num_ops());
  CHECK(validate(back, layout, kSpec, kDurations).empty());
  const auto a = timing_budget(sched, kDurations);
  const auto b = timing_budget(back, kDurations);
  CHECK(a.total().total() == doctest::Approx(b.total().total()));
}

TEST_CASE("trap spec JSON") {
  const TrapSpec spec = TrapSpec::from_json(kSpec.to_json());
  CHECK(spec.num_segments == 32);
  CHECK(spec.liz_index == 19);
  CHECK(spec.min_gap_segments == 2);
  CHECK_THROWS_AS(TrapSpec::from_json("{\"liz_index\": 40}"), std::invalid_argument);
}

TEST_CASE("duration table JSON and positivity") {
  const DurationTable t = DurationTable::from_json(kDurations.to_json());
  CHECK(t.move_per_segment_us == doctest::Approx(20.9));
  CHECK(t.settle_before_laser_us == doctest::Approx(50.6));
  CHECK(t.entangling_gate_us == doctest::Approx(120.0));
  CHECK_THROWS_AS(DurationTable::from_json("{\"swap_us\": -1}"), std::invalid_argument);
}

TEST_CASE("timing budget: empty, additivity, parallel maxima") {
  CHECK(timing_budget(Schedule{}, kDurations).total().total() == doctest::Approx(0.0));

  const TrapState layout = initial_layout(kSpec);
  const Schedule a = compile(pcm_gate_list(), layout, kSpec, kDurations);
  const TrapState mid = replay(a, layout, kSpec);
  Schedule b;
  {
    // A second fragment: bring s and f back together if split, else a no-op
    // rotation; durations still add.
    PrimitiveOp op = PrimitiveOp::laser_op(LaserKind::Rotation, {}, kSpec.liz_index);
    op.duration_us = 4.0;
    op.phase = SchedulePhase::GateSequence;
    b.steps.push_back({op});
  }
  Schedule joined = a;
  joined.append(b);
  const double sum =
      timing_budget(a, kDurations).total().total() + timing_budget(b, kDurations).total().total();
  CHECK(timing_budget(joined, kDurations).total().total() == doctest::Approx(sum));
  (void)mid;

  // Parallel group: one long and one short move count as the longer one.
  Schedule par;
  PrimitiveOp m1 = PrimitiveOp::move(13, 7);
  m1.duration_us = 2 * 6 * kDurations.move_per_segment_us;  // deliberately long
  PrimitiveOp m2 = PrimitiveOp::move(25, 28);
  m2.duration_us = 3 * kDurations.move_per_segment_us;
  m1.phase = m2.phase = SchedulePhase::GateSequence;
  par.steps.push_back({m1, m2});
  CHECK(timing_budget(par, kDurations).total().total() == doctest::Approx(m1.duration_us));
}

TEST_CASE("prep and readout sequence structure") {
  const TrapState layout = initial_layout(kSpec);
  const Schedule sched = prep_and_readout_schedule(layout, kSpec, kDurations, {true, false, false, true});
  CHECK(validate(sched, layout, kSpec, kDurations).empty());

  // The readout expects the standard layout back at the end.
  const TrapState final_state = replay(sched, layout, kSpec);
  CHECK(final_state.to_string() == layout.to_string());

  // Collect laser events in order.
  struct Event {
    LaserKind kind;
    std::vector<int> targets;
    SchedulePhase phase;
  };
  std::vector<Event> events;
  for (const auto& group : sched.steps) {
    for (const auto& op : group) {
      if (op.kind == PrimitiveOp::Kind::Laser) events.push_back({op.laser, op.targets, op.phase});
    }
  }

  // Doppler cooling first, pairwise in order {d3,d4}, {s,f}, {d2,d1}.
  REQUIRE(events.size() >= 3);
  CHECK(events[0].kind == LaserKind::Cool);
  CHECK(events[0].targets == std::vector<int>{kD3, kD4});
  CHECK(events[1].targets == std::vector<int>{kS, kF});
  CHECK(events[2].targets == std::vector<int>{kD2, kD1});

  // Sideband cooling order {d2,d1}, {s,f}, {d3,d4}, two rounds.
  CHECK(events[3].targets == std::vector<int>{kD2, kD1});
  CHECK(events[4].targets == std::vector<int>{kS, kF});
  CHECK(events[5].targets == std::vector<int>{kD3, kD4});
  CHECK(events[6].targets == std::vector<int>{kD2, kD1});
  CHECK(events[8].targets == std::vector<int>{kD3, kD4});

  // Exactly two data flips requested.
  int flips = 0;
  for (const auto& e : events) {
    if (e.kind == LaserKind::Rotation) ++flips;
  }
  CHECK(flips == 2);

  // Shelving pairwise in order {d3,d4}, {s,f}, {d2,d1}.
  std::vector<Event> shelves;
  for (const auto& e : events) {
    if (e.kind == LaserKind::Shelve) shelves.push_back(e);
  }
  REQUIRE(shelves.size() == 3);
  CHECK(shelves[0].targets == std::vector<int>{kD3, kD4});
  CHECK(shelves[1].targets == std::vector<int>{kS, kF});
  CHECK(shelves[2].targets == std::vector<int>{kD2, kD1});

  // Every ion is detected exactly twice.
  std::array<int, kRegisterSize> detections{};
  for (const auto& e : events) {
    if (e.kind == LaserKind::Detect) {
      REQUIRE(e.targets.size() == 1);
      ++detections[e.targets[0]];
      CHECK(e.phase == SchedulePhase::Readout);
    }
  }
  for (int q = 0; q < kRegisterSize; ++q) CHECK(detections[q] == 2);
}

TEST_CASE("validator flags broken schedules with the right class") {
  const TrapState layout = initial_layout(kSpec);
  const Schedule good = compile(pcm_gate_list(), layout, kSpec, kDurations);
  REQUIRE(validate(good, layout, kSpec, kDurations).empty());

  auto has_rule = [](const std::vector<ConstraintViolation>& vs, ConstraintViolation::Rule r) {
    return std::any_of(vs.begin(), vs.end(),
                       [&](const ConstraintViolation& v) { return v.rule == r; });
  };

  // Retarget a move onto a gap-violating segment.
  {
    Schedule bad = good;
    for (auto& group : bad.steps) {
      for (auto& op : group) {
        if (op.kind == PrimitiveOp::Kind::Move) {
          op.segment2 = op.segment2 >= kSpec.liz_index ? op.segment2 - 1 : op.segment2 + 1;
          goto mutated;
        }
      }
    }
  mutated:
    const auto vs = validate(bad, layout, kSpec, kDurations);
    CHECK_FALSE(vs.empty());
  }

  // Drop the settle interval of the first laser op.
  {
    Schedule bad = good;
    for (auto& group : bad.steps) {
      for (auto& op : group) {
        if (op.kind == PrimitiveOp::Kind::Laser && op.settle_us > 0.0) {
          op.settle_us = 0.0;
          goto mutated2;
        }
      }
    }
  mutated2:
    CHECK(has_rule(validate(bad, layout, kSpec, kDurations), ConstraintViolation::Rule::Settle));
  }

  // Reorder the entangling gates.
  {
    auto order = pcm_entangle_order();
    std::swap(order[0], order[2]);
    ValidationOptions opt;
    opt.expected_entangle_order = order;
    CHECK(has_rule(validate(good, layout, kSpec, kDurations, opt),
                   ConstraintViolation::Rule::GateOrder));
  }

  // A parallel group with overlapping motion ranges.
  {
    Schedule bad;
    PrimitiveOp m1 = PrimitiveOp::move(13, 10);
    PrimitiveOp m2 = PrimitiveOp::move(19, 12);
    m1.phase = m2.phase = SchedulePhase::GateSequence;
    bad.steps.push_back({m1, m2});
    CHECK(has_rule(validate(bad, layout, kSpec, kDurations),
                   ConstraintViolation::Rule::ParallelOverlap));
  }

  // A hand-built crossing.
  {
    Schedule bad;
    PrimitiveOp m = PrimitiveOp::move(13, 22);
    m.phase = SchedulePhase::GateSequence;
    bad.steps.push_back({m});
    CHECK(has_rule(validate(bad, layout, kSpec, kDurations),
                   ConstraintViolation::Rule::Crossing));
  }
}

TEST_CASE("validator soundness under random mutations") {
  const TrapState layout = initial_layout(kSpec);
  const Schedule good = compile(pcm_gate_list(), layout, kSpec, kDurations);
  std::mt19937_64 rng(2024);
  int broken = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Schedule mutated = good;
    std::uniform_int_distribution<std::size_t> step_pick(0, mutated.steps.size() - 1);
    auto& group = mutated.steps[step_pick(rng)];
    auto& op = group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)];
    switch (trial % 4) {
      case 0:  // shift a segment reference
        op.segment += std::uniform_int_distribution<int>(-2, 2)(rng);
        break;
      case 1:
        if (op.kind == PrimitiveOp::Kind::Move) op.segment2 += 1;
        else op.segment -= 1;
        break;
      case 2:
        op.kind = PrimitiveOp::Kind::Swap;
        break;
      case 3:
        op.settle_us = 0.0;
        op.duration_us = 0.0;
        break;
    }
    const auto vs = validate(mutated, layout, kSpec, kDurations);
    // Either the schedule is still coherent (mutation happened to be legal)
    // or every reported violation carries a meaningful class and step.
    if (!vs.empty()) {
      ++broken;
      for (const auto& v : vs) {
        CHECK(v.step < mutated.steps.size() + 1);
        CHECK_FALSE(rule_name(v.rule).empty());
      }
    }
  }
  // Most such mutations must be caught.
  CHECK(broken > 30);
}

TEST_CASE("timeline rendering") {
  const TrapState layout = initial_layout(kSpec);
  const Schedule sched = compile({GateRequest::entangle(kS, kF)}, layout, kSpec, kDurations);
  const std::string text = sched.render_timeline(layout, kSpec);
  CHECK(text.find("d1") != std::string::npos);
  CHECK(text.find(" s") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == kRegisterSize);
}
