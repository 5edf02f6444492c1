#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "ftpcm/experiments.hpp"
#include "ftpcm/frame.hpp"

using namespace ftpcm;

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Conjugation oracle: computes g P g^dagger as a 4x4 matrix via the state
// vector and compares against a PauliString on 2 qubits.
using Mat4 = std::array<std::array<cplx, 4>, 4>;

template <typename F>
Mat4 matrix_of(F&& apply) {
  Mat4 m{};
  for (std::size_t col = 0; col < 4; ++col) {
    StateVector st(2);
    st.set_basis_state(col);
    apply(st);
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = st.amp(row);
  }
  return m;
}

bool matches_pauli(const Mat4& m, const PauliString& p) {
  const Mat4 ref = matrix_of([&](StateVector& st) { st.apply_pauli(p); });
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (std::abs(m[i][j] - ref[i][j]) > 1e-12) return false;
    }
  }
  return true;
}

PauliString random_pauli(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.at(q) = static_cast<Pauli>(letter(rng));
  p.set_phase_pow(sign(rng) * 2);
  return p;
}

FrameGate random_gate(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> quarters(1, 3);
  std::uniform_int_distribution<int> phi_quarters(-2, 2);
  switch (kind(rng)) {
    case 0: return {FrameGate::Kind::ZZHalf, 0, 1};
    case 1:
      return {FrameGate::Kind::LocalRot, quarters(rng) % 2, -1, quarters(rng) * kPi / 2.0,
              phi_quarters(rng) * kPi / 2.0};
    default: return {FrameGate::Kind::PairEcho, 0, 1};
  }
}

void apply_frame_gate(StateVector& st, const FrameGate& g) {
  switch (g.kind) {
    case FrameGate::Kind::ZZHalf: st.apply_zz(g.q1, g.q2, kPi / 2.0); break;
    case FrameGate::Kind::LocalRot: st.apply_local_rotation(g.q1, g.theta, g.phi); break;
    case FrameGate::Kind::PairEcho: st.apply_pairwise_rotation(g.q1, g.q2, kPi, -kPi / 2.0); break;
  }
}
}  // namespace

TEST_CASE("conjugation through ZZ(pi/2)") {
  const FrameGate zz{FrameGate::Kind::ZZHalf, 0, 1};

  // Z letters commute.
  CHECK(conjugate(PauliString::parse("ZI"), zz) == PauliString::parse("ZI"));
  CHECK(conjugate(PauliString::parse("IZ"), zz) == PauliString::parse("IZ"));

  // X on one qubit grows a Z on the partner.
  const auto xs = conjugate(PauliString::parse("XI"), zz);
  CHECK(xs.same_letters(PauliString::parse("YZ")));
  const Mat4 oracle = matrix_of([&](StateVector& st) {
    st.apply_zz(0, 1, -kPi / 2.0);
    st.apply_pauli(PauliString::parse("XI"));
    st.apply_zz(0, 1, kPi / 2.0);
  });
  CHECK(matches_pauli(oracle, xs));
}

TEST_CASE("conjugation through the pair echo") {
  const FrameGate echo{FrameGate::Kind::PairEcho, 0, 1};
  CHECK(conjugate(PauliString::parse("XI"), echo) == PauliString::parse("-XI"));
  CHECK(conjugate(PauliString::parse("IZ"), echo) == PauliString::parse("-IZ"));
  CHECK(conjugate(PauliString::parse("YI"), echo) == PauliString::parse("YI"));
  CHECK(conjugate(PauliString::parse("XZ"), echo) == PauliString::parse("XZ"));
}

TEST_CASE("conjugation rejects non-Clifford rotations") {
  CHECK_THROWS_AS(conjugate(PauliString::parse("XI"),
                            FrameGate{FrameGate::Kind::LocalRot, 0, -1, 0.3, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("conjugation matches the matrix oracle on random gates") {
  Rng rng(17);
  auto apply_inverse = [](StateVector& st, const FrameGate& g) {
    switch (g.kind) {
      case FrameGate::Kind::ZZHalf: st.apply_zz(g.q1, g.q2, -kPi / 2.0); break;
      case FrameGate::Kind::LocalRot: st.apply_local_rotation(g.q1, -g.theta, g.phi); break;
      case FrameGate::Kind::PairEcho:  // Hermitian, self-inverse
        st.apply_pairwise_rotation(g.q1, g.q2, kPi, -kPi / 2.0);
        break;
    }
  };
  for (int trial = 0; trial < 300; ++trial) {
    const PauliString p = random_pauli(rng, 2);
    const FrameGate g = random_gate(rng);
    const Mat4 oracle = matrix_of([&](StateVector& st) {
      apply_inverse(st, g);
      st.apply_pauli(p);
      apply_frame_gate(st, g);
    });
    CHECK(matches_pauli(oracle, conjugate(p, g)));
  }
}

TEST_CASE("conjugation is an automorphism") {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const PauliString p = random_pauli(rng, 2);
    const PauliString q = random_pauli(rng, 2);
    const FrameGate g = random_gate(rng);
    const PauliString pc = conjugate(p, g);
    const PauliString qc = conjugate(q, g);
    CHECK(conjugate(p * q, g) == pc * qc);
    CHECK(p.commutes_with(q) == pc.commutes_with(qc));
  }
}

namespace {
Circuit pcm_circuit(GateMode mode = GateMode::Ideal) {
  ExperimentConfig cfg;
  cfg.variant = Variant::PcmLogical;
  cfg.gate_mode = mode;
  return build_pcm_circuit(cfg);
}
}  // namespace

TEST_CASE("propagation of the mid-circuit syndrome errors") {
  const Circuit c = pcm_circuit();

  // Y_s between d2s and d3s: ends as X_s with Z3 Z4 on data and Z_f on the flag.
  const PauliString ys(kRegisterSize, kS, Pauli::Y);
  const PauliString y_final = propagate_to_end(c, {3, ys});
  CHECK(y_final.at(kS) == Pauli::X);
  CHECK(y_final.at(kD3) == Pauli::Z);
  CHECK(y_final.at(kD4) == Pauli::Z);
  CHECK(y_final.at(kF) == Pauli::Z);
  CHECK(y_final.at(kD1) == Pauli::I);
  CHECK(y_final.at(kD2) == Pauli::I);
  CHECK(y_final.is_hermitian());

  const auto y_eff = predict_readout_effect(y_final);
  CHECK_FALSE(y_eff.syndrome_flip);
  CHECK(y_eff.flag_flip);
  CHECK(y_eff.data_z_weight == 2);

  // X_s at the same site: syndrome readout flips, flag still catches it.
  const PauliString xs(kRegisterSize, kS, Pauli::X);
  const PauliString x_final = propagate_to_end(c, {3, xs});
  CHECK(x_final.at(kS) == Pauli::Y);
  CHECK(x_final.at(kD3) == Pauli::Z);
  CHECK(x_final.at(kD4) == Pauli::Z);
  CHECK(x_final.at(kF) == Pauli::Z);
  const auto x_eff = predict_readout_effect(x_final);
  CHECK(x_eff.syndrome_flip);
  CHECK(x_eff.flag_flip);
  CHECK(x_eff.data_z_weight == 2);

  // Identity stays identity.
  const PauliString id(kRegisterSize);
  CHECK(propagate_to_end(c, {3, id}).is_identity());

  CHECK_THROWS_AS(propagate_to_end(c, {9, ys}), std::out_of_range);
}

TEST_CASE("readout-effect prediction") {
  CHECK_FALSE(predict_readout_effect(PauliString(kRegisterSize, kS, Pauli::X)).syndrome_flip);
  {
    auto p = PauliString(kRegisterSize, kS, Pauli::Y);
    p.at(kD3) = Pauli::Z;
    p.at(kD4) = Pauli::Z;
    p.at(kF) = Pauli::Z;
    const auto eff = predict_readout_effect(p);
    CHECK(eff.syndrome_flip);
    CHECK(eff.flag_flip);
    CHECK(eff.data_z_weight == 2);
  }
  {
    auto p = PauliString(kRegisterSize, kF, Pauli::Z);
    p.at(kS) = Pauli::X;
    p.at(kD3) = Pauli::Z;
    p.at(kD4) = Pauli::Z;
    const auto eff = predict_readout_effect(p);
    CHECK_FALSE(eff.syndrome_flip);
    CHECK(eff.flag_flip);
    CHECK(eff.data_z_weight == 2);
  }
}

TEST_CASE("frame oracle agrees with the state vector, exhaustively") {
  // For every letter, qubit and inter-gate position: evolving with the
  // injected error equals applying the propagated operator to the clean
  // pre-analysis state (up to global phase).
  for (const GateMode mode : {GateMode::Ideal, GateMode::Hardware}) {
    const Circuit clean = pcm_circuit(mode);
    const StateVector clean_pre = pre_analysis_state(clean);
    for (int pos = 0; pos <= 6; ++pos) {
      for (int q = 0; q < kRegisterSize; ++q) {
        for (const Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
          const PauliString err(kRegisterSize, q, letter);
          ExperimentConfig cfg;
          cfg.variant = Variant::PcmInject;
          cfg.gate_mode = mode;
          cfg.injection = InjectionSite{pos, err};
          const Circuit injected = build_pcm_circuit(cfg);
          const StateVector actual = pre_analysis_state(injected);

          StateVector predicted = clean_pre;
          predicted.apply_pauli(propagate_to_end(clean, {pos, err}));
          CHECK(actual.equals_up_to_global_phase(predicted, 1e-10));
        }
      }
    }
  }
}

TEST_CASE("every dangerous mid-window syndrome fault raises the flag") {
  const Circuit c = pcm_circuit();
  for (int pos = 2; pos <= 4; ++pos) {
    for (const Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const auto eff =
          predict_readout_effect(propagate_to_end(c, {pos, PauliString(kRegisterSize, kS, letter)}));
      if (eff.data_z_weight >= 2) CHECK(eff.flag_flip);
    }
  }
}
