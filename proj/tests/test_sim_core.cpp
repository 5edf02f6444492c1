#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "ftpcm/state_vector.hpp"

using namespace ftpcm;

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Builds the matrix of a 2-qubit operation by applying it to basis states.
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

double max_diff(const Mat4& a, const Mat4& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

StateVector minus_state() {
  StateVector st(1);
  st.apply_local_rotation(0, kPi / 2.0, -kPi / 2.0);
  return st;
}
}  // namespace

TEST_CASE("local rotation identity and pinned states") {
  StateVector st(1);
  st.apply_local_rotation(0, 0.0, 1.234);
  CHECK(std::abs(st.amp(0) - 1.0) < 1e-12);
  CHECK(std::abs(st.amp(1)) < 1e-12);

  // R(pi/2, -pi/2)|0> = |->
  StateVector minus = minus_state();
  CHECK(std::abs(minus.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(minus.amp(1) + 1.0 / std::sqrt(2.0)) < 1e-12);

  // R(pi, 0)|0> = -i|1>
  StateVector flipped(1);
  flipped.apply_local_rotation(0, kPi, 0.0);
  CHECK(std::abs(flipped.amp(0)) < 1e-12);
  CHECK(std::abs(flipped.amp(1) - cplx{0.0, -1.0}) < 1e-12);
}

TEST_CASE("local rotation rejects bad input") {
  StateVector st(2);
  CHECK_THROWS_AS(st.apply_local_rotation(2, 1.0, 0.0), std::out_of_range);
  CHECK_THROWS_AS(st.apply_local_rotation(0, std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(st.apply_pairwise_rotation(1, 1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(st.apply_zz(0, 0, 1.0), std::invalid_argument);
}

TEST_CASE("pairwise rotation equals two local rotations") {
  Rng rng(7);
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = angle(rng);
    const double phi = angle(rng);
    StateVector a(3);
    a.apply_local_rotation(0, 0.8, 0.3);  // scramble a bit
    a.apply_zz(0, 2, 0.7);
    StateVector b = a;
    a.apply_pairwise_rotation(0, 2, theta, phi);
    b.apply_local_rotation(0, theta, phi);
    b.apply_local_rotation(2, theta, phi);
    for (std::size_t k = 0; k < a.dim(); ++k) CHECK(std::abs(a.amp(k) - b.amp(k)) < 1e-12);
  }

  // (|00>, theta=pi, phi=-pi/2) -> |11> with no residual phase
  StateVector st(2);
  st.apply_pairwise_rotation(0, 1, kPi, -kPi / 2.0);
  CHECK(std::abs(st.amp(3) - 1.0) < 1e-12);
}

TEST_CASE("zz phases and additivity") {
  StateVector st(2);
  st.apply_zz(0, 1, 0.0);
  CHECK(std::abs(st.amp(0) - 1.0) < 1e-12);

  // ZZ(pi)|00> = i|00>
  st.apply_zz(0, 1, kPi);
  CHECK(std::abs(st.amp(0) - cplx{0.0, 1.0}) < 1e-12);

  const Mat4 twice = matrix_of([](StateVector& s) {
    s.apply_zz(0, 1, kPi / 4.0);
    s.apply_zz(0, 1, kPi / 4.0);
  });
  const Mat4 once = matrix_of([](StateVector& s) { s.apply_zz(0, 1, kPi / 2.0); });
  CHECK(max_diff(twice, once) < 1e-12);
}

TEST_CASE("rotation composition law") {
  Rng rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const double t1 = angle(rng), t2 = angle(rng), phi = angle(rng);
    const Mat4 composed = matrix_of([&](StateVector& s) {
      s.apply_local_rotation(0, t2, phi);
      s.apply_local_rotation(0, t1, phi);
    });
    const Mat4 direct = matrix_of([&](StateVector& s) { s.apply_local_rotation(0, t1 + t2, phi); });
    CHECK(max_diff(composed, direct) < 1e-12);
  }
}

TEST_CASE("hardware entangling gate equals -(YxY) ZZ(pi/2)") {
  const Mat4 hw = matrix_of([](StateVector& s) { s.apply_entangling_gate(0, 1, GateMode::Hardware); });
  const Mat4 ref = matrix_of([](StateVector& s) {
    s.apply_zz(0, 1, kPi / 2.0);
    s.apply_pauli(PauliString::parse("-YY"));
  });
  CHECK(max_diff(hw, ref) < 1e-12);

  // Applied twice: proportional to ZZ(pi) (the echo pair squares away).
  const Mat4 hw2 = matrix_of([](StateVector& s) {
    s.apply_entangling_gate(0, 1, GateMode::Hardware);
    s.apply_entangling_gate(0, 1, GateMode::Hardware);
  });
  const Mat4 zzpi = matrix_of([](StateVector& s) { s.apply_zz(0, 1, kPi); });
  CHECK(max_diff(hw2, zzpi) < 1e-12);
}

TEST_CASE("ideal entangling gate imprints the conditional phase") {
  // d in |0> (Z=+1): syndrome picks up exp[i(pi/4) Z_s].
  StateVector st(2);  // qubit 0 = d, qubit 1 = s
  st.apply_local_rotation(1, kPi / 2.0, -kPi / 2.0);  // s to |->
  st.apply_entangling_gate(0, 1, GateMode::Ideal);
  StateVector ref(2);
  ref.apply_local_rotation(1, kPi / 2.0, -kPi / 2.0);
  ref.apply_rz(1, -kPi / 2.0);  // exp[-i(-pi/2)/2 Z] = exp[i(pi/4) Z]
  for (std::size_t k = 0; k < st.dim(); ++k) CHECK(std::abs(st.amp(k) - ref.amp(k)) < 1e-12);
}

TEST_CASE("measurement in fixed bases") {
  Rng rng(3);
  {
    StateVector st(1);
    CHECK(st.measure_qubit(0, MeasBasis::Z, rng) == +1);
    CHECK(std::abs(st.norm() - 1.0) < 1e-12);
  }
  {
    StateVector st = minus_state();
    CHECK(st.measure_qubit(0, MeasBasis::X, rng) == -1);
  }
  {
    // |+> measured in Y: unbiased
    int plus = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
      StateVector st(1);
      st.apply_local_rotation(0, kPi / 2.0, kPi / 2.0);  // |0> -> |+>
      if (st.measure_qubit(0, MeasBasis::Y, rng) == +1) ++plus;
    }
    const double rate = static_cast<double>(plus) / n;
    CHECK(std::abs(rate - 0.5) < 4.0 * std::sqrt(0.25 / n));
  }
}

TEST_CASE("expectation values") {
  StateVector st(1);
  CHECK(st.expectation_pauli(PauliString::parse("Z")) == doctest::Approx(1.0));
  CHECK_THROWS_AS(st.expectation_pauli(PauliString::parse("iZ")), std::invalid_argument);

  // Bell state (|00> + |11>)/sqrt(2)
  StateVector bell(2);
  bell.amp(0) = 1.0 / std::sqrt(2.0);
  bell.amp(3) = 1.0 / std::sqrt(2.0);
  CHECK(bell.expectation_pauli(PauliString::parse("ZZ")) == doctest::Approx(1.0));
  CHECK(bell.expectation_pauli(PauliString::parse("XX")) == doctest::Approx(1.0));
  CHECK(bell.expectation_pauli(PauliString::parse("YY")) == doctest::Approx(-1.0));
  CHECK(bell.expectation_pauli(PauliString::parse("ZI")) == doctest::Approx(0.0));
}

TEST_CASE("sample_bitstring basics") {
  Rng rng(5);
  {
    StateVector st(2);
    st.set_basis_state(2);  // |01>: qubit 0 dark, qubit 1 bright
    const auto out = st.sample_bitstring({MeasBasis::Z, MeasBasis::Z}, rng);
    CHECK(out[0] == +1);
    CHECK(out[1] == -1);
  }
  for (int i = 0; i < 200; ++i) {
    StateVector bell(2);
    bell.amp(0) = 1.0 / std::sqrt(2.0);
    bell.amp(3) = 1.0 / std::sqrt(2.0);
    const auto out = bell.sample_bitstring({MeasBasis::Z, MeasBasis::Z}, rng);
    CHECK(out[0] == out[1]);
  }
}

TEST_CASE("Born-rule consistency of sampling against expectation values") {
  // Prepare a generic 3-qubit state, then compare empirical single-qubit
  // X/Y/Z means against the exact expectations at 4 sigma.
  auto prepare = [](StateVector& st) {
    st.apply_local_rotation(0, 0.7, 0.2);
    st.apply_local_rotation(1, 1.9, -0.8);
    st.apply_local_rotation(2, 2.3, 1.1);
    st.apply_zz(0, 1, kPi / 2.0);
    st.apply_zz(1, 2, kPi / 4.0);
  };
  StateVector exact(3);
  prepare(exact);
  const std::vector<MeasBasis> bases = {MeasBasis::X, MeasBasis::Y, MeasBasis::Z};
  const std::vector<PauliString> ops = {PauliString(3, 0, Pauli::X), PauliString(3, 1, Pauli::Y),
                                        PauliString(3, 2, Pauli::Z)};
  const int n = 100000;
  std::array<long, 3> sums{};
  Rng rng(99);
  for (int i = 0; i < n; ++i) {
    StateVector st(3);
    prepare(st);
    const auto out = st.sample_bitstring(bases, rng);
    for (int q = 0; q < 3; ++q) sums[q] += out[q];
  }
  for (int q = 0; q < 3; ++q) {
    const double mean = static_cast<double>(sums[q]) / n;
    const double expect = exact.expectation_pauli(ops[q]);
    const double sigma = std::sqrt((1.0 - expect * expect) / n);
    CHECK(std::abs(mean - expect) < 4.0 * sigma + 1e-12);
  }
}

TEST_CASE("norm preserved through random circuits") {
  Rng rng(21);
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  std::uniform_int_distribution<int> pick(0, 5);
  StateVector st(6);
  for (int step = 0; step < 200; ++step) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    switch (step % 4) {
      case 0: st.apply_local_rotation(a, angle(rng), angle(rng)); break;
      case 1: st.apply_zz(a, b, angle(rng)); break;
      case 2: st.apply_entangling_gate(a, b, GateMode::Hardware); break;
      case 3: st.apply_pairwise_rotation(a, b, angle(rng), angle(rng)); break;
    }
    CHECK(std::abs(st.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("pauli string algebra") {
  const auto x = PauliString::parse("X");
  const auto y = PauliString::parse("Y");
  const auto z = PauliString::parse("Z");
  CHECK((x * y).to_string() == "+iZ");
  CHECK((y * x).to_string() == "-iZ");
  CHECK((y * z).to_string() == "+iX");
  CHECK((z * z).to_string() == "+I");
  CHECK(PauliString::parse("-iXYZ").phase() == cplx{0.0, -1.0});
  CHECK(x.commutes_with(x));
  CHECK_FALSE(x.commutes_with(z));
  CHECK(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
}
