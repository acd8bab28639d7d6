#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "mqsp/conditions.hpp"
#include "mqsp/protocol.hpp"
#include "testutil.hpp"

using namespace mqsp;

namespace {

const double kPi = std::numbers::pi;

UnitPhase ph(long re_n, long im_n, long den) {
  return UnitPhase::exact(Rational(re_n, den), Rational(im_n, den));
}

// Evaluated 2x2 matrix [[P, Q], [-Q*, P*]] at a torus point.
std::array<std::complex<double>, 4> eval_matrix(const PolyPair& pair,
                                                double ta, double tb) {
  const auto p = pair.p.evaluate(ta, tb);
  const auto q = pair.q.evaluate(ta, tb);
  return {p, q, -std::conj(q), std::conj(p)};
}

}  // namespace

TEST_CASE("exact phases must have unit modulus") {
  CHECK_NOTHROW(ph(3, 4, 5));
  CHECK_NOTHROW(ph(0, -1, 1));
  CHECK_THROWS_AS(UnitPhase::exact(Rational(1, 2), Rational(1, 2)),
                  InvalidRange);
  CHECK_THROWS_AS(UnitPhase::from_scalar(Scalar::floating({0.9, 0.0})),
                  InvalidRange);
}

TEST_CASE("float angles normalize to (-pi, pi]") {
  CHECK(UnitPhase::angle(3 * kPi).radians() == doctest::Approx(kPi));
  CHECK(UnitPhase::angle(-kPi).radians() == doctest::Approx(kPi));
  CHECK(UnitPhase::angle(0.25).radians() == doctest::Approx(0.25));
}

TEST_CASE("phase algebra") {
  const auto p = ph(3, 4, 5);
  CHECK(p.squared().value() == Scalar::exact(Rational(-7, 25), Rational(24, 25)));
  CHECK(p.conjugated().value() == Scalar::exact(Rational(3, 5), Rational(-4, 5)));
  CHECK(p.negated().value() == Scalar::exact(Rational(-3, 5), Rational(-4, 5)));
  CHECK_THROWS_AS(UnitPhase::angle(0.5).scalar(Backend::Exact),
                  BackendMismatch);
}

TEST_CASE("signal(A) evaluates to the identity at theta_a = 0") {
  const auto m = eval_matrix(signal(Axis::A), 0, 0);
  CHECK(std::abs(m[0] - 1.0) < 1e-15);
  CHECK(std::abs(m[1]) < 1e-15);
  CHECK(std::abs(m[2]) < 1e-15);
  CHECK(std::abs(m[3] - 1.0) < 1e-15);
}

TEST_CASE("signal(A) evaluates to i*sigma_x at theta_a = pi/2") {
  const auto m = eval_matrix(signal(Axis::A), kPi / 2, 0);
  const std::complex<double> i(0, 1);
  CHECK(std::abs(m[0]) < 1e-15);
  CHECK(std::abs(m[1] - i) < 1e-15);
  CHECK(std::abs(m[2] - i) < 1e-15);
  CHECK(std::abs(m[3]) < 1e-15);
}

TEST_CASE("signal(B) lives in the b variable only") {
  const auto s = signal(Axis::B);
  CHECK(s.p.degree().deg_a == 0);
  CHECK(s.p.degree().deg_b == 1);
  CHECK(s.q.degree().deg_a == 0);
  CHECK(s.q.degree().deg_b == 1);
  CHECK(s.n == 1);
  CHECK(s.m == 0);
}

TEST_CASE("n=0 build is a constant phase") {
  const Protocol prot{{}, {ph(3, 4, 5)}};
  const auto pair = build(prot);
  CHECK(pair.n == 0);
  CHECK(pair.m == 0);
  CHECK(pair.q.is_zero());
  CHECK(pair.p == BiLaurent::constant(Scalar::exact(Rational(3, 5),
                                                    Rational(4, 5))));
}

TEST_CASE("n=1 build with identity phases is the signal operator") {
  const Protocol prot{{1}, {ph(1, 0, 1), ph(1, 0, 1)}};
  const auto pair = build(prot);
  CHECK(pair.p == signal(Axis::A).p);
  CHECK(pair.q == signal(Axis::A).q);
  CHECK(pair.n == 1);
  CHECK(pair.m == 1);
}

TEST_CASE("n=2 build matches the hand matrix product") {
  const Protocol prot{{1, 0}, {ph(1, 0, 1), ph(1, 0, 1), ph(1, 0, 1)}};
  const auto pair = build(prot);
  const auto a = signal(Axis::A);
  const auto b = signal(Axis::B);
  CHECK(pair.p == a.p * b.p + a.q * b.q);
  CHECK(pair.q == a.p * b.q + a.q * b.p);
  CHECK(pair.n == 2);
  CHECK(pair.m == 1);
}

TEST_CASE("build rejects exact mode over float phases") {
  const Protocol prot{{1}, {UnitPhase::angle(0.3), ph(1, 0, 1)}};
  CHECK(build(prot).backend() == Backend::Float);
  CHECK_THROWS_AS(build(prot, Backend::Exact), BackendMismatch);
}

TEST_CASE("protocol validation") {
  Protocol bad{{1, 2}, {ph(1, 0, 1), ph(1, 0, 1), ph(1, 0, 1)}};
  CHECK_THROWS_AS(bad.validate(), InvalidRange);
  Protocol wrong_len{{1}, {ph(1, 0, 1)}};
  CHECK_THROWS_AS(wrong_len.validate(), InvalidRange);
}

TEST_CASE("step_extend from the identity pair gives the signal") {
  const auto pair =
      step_extend(identity_pair(UnitPhase::one()), Axis::A, UnitPhase::one());
  CHECK(pair.p == signal(Axis::A).p);
  CHECK(pair.q == signal(Axis::A).q);
  CHECK(pair.n == 1);
  CHECK(pair.m == 1);
}

TEST_CASE("step_extend creates top-slice proportionality e^{2i phi}") {
  std::mt19937 rng(201);
  for (int rep = 0; rep < 30; ++rep) {
    const auto prot = testutil::random_protocol(rng, 4, Backend::Exact);
    const auto phase = testutil::random_exact_phase(rng);
    const auto ext = step_extend(build(prot), Axis::A, phase);
    const auto p_top = ext.p.slice(Axis::A, ext.m);
    const auto q_top = ext.q.slice(Axis::A, ext.m);
    CHECK(p_top == q_top.scaled(phase.squared().value()));
  }
}

TEST_CASE("build equals the fold of step_extend") {
  std::mt19937 rng(202);
  for (int rep = 0; rep < 20; ++rep) {
    const auto prot = testutil::random_protocol(rng, 5, Backend::Exact);
    auto pair = identity_pair(prot.phases[0]);
    for (int k = 0; k < prot.n(); ++k)
      pair = step_extend(pair, prot.s[k] ? Axis::A : Axis::B,
                         prot.phases[k + 1]);
    const auto direct = build(prot);
    CHECK(pair.p == direct.p);
    CHECK(pair.q == direct.q);
  }
}

TEST_CASE("step_peel inverts step_extend") {
  std::mt19937 rng(203);
  for (int rep = 0; rep < 30; ++rep) {
    const auto base = build(testutil::random_protocol(rng, 3, Backend::Exact));
    const auto phase = testutil::random_exact_phase(rng);
    const Axis axis = rep % 2 ? Axis::A : Axis::B;
    const auto back = step_peel(step_extend(base, axis, phase), axis, phase);
    CHECK(back.p == base.p);
    CHECK(back.q == base.q);
    CHECK(back.n == base.n);
    CHECK(back.m == base.m);
  }
}

TEST_CASE("step_peel of the signal pair returns the identity pair") {
  const auto peeled = step_peel(signal(Axis::A), Axis::A, UnitPhase::one());
  CHECK(peeled.p == BiLaurent::constant(Scalar::one(Backend::Exact)));
  CHECK(peeled.q.is_zero());
  CHECK(peeled.n == 0);
  CHECK(peeled.m == 0);
}

TEST_CASE("step_peel rejects non-proportional tops") {
  // P's a-top is nonzero while Q's vanishes, so nothing can cancel.
  PolyPair pair = signal(Axis::A);
  pair.q = BiLaurent(Backend::Exact);
  CHECK_THROWS_AS(step_peel(pair, Axis::A, UnitPhase::one()),
                  DegreeNotReduced);

  const Protocol prot{{1, 1}, {ph(1, 0, 1), ph(3, 4, 5), ph(5, 12, 13)}};
  CHECK_THROWS_AS(step_peel(build(prot), Axis::B, UnitPhase::one()),
                  DegreeNotReduced);
}

TEST_CASE("built pairs evaluate to unitary matrices on the torus") {
  std::mt19937 rng(204);
  std::uniform_int_distribution<int> len(0, 8);
  for (int rep = 0; rep < 12; ++rep) {
    const Backend backend = rep % 2 ? Backend::Exact : Backend::Float;
    const auto pair = build(testutil::random_protocol(rng, len(rng), backend),
                            backend);
    for (int ia = 0; ia < 16; ++ia)
      for (int ib = 0; ib < 16; ++ib) {
        const double ta = 2 * kPi * ia / 16, tb = 2 * kPi * ib / 16;
        const auto m = eval_matrix(pair, ta, tb);
        // U dagger U = I reduces to |P|^2 + |Q|^2 = 1 for this form.
        CHECK(std::abs(std::norm(m[0]) + std::norm(m[1]) - 1.0) < 1e-10);
      }
  }
}

TEST_CASE("built pairs have the inversion symmetry of the conjugated form") {
  std::mt19937 rng(205);
  for (int rep = 0; rep < 30; ++rep) {
    const auto pair = build(testutil::random_protocol(rng, 6, Backend::Exact));
    CHECK(pair.p.transformed(Transform::InvertBoth) == pair.p);
    CHECK(pair.q.transformed(Transform::InvertBoth) == -pair.q);
  }
}

TEST_CASE("built pairs have sign parity (-1)^m and (-1)^{n-m}") {
  std::mt19937 rng(206);
  std::uniform_int_distribution<int> len(0, 7);
  for (int rep = 0; rep < 30; ++rep) {
    const auto prot = testutil::random_protocol(rng, len(rng), Backend::Exact);
    const auto pair = build(prot);
    const int m = pair.m, nm = pair.n - pair.m;
    const auto sgn = [](const BiLaurent& x, int e) {
      return e % 2 == 0 ? x : -x;
    };
    CHECK(pair.p.transformed(Transform::NegateA) == sgn(pair.p, m));
    CHECK(pair.q.transformed(Transform::NegateA) == sgn(pair.q, m));
    CHECK(pair.p.transformed(Transform::NegateB) == sgn(pair.p, nm));
    CHECK(pair.q.transformed(Transform::NegateB) == sgn(pair.q, nm));
  }
}

TEST_CASE("built pairs stay inside the declared degree box") {
  std::mt19937 rng(207);
  std::uniform_int_distribution<int> len(0, 8);
  for (int rep = 0; rep < 30; ++rep) {
    const auto pair = build(testutil::random_protocol(rng, len(rng),
                                                      Backend::Exact));
    CHECK(pair.p.degree().within(pair.m, pair.n - pair.m));
    CHECK(pair.q.degree().within(pair.m, pair.n - pair.m));
  }
}

TEST_CASE("odd-length builds violate the original parity condition") {
  std::mt19937 rng(208);
  for (int n : {1, 3, 5, 7}) {
    const auto pair = build(testutil::random_protocol(rng, n, Backend::Exact));
    const auto report = check_conditions(pair, Variant::Original);
    CHECK(report.verdicts.at("ii").verdict == Verdict::Fail);
  }
}
