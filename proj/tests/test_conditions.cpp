#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mqsp/conditions.hpp"
#include "testutil.hpp"

using namespace mqsp;

namespace {

UnitPhase ph(long re_n, long im_n, long den) {
  return UnitPhase::exact(Rational(re_n, den), Rational(im_n, den));
}

}  // namespace

TEST_CASE("random exact builds pass the revised conditions") {
  std::mt19937 rng(301);
  std::uniform_int_distribution<int> len(0, 8);
  for (int rep = 0; rep < 60; ++rep) {
    const auto pair = build(testutil::random_protocol(rng, len(rng),
                                                      Backend::Exact));
    const auto report = check_conditions(pair, Variant::Revised);
    CHECK(report.overall());
  }
}

TEST_CASE("the n=1 signal pair fails original condition (iii)") {
  const Protocol prot{{1}, {ph(1, 0, 1), ph(1, 0, 1)}};
  const auto report = check_conditions(build(prot), Variant::Original);
  CHECK(report.verdicts.at("iii").verdict == Verdict::Fail);
  CHECK(!report.verdicts.at("iii").witness.empty());
  CHECK(!report.overall());
}

TEST_CASE("the identity pair passes with a vacuous proportionality clause") {
  const auto pair = identity_pair(UnitPhase::one());
  const auto report = check_conditions(pair, Variant::Revised);
  CHECK(report.overall());
  CHECK(report.verdicts.at("v").verdict == Verdict::Vacuous);
}

TEST_CASE("failed checks carry witnesses") {
  auto pair = build(Protocol{{1, 0}, {ph(1, 0, 1), ph(3, 4, 5), ph(1, 0, 1)}});
  pair.p.add_term(0, 0, Scalar::exact(Rational(1, 10)));
  const auto report = check_conditions(pair, Variant::Revised);
  CHECK(report.verdicts.at("iv").verdict == Verdict::Fail);
  CHECK(!report.verdicts.at("iv").witness.empty());
}

TEST_CASE("float checks respect the tolerance knob") {
  std::mt19937 rng(302);
  auto pair = build(testutil::random_protocol(rng, 4, Backend::Float));
  pair.p.add_term(0, 0, Scalar::floating({1e-12, 0}));
  CHECK(check_conditions(pair, Variant::Revised).overall());
  CheckOptions tight;
  tight.tol = 1e-14;
  CHECK(!check_conditions(pair, Variant::Revised, tight).overall());
}

TEST_CASE("axis-A tops of the n=1 signal pair are proportional with c = 1") {
  const Protocol prot{{1}, {ph(1, 0, 1), ph(1, 0, 1)}};
  const auto rel = top_proportionality(build(prot), Axis::A);
  CHECK(rel.kind == TopSliceRelation::Kind::Proportional);
  CHECK(rel.ratio == Scalar::one(Backend::Exact));
}

TEST_CASE("extension by (3+4i)/5 gives ratio (-7+24i)/25") {
  std::mt19937 rng(303);
  const auto base = build(testutil::random_protocol(rng, 3, Backend::Exact));
  const auto ext = step_extend(base, Axis::A, ph(3, 4, 5));
  const auto rel = top_proportionality(ext, Axis::A);
  CHECK(rel.kind == TopSliceRelation::Kind::Proportional);
  CHECK(rel.ratio == Scalar::exact(Rational(-7, 25), Rational(24, 25)));
}

TEST_CASE("an overstated degree box reports BothSidesZero") {
  auto pair = signal(Axis::A);
  pair.m = 2;
  pair.n = 2;
  CHECK(top_proportionality(pair, Axis::A).kind ==
        TopSliceRelation::Kind::BothSidesZero);
}

TEST_CASE("built pairs are proportional on the axis of the last signal") {
  std::mt19937 rng(304);
  for (int rep = 0; rep < 40; ++rep) {
    auto prot = testutil::random_protocol(rng, 5, Backend::Exact);
    const auto pair = build(prot);
    const Axis axis = prot.s.back() ? Axis::A : Axis::B;
    const auto rel = top_proportionality(pair, axis);
    CHECK(rel.kind == TopSliceRelation::Kind::Proportional);
    CHECK(rel.ratio == prot.phases.back().squared().value());
  }
}

TEST_CASE("mismatched tops are reported with a witness exponent") {
  BiLaurent p(Backend::Exact), q(Backend::Exact);
  p.add_term(1, 1, Scalar::one(Backend::Exact));
  p.add_term(1, -1, Scalar::one(Backend::Exact));
  p.add_term(-1, 1, Scalar::one(Backend::Exact));
  p.add_term(-1, -1, Scalar::one(Backend::Exact));
  q = p;
  q.add_term(1, -1, Scalar::one(Backend::Exact));  // now 2 at (1,-1)
  const PolyPair pair{p, q, 2, 1};
  const auto rel = top_proportionality(pair, Axis::A);
  CHECK(rel.kind == TopSliceRelation::Kind::NotProportional);
  CHECK(rel.witness_exponent == -1);
}

TEST_CASE("forced-zero chain for (n, m) = (2, 1)") {
  const auto trace = forced_zero_trace(2, 1);
  REQUIRE(!trace.steps.empty());
  const auto& first = trace.steps.front();
  CHECK(first.l_a == 2);
  CHECK(first.l_b == 2);
  CHECK(first.poly == 'P');
  CHECK(first.j == 1);
  CHECK(first.k == 1);

  std::set<std::pair<int, int>> expected;
  for (int j = -1; j <= 1; ++j)
    for (int k = -1; k <= 1; ++k)
      if (j != 0 || k != 0) expected.insert({j, k});
  CHECK(trace.final_zeroed == expected);
  CHECK(trace.covers_box());
}

TEST_CASE("forced-zero guard requires both variables") {
  CHECK_THROWS_AS(forced_zero_trace(1, 0), InvalidRange);
  CHECK_THROWS_AS(forced_zero_trace(1, 1), InvalidRange);
  CHECK_THROWS_AS(forced_zero_trace(3, 0), InvalidRange);
}

TEST_CASE("forced-zero chain covers the box for all small shapes") {
  for (int n = 2; n <= 6; ++n)
    for (int m = 1; m < n; ++m) {
      const auto trace = forced_zero_trace(n, m);
      CHECK(trace.covers_box());
    }
}

TEST_CASE("coefficient-level unitarity agrees with torus sampling") {
  std::mt19937 rng(305);
  const double pi = std::numbers::pi;
  for (int rep = 0; rep < 6; ++rep) {
    auto pair = build(testutil::random_protocol(rng, 5, Backend::Float));
    const bool perturb = rep % 2 == 1;
    if (perturb) pair.q.add_term(0, 1, Scalar::floating({0.05, 0}));
    const auto report = check_conditions(pair, Variant::Revised);
    double max_dev = 0;
    for (int ia = 0; ia < 32; ++ia)
      for (int ib = 0; ib < 32; ++ib) {
        const double ta = 2 * pi * ia / 32, tb = 2 * pi * ib / 32;
        const double sum = std::norm(pair.p.evaluate(ta, tb)) +
                           std::norm(pair.q.evaluate(ta, tb));
        max_dev = std::max(max_dev, std::abs(sum - 1.0));
      }
    if (perturb) {
      CHECK(report.verdicts.at("iv").verdict == Verdict::Fail);
      CHECK(max_dev > 1e-8);
    } else {
      CHECK(report.verdicts.at("iv").verdict == Verdict::Pass);
      CHECK(max_dev < 1e-9);
    }
  }
}
