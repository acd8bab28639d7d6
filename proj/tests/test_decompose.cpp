#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "mqsp/counterexample.hpp"
#include "mqsp/decompose.hpp"
#include "testutil.hpp"

using namespace mqsp;

namespace {

UnitPhase ph(long re_n, long im_n, long den) {
  return UnitPhase::exact(Rational(re_n, den), Rational(im_n, den));
}

}  // namespace

TEST_CASE("the identity pair decomposes to the empty protocol") {
  const auto result = decompose(identity_pair(UnitPhase::one()));
  REQUIRE(result.decomposable());
  CHECK(result.protocol->n() == 0);
  CHECK(result.protocol->phases.size() == 1);
  CHECK(result.protocol->phases[0] == UnitPhase::one());
}

TEST_CASE("exact round trips rebuild the input bit for bit") {
  std::mt19937 rng(401);
  std::uniform_int_distribution<int> len(0, 8);
  for (int rep = 0; rep < 40; ++rep) {
    const auto prot = testutil::random_protocol(rng, len(rng), Backend::Exact);
    const auto pair = build(prot);
    const auto result = decompose(pair);
    REQUIRE(result.decomposable());
    CHECK(result.protocol->n() == pair.n);
    CHECK(result.protocol->hamming_weight() == pair.m);
    const auto rebuilt = build(*result.protocol);
    CHECK(rebuilt.p == pair.p);
    CHECK(rebuilt.q == pair.q);
  }
}

TEST_CASE("float round trips rebuild within tolerance") {
  std::mt19937 rng(402);
  for (int rep = 0; rep < 15; ++rep) {
    const auto prot = testutil::random_protocol(rng, 6, Backend::Float);
    const auto pair = build(prot);
    const auto result = decompose(pair);
    REQUIRE(result.decomposable());
    const auto rebuilt = build(*result.protocol, Backend::Float);
    CHECK(max_abs_diff(rebuilt.p, pair.p) < 1e-9);
    CHECK(max_abs_diff(rebuilt.q, pair.q) < 1e-9);
  }
}

TEST_CASE("roundtrip_report deviations") {
  std::mt19937 rng(403);
  const auto exact5 = testutil::random_protocol(rng, 5, Backend::Exact);
  const auto r1 = roundtrip_report(exact5);
  CHECK(r1.exact_match);
  CHECK(r1.max_deviation == 0.0);

  const auto float8 = testutil::random_protocol(rng, 8, Backend::Float);
  const auto r2 = roundtrip_report(float8);
  CHECK(r2.max_deviation < 1e-9);

  const Protocol empty{{}, {ph(3, -4, 5)}};
  const auto r3 = roundtrip_report(empty);
  CHECK(r3.exact_match);
  CHECK(r3.max_deviation == 0.0);
}

TEST_CASE("interior phases of +-i still decompose via the shrink branch") {
  // A e^{i pi/2 sigma_z} A collapses to e^{i pi/2 sigma_z}, so the built
  // pair has an overstated box; recovery must re-declare rather than peel.
  const Protocol prot{{1, 1, 0},
                      {ph(1, 0, 1), ph(0, 1, 1), ph(1, 0, 1), ph(3, 4, 5)}};
  const auto pair = build(prot);
  const auto result = decompose(pair);
  REQUIRE(result.decomposable());
  const auto rebuilt = build(*result.protocol);
  CHECK(rebuilt.p == pair.p);
  CHECK(rebuilt.q == pair.q);
  bool shrunk = false;
  for (const auto& n : result.trace)
    if (n.status.find("re-declaring") != std::string::npos) shrunk = true;
  CHECK(shrunk);
}

TEST_CASE("inputs failing the revised conditions are rejected up front") {
  auto pair = build(Protocol{{1}, {ph(1, 0, 1), ph(1, 0, 1)}});
  pair.p.add_term(0, 0, Scalar::exact(Rational(1, 3)));
  CHECK_THROWS_AS(decompose(pair), PrecondViolated);
}

TEST_CASE("dead-end branches record the pruned phi+pi root") {
  SearchSpec spec;
  spec.seed = 1;
  const auto found = search_nonrealizable(spec);
  REQUIRE(found.pair.has_value());
  const auto result = decompose(lift(*found.pair, ph(3, 4, 5)));
  REQUIRE(!result.decomposable());
  bool pruned = false;
  for (const auto& n : result.trace)
    if (n.status.find("phi+pi pruned") != std::string::npos) pruned = true;
  CHECK(pruned);
}

TEST_CASE("the searched lifted pair is not decomposable") {
  SearchSpec spec;
  spec.seed = 1;
  const auto found = search_nonrealizable(spec);
  REQUIRE(found.pair.has_value());
  const auto lifted = lift(*found.pair, ph(3, 4, 5));
  DecomposeOptions opts;
  const auto result = decompose(lifted, opts);
  CHECK(!result.decomposable());

  // Top level: axis A proportional (the lift created it), axis B not.
  bool a_prop = false, b_not = false, dead_root = false;
  for (const auto& n : result.trace) {
    if (n.depth == 0 && n.axis == 'A' &&
        n.status.find("proportional; exploring") != std::string::npos)
      a_prop = true;
    if (n.depth == 0 && n.axis == 'B' &&
        n.status.find("not proportional") != std::string::npos)
      b_not = true;
    if (n.depth == 0 && n.axis == 'A' &&
        n.status.find("root phi dead end") != std::string::npos)
      dead_root = true;
  }
  CHECK(a_prop);
  CHECK(b_not);
  CHECK(dead_root);
}

TEST_CASE("recovered s always matches the declared a-degree") {
  std::mt19937 rng(404);
  for (int rep = 0; rep < 25; ++rep) {
    const auto prot = testutil::random_protocol(rng, 7, Backend::Exact);
    const auto pair = build(prot);
    const auto result = decompose(pair);
    REQUIRE(result.decomposable());
    CHECK(result.protocol->hamming_weight() == pair.m);
    CHECK(static_cast<int>(result.protocol->s.size()) == pair.n);
  }
}
