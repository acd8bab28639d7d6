#include "mqsp/decompose.hpp"

#include <cmath>
#include <sstream>

namespace mqsp {

namespace {

std::string fmt_double(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Canonical square root of a unit scalar: the root whose angle lies in
// (-pi/2, pi/2].  For exact values the root must itself be a Gaussian
// rational, which holds whenever the input is the square of one.
std::optional<Scalar> canonical_unit_sqrt(const Scalar& c) {
  if (!c.is_exact()) {
    const auto z = c.to_complex();
    const double phi = std::atan2(z.imag(), z.real()) / 2.0;
    return Scalar::floating(std::polar(1.0, phi));
  }
  const Rational x = c.re();
  const Rational y = c.im();
  const Rational p2 = (1 + x) / 2;
  if (p2 == 0) return Scalar::exact(Rational(0), Rational(1));  // c = -1
  const auto p = rational_sqrt(p2);
  if (!p) return std::nullopt;
  return Scalar::exact(*p, y / (2 * *p));
}

struct Ctx {
  const DecomposeOptions& opts;
  std::vector<BranchNote>& trace;
};

void note(Ctx& ctx, int depth, char axis, std::string status) {
  ctx.trace.push_back({depth, axis, std::move(status)});
}

bool base_case(const PolyPair& cur, int depth, Ctx& ctx, UnitPhase& phi0_out) {
  const double tol = ctx.opts.coeff_tol;
  if (cur.backend() == Backend::Exact) {
    if (!cur.q.is_zero()) {
      note(ctx, depth, '-', "base: Q is not zero");
      return false;
    }
    if (cur.p.term_count() != 1 || !cur.p.entries().count(ExpPair{0, 0})) {
      note(ctx, depth, '-', "base: P is not a constant");
      return false;
    }
    const Scalar u = cur.p.coeff(0, 0);
    if (u.norm_sqr_exact() != 1) {
      note(ctx, depth, '-', "base: |P| != 1");
      return false;
    }
    phi0_out = UnitPhase::from_scalar(u);
    return true;
  }
  for (const auto& [e, c] : cur.q.entries())
    if (std::abs(c.to_complex()) > tol) {
      note(ctx, depth, '-', "base: Q is not zero");
      return false;
    }
  std::complex<double> u = 0.0;
  for (const auto& [e, c] : cur.p.entries()) {
    if (e.j == 0 && e.k == 0)
      u = c.to_complex();
    else if (std::abs(c.to_complex()) > tol) {
      note(ctx, depth, '-', "base: P is not a constant");
      return false;
    }
  }
  if (std::abs(std::abs(u) - 1.0) > tol) {
    note(ctx, depth, '-', "base: |P| deviates from 1 by " +
                              fmt_double(std::abs(std::abs(u) - 1.0)));
    return false;
  }
  phi0_out = UnitPhase::from_scalar(Scalar::floating(u / std::abs(u)));
  return true;
}

bool solve(const PolyPair& cur, int depth, Ctx& ctx, std::vector<int>& s_rev,
           std::vector<UnitPhase>& ph_rev, UnitPhase& phi0_out) {
  if (cur.n == 0) return base_case(cur, depth, ctx, phi0_out);

  for (Axis axis : {Axis::A, Axis::B}) {
    const char ax = axis == Axis::A ? 'A' : 'B';
    const int axis_deg = axis == Axis::A ? cur.m : cur.n - cur.m;
    if (axis_deg < 1) continue;

    const TopSliceRelation rel =
        top_proportionality(cur, axis, ctx.opts.prop_rel_tol);
    switch (rel.kind) {
      case TopSliceRelation::Kind::Proportional: {
        const auto root = canonical_unit_sqrt(rel.ratio);
        if (!root) {
          note(ctx, depth, ax,
               "proportional, but the phase root is not an exact unit "
               "rational; branch abandoned");
          break;
        }
        UnitPhase phase = UnitPhase::from_scalar(*root);
        note(ctx, depth, ax,
             "proportional; exploring root phi = " + fmt_double(phase.radians()));
        PolyPair peeled;
        try {
          peeled = step_peel(cur, axis, phase, ctx.opts.peel_tol);
        } catch (const DegreeNotReduced& err) {
          note(ctx, depth, ax, std::string("peel rejected: ") + err.what());
          break;
        }
        s_rev.push_back(axis == Axis::A ? 1 : 0);
        ph_rev.push_back(phase);
        if (solve(peeled, depth + 1, ctx, s_rev, ph_rev, phi0_out)) return true;
        s_rev.pop_back();
        ph_rev.pop_back();
        note(ctx, depth, ax, "root phi dead end");
        note(ctx, depth, ax,
             "root phi+pi pruned: peels to the negated pair, equivalent "
             "under a phi0 shift, so it dead-ends as well");
        break;
      }
      case TopSliceRelation::Kind::BothSidesZero: {
        // Overstated box: the pair also fits two degrees lower on this
        // axis (two gate applications that cancel), so re-declare and
        // continue without emitting a phase.
        if (axis_deg < 2 || cur.n < 2) {
          note(ctx, depth, ax, "top slices vanish but the declared degree "
                               "cannot shrink further");
          break;
        }
        note(ctx, depth, ax, "top slices vanish; re-declaring the box two "
                             "degrees lower on this axis");
        PolyPair shrunk = cur;
        shrunk.n -= 2;
        if (axis == Axis::A) shrunk.m -= 2;
        if (solve(shrunk, depth, ctx, s_rev, ph_rev, phi0_out)) return true;
        note(ctx, depth, ax, "shrunk branch dead end");
        break;
      }
      case TopSliceRelation::Kind::NotProportional:
        note(ctx, depth, ax, "not proportional: " + rel.detail);
        break;
    }
  }
  return false;
}

}  // namespace

DecomposeResult decompose(const PolyPair& pair, const DecomposeOptions& opts) {
  if (opts.check_precondition) {
    CheckOptions copts;
    copts.tol = opts.coeff_tol;
    copts.prop_rel_tol = opts.prop_rel_tol;
    const ConditionReport rep = check_conditions(pair, Variant::Revised, copts);
    if (!rep.overall()) {
      std::string failing;
      for (const auto& [key, v] : rep.verdicts)
        if (v.verdict == Verdict::Fail)
          failing += (failing.empty() ? "" : ", ") + key;
      throw PrecondViolated("decompose: input fails revised conditions: " +
                            failing);
    }
  }

  DecomposeResult result;
  Ctx ctx{opts, result.trace};
  std::vector<int> s_rev;
  std::vector<UnitPhase> ph_rev;
  UnitPhase phi0 = UnitPhase::one();
  if (!solve(pair, 0, ctx, s_rev, ph_rev, phi0)) return result;

  Protocol prot;
  prot.s.assign(s_rev.rbegin(), s_rev.rend());
  prot.phases.push_back(phi0);
  prot.phases.insert(prot.phases.end(), ph_rev.rbegin(), ph_rev.rend());
  prot.validate();

  // Soundness gate: the recovered protocol must reproduce the input.
  const PolyPair rebuilt =
      build(prot, pair.backend() == Backend::Float
                      ? std::optional<Backend>(Backend::Float)
                      : std::nullopt);
  if (pair.backend() == Backend::Exact) {
    if (!(rebuilt.p == pair.p && rebuilt.q == pair.q)) {
      result.trace.push_back({0, '-', "rebuild mismatch on exact input"});
      return result;
    }
  } else {
    const double dev = std::max(max_abs_diff(rebuilt.p, pair.p),
                                max_abs_diff(rebuilt.q, pair.q));
    if (dev > opts.coeff_tol) {
      result.trace.push_back(
          {0, '-', "rebuild deviation " + fmt_double(dev) + " over tolerance"});
      return result;
    }
  }
  result.protocol = std::move(prot);
  return result;
}

RoundtripReport roundtrip_report(const Protocol& prot,
                                 const DecomposeOptions& opts) {
  const PolyPair pair = build(prot);
  DecomposeResult res = decompose(pair, opts);
  if (!res.decomposable())
    throw PrecondViolated("roundtrip_report: built pair failed to decompose");
  const PolyPair rebuilt =
      build(*res.protocol, pair.backend() == Backend::Float
                               ? std::optional<Backend>(Backend::Float)
                               : std::nullopt);
  RoundtripReport report{std::move(*res.protocol), 0.0, false};
  report.exact_match = pair.backend() == Backend::Exact &&
                       rebuilt.p == pair.p && rebuilt.q == pair.q;
  report.max_deviation = std::max(max_abs_diff(rebuilt.p, pair.p),
                                  max_abs_diff(rebuilt.q, pair.q));
  return report;
}

}  // namespace mqsp
