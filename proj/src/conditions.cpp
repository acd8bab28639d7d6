#include "mqsp/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mqsp {

namespace {

std::string exp_str(int j, int k) {
  std::ostringstream s;
  s << "(" << j << "," << k << ")";
  return s.str();
}

// Checks transformed(poly) == sign * poly with sign = (-1)^parity_mod2.
// The zero polynomial satisfies every parity.  Returns a witness exponent
// on failure.
std::optional<std::string> parity_violation(const BiLaurent& poly,
                                            Transform t, int parity,
                                            double tol) {
  const bool odd = ((parity % 2) + 2) % 2 == 1;
  const BiLaurent expected = odd ? -poly : poly;
  const BiLaurent mapped = poly.transformed(t);
  if (poly.backend() == Backend::Exact) {
    if (mapped == expected) return std::nullopt;
    const BiLaurent diff = mapped - expected;
    const auto& [e, c] = *diff.entries().begin();
    return "coefficient at " + exp_str(e.j, e.k);
  }
  double worst = 0.0;
  ExpPair at{};
  for (const BiLaurent* side : {&mapped, &expected})
    for (const auto& [e, c] : side->entries()) {
      const double dev = std::abs(mapped.coeff(e.j, e.k).to_complex() -
                                  expected.coeff(e.j, e.k).to_complex());
      if (dev > worst) {
        worst = dev;
        at = e;
      }
    }
  if (worst <= tol) return std::nullopt;
  std::ostringstream s;
  s << "coefficient at " << exp_str(at.j, at.k) << ", deviation " << worst;
  return s.str();
}

ConditionVerdict check_degree(const PolyPair& pair) {
  const int max_a = pair.m;
  const int max_b = pair.n - pair.m;
  for (const auto& [name, poly] :
       {std::pair<const char*, const BiLaurent*>{"P", &pair.p},
        {"Q", &pair.q}}) {
    for (const auto& [e, c] : poly->entries()) {
      if (std::abs(e.j) > max_a || std::abs(e.k) > max_b) {
        return {Verdict::Fail, std::string(name) + " has term at " +
                                   exp_str(e.j, e.k) + " outside box (" +
                                   std::to_string(max_a) + "," +
                                   std::to_string(max_b) + ")"};
      }
    }
  }
  return {};
}

ConditionVerdict check_parity_set(
    const PolyPair& pair,
    const std::vector<std::tuple<const BiLaurent*, const char*, Transform,
                                 const char*, int>>& reqs,
    double tol) {
  for (const auto& [poly, pname, t, tname, parity] : reqs) {
    if (auto w = parity_violation(*poly, t, parity, tol)) {
      std::ostringstream s;
      s << pname << " lacks parity " << ((parity % 2 + 2) % 2) << " under "
        << tname << ": " << *w;
      return {Verdict::Fail, s.str()};
    }
  }
  return {};
}

// Condition (iv) at the coefficient level: P * star(P) + Q * star(Q) must
// equal the constant 1; the (l_a, l_b) coefficient of that product is
// exactly the convolution sum over coefficient shifts.
ConditionVerdict check_unitarity(const PolyPair& pair, double tol) {
  BiLaurent g = pair.p * pair.p.star() + pair.q * pair.q.star();
  g.add_term(0, 0, -Scalar::one(pair.backend()));
  if (pair.backend() == Backend::Exact) {
    if (g.is_zero()) return {};
    const auto& [e, c] = *g.entries().begin();
    return {Verdict::Fail, "convolution residual at shift " +
                               exp_str(e.j, e.k) + " is " +
                               format_rational(c.re()) + " + " +
                               format_rational(c.im()) + "i"};
  }
  double worst = 0.0;
  ExpPair at{};
  for (const auto& [e, c] : g.entries()) {
    const double mag = std::abs(c.to_complex());
    if (mag > worst) {
      worst = mag;
      at = e;
    }
  }
  if (worst <= tol) return {};
  std::ostringstream s;
  s << "convolution residual at shift " << exp_str(at.j, at.k) << " is "
    << worst;
  return {Verdict::Fail, s.str()};
}

}  // namespace

TopSliceRelation top_proportionality(const PolyPair& pair, Axis axis,
                                     double rel_tol) {
  const int top = axis == Axis::A ? pair.m : pair.n - pair.m;
  const UniLaurent sp = pair.p.slice(axis, top);
  const UniLaurent sq = pair.q.slice(axis, top);
  TopSliceRelation rel;
  rel.ratio = Scalar::zero(pair.backend());
  if (sp.is_zero() && sq.is_zero()) {
    rel.kind = TopSliceRelation::Kind::BothSidesZero;
    rel.detail = "both top slices empty at declared degree " +
                 std::to_string(top);
    return rel;
  }

  if (pair.backend() == Backend::Exact) {
    if (sq.is_zero()) {
      rel.kind = TopSliceRelation::Kind::NotProportional;
      rel.witness_exponent = sp.entries().begin()->first;
      rel.detail = "Q top slice vanishes while P does not";
      return rel;
    }
    const auto& [e0, q0] = *sq.entries().begin();
    const Scalar c = sp.coeff(e0) / q0;
    if (c.norm_sqr_exact() != 1) {
      rel.kind = TopSliceRelation::Kind::NotProportional;
      rel.witness_exponent = e0;
      rel.detail = "slice ratio is not unit-modulus";
      return rel;
    }
    const UniLaurent diff = sp - sq.scaled(c);
    if (!diff.is_zero()) {
      rel.kind = TopSliceRelation::Kind::NotProportional;
      rel.witness_exponent = diff.entries().begin()->first;
      rel.detail = "ratio fixed at exponent " + std::to_string(e0) +
                   " fails elsewhere";
      return rel;
    }
    rel.kind = TopSliceRelation::Kind::Proportional;
    rel.ratio = c;
    return rel;
  }

  // Float: fix the ratio at the largest-magnitude coefficient pair, then
  // require every other pair to match within relative tolerance.
  double scale = 0.0;
  int pivot = 0;
  double pivot_mag = -1.0;
  std::vector<int> exps;
  for (const UniLaurent* s : {&sp, &sq})
    for (const auto& [e, c] : s->entries()) {
      if (std::find(exps.begin(), exps.end(), e) == exps.end())
        exps.push_back(e);
    }
  for (int e : exps) {
    const double mag = std::abs(sp.coeff(e).to_complex()) +
                       std::abs(sq.coeff(e).to_complex());
    scale = std::max(scale, mag);
    if (mag > pivot_mag) {
      pivot_mag = mag;
      pivot = e;
    }
  }
  const std::complex<double> qp = sq.coeff(pivot).to_complex();
  if (std::abs(qp) <= rel_tol * scale) {
    rel.kind = TopSliceRelation::Kind::NotProportional;
    rel.witness_exponent = pivot;
    rel.detail = "Q top slice vanishes at the pivot while P does not";
    return rel;
  }
  const std::complex<double> c = sp.coeff(pivot).to_complex() / qp;
  if (std::abs(std::abs(c) - 1.0) > rel_tol) {
    rel.kind = TopSliceRelation::Kind::NotProportional;
    rel.witness_exponent = pivot;
    rel.detail = "slice ratio modulus deviates from 1 by " +
                 std::to_string(std::abs(std::abs(c) - 1.0));
    return rel;
  }
  for (int e : exps) {
    const double dev =
        std::abs(sp.coeff(e).to_complex() - c * sq.coeff(e).to_complex());
    if (dev > rel_tol * scale) {
      rel.kind = TopSliceRelation::Kind::NotProportional;
      rel.witness_exponent = e;
      rel.detail = "cross residual " + std::to_string(dev) + " at exponent " +
                   std::to_string(e);
      return rel;
    }
  }
  rel.kind = TopSliceRelation::Kind::Proportional;
  rel.ratio = Scalar::floating(c);
  return rel;
}

ConditionReport check_conditions(const PolyPair& pair, Variant variant,
                                 const CheckOptions& opts) {
  ConditionReport report;
  report.variant = variant;
  const int n = pair.n;
  const int m = pair.m;
  const double tol = opts.tol;

  report.verdicts["i"] = check_degree(pair);

  if (variant == Variant::Revised) {
    report.verdicts["ii"] = check_parity_set(
        pair,
        {{&pair.p, "P", Transform::InvertBoth, "(a,b)->(1/a,1/b)", 0},
         {&pair.q, "Q", Transform::InvertBoth, "(a,b)->(1/a,1/b)", 1}},
        tol);
    report.verdicts["iii"] = check_parity_set(
        pair,
        {{&pair.p, "P", Transform::NegateA, "a->-a", m},
         {&pair.p, "P", Transform::NegateB, "b->-b", n - m},
         {&pair.q, "Q", Transform::NegateA, "a->-a", m},
         {&pair.q, "Q", Transform::NegateB, "b->-b", n - m}},
        tol);
  } else {
    report.verdicts["ii"] = check_parity_set(
        pair,
        {{&pair.p, "P", Transform::InvertBoth, "(a,b)->(1/a,1/b)", n},
         {&pair.q, "Q", Transform::InvertBoth, "(a,b)->(1/a,1/b)", n - 1}},
        tol);
    report.verdicts["iii"] = check_parity_set(
        pair,
        {{&pair.p, "P", Transform::NegateA, "a->-a", m},
         {&pair.p, "P", Transform::NegateB, "b->-b", m - n},
         {&pair.q, "Q", Transform::NegateA, "a->-a", m - 1},
         {&pair.q, "Q", Transform::NegateB, "b->-b", n - m - 1}},
        tol);
  }

  report.verdicts["iv"] = check_unitarity(pair, tol);

  if (variant == Variant::Original) {
    report.verdicts["v"] = {Verdict::Vacuous,
                            "conjecture assumed as stated, not checked"};
  } else if (m < 1 || n - m < 1) {
    report.verdicts["v"] = {Verdict::Vacuous,
                            "requires m >= 1 and n - m >= 1"};
  } else {
    const TopSliceRelation ra =
        top_proportionality(pair, Axis::A, opts.prop_rel_tol);
    const TopSliceRelation rb =
        top_proportionality(pair, Axis::B, opts.prop_rel_tol);
    const auto ok = [](const TopSliceRelation& r) {
      // Empty slices satisfy the proportionality relation vacuously.
      return r.kind != TopSliceRelation::Kind::NotProportional;
    };
    if (ok(ra) || ok(rb)) {
      report.verdicts["v"] = {};
    } else {
      report.verdicts["v"] = {Verdict::Fail,
                              "axis A: " + ra.detail + "; axis B: " + rb.detail};
    }
  }
  return report;
}

// ---------------------------------------------------------- forced_zero_trace

namespace {

struct Lattice {
  int max_a, max_b;  // degree box
  int par_a, par_b;  // required exponent parities mod 2

  bool contains(int j, int k) const {
    return std::abs(j) <= max_a && std::abs(k) <= max_b &&
           ((j - par_a) % 2 == 0) && ((k - par_b) % 2 == 0);
  }
};

}  // namespace

ForcedZeroTrace forced_zero_trace(int n, int m) {
  if (m < 1 || n - m < 1)
    throw InvalidRange("forced_zero_trace: need 1 <= m <= n - 1");

  ForcedZeroTrace trace;
  trace.n = n;
  trace.m = m;

  // Slots that can be nonzero at all under the degree box and the sign
  // parities: P on (j = m mod 2, k = n - m mod 2), Q one step off in both.
  const Lattice pl{m, n - m, ((m % 2) + 2) % 2, (((n - m) % 2) + 2) % 2};
  const Lattice ql{m, n - m, ((pl.par_a + 1) % 2), ((pl.par_b + 1) % 2)};

  std::set<std::pair<int, int>> zero_p, zero_q;
  const auto alive = [&](const Lattice& lat,
                         const std::set<std::pair<int, int>>& zeroed, int j,
                         int k) { return lat.contains(j, k) && !zeroed.count({j, k}); };

  // Shifts scanned outermost-first; at each shift the orthogonality sum
  // over coefficient products must vanish, and when exactly one product
  // survives it pairs (j,k) with (-j,-k), so the inversion parity turns it
  // into +/- |coefficient|^2 and forces the coefficient to zero.
  std::vector<std::pair<int, int>> shifts;
  for (int la = 2 * m; la >= -2 * m; la -= 2)
    for (int lb = 2 * (n - m); lb >= -2 * (n - m); lb -= 2)
      if (la != 0 || lb != 0) shifts.emplace_back(la, lb);
  std::stable_sort(shifts.begin(), shifts.end(),
                   [](const auto& x, const auto& y) {
                     return std::abs(x.first) + std::abs(x.second) >
                            std::abs(y.first) + std::abs(y.second);
                   });

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [la, lb] : shifts) {
      struct Survivor {
        char poly;
        int j, k;
      };
      std::vector<Survivor> survivors;
      const auto scan = [&](const Lattice& lat,
                            const std::set<std::pair<int, int>>& zeroed,
                            char tag) {
        for (int j = -lat.max_a; j <= lat.max_a; ++j)
          for (int k = -lat.max_b; k <= lat.max_b; ++k)
            if (alive(lat, zeroed, j, k) && alive(lat, zeroed, j - la, k - lb))
              survivors.push_back({tag, j, k});
      };
      scan(pl, zero_p, 'P');
      scan(ql, zero_q, 'Q');
      if (survivors.size() != 1) continue;
      const Survivor s = survivors.front();
      // A lone survivor is always self-paired under inversion; a non
      // self-paired product would come with its conjugate twin alive.
      if (s.j - la != -s.j || s.k - lb != -s.k)
        throw std::logic_error("forced_zero_trace: lone survivor not an "
                               "inversion pair");
      auto& zeroed = s.poly == 'P' ? zero_p : zero_q;
      zeroed.insert({s.j, s.k});
      zeroed.insert({-s.j, -s.k});
      std::ostringstream why;
      why << "single surviving product " << s.poly << exp_str(s.j, s.k) << "*"
          << s.poly << "*" << exp_str(-s.j, -s.k)
          << "; inversion parity makes it +/-|" << s.poly << exp_str(s.j, s.k)
          << "|^2 = 0";
      trace.steps.push_back({la, lb, s.poly, s.j, s.k, why.str()});
      changed = true;
    }
  }

  for (int j = -m; j <= m; ++j)
    for (int k = -(n - m); k <= n - m; ++k) {
      if (j == 0 && k == 0) continue;
      const bool p_zero = !pl.contains(j, k) || zero_p.count({j, k});
      const bool q_zero = !ql.contains(j, k) || zero_q.count({j, k});
      if (p_zero && q_zero) trace.final_zeroed.insert({j, k});
    }
  return trace;
}

bool ForcedZeroTrace::covers_box() const {
  for (int j = -m; j <= m; ++j)
    for (int k = -(n - m); k <= n - m; ++k) {
      if (j == 0 && k == 0) continue;
      if (!final_zeroed.count({j, k})) return false;
    }
  return true;
}

}  // namespace mqsp
