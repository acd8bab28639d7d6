#include "mqsp/counterexample.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace mqsp {

namespace {

constexpr double kPenaltyWeight = 0.1;   // sqrt of the 1e-2 objective weight
constexpr double kPenaltyTarget = 0.05;  // hinge target for the axis margins
constexpr double kFdStep = 1e-6;

}  // namespace

UnitarityModel::UnitarityModel(int n, int m) : n_(n), m_(m) {
  if (m < 1 || n - m < 1)
    throw InvalidSpec("UnitarityModel: need m >= 1 and n - m >= 1, otherwise "
                      "top proportionality is vacuous");
  const int pa = ((m % 2) + 2) % 2;
  const int pb = (((n - m) % 2) + 2) % 2;
  // Both families share the lattice (j = m, k = n-m mod 2); inversion
  // symmetry ties (j,k) to (-j,-k), so parameters live on lex-positive
  // representatives.  P keeps a free constant term, Q's is forced to zero
  // by the odd inversion parity.
  for (int j = -m; j <= m; ++j)
    for (int k = -(n - m); k <= n - m; ++k) {
      if ((j - pa) % 2 != 0 || (k - pb) % 2 != 0) continue;
      if (j < 0 || (j == 0 && k < 0)) continue;
      if (j == 0 && k == 0) {
        if (pa == 0 && pb == 0) p_reps_.push_back({0, 0});
        continue;
      }
      p_reps_.push_back({j, k});
      q_reps_.push_back({j, k});
    }
  // Keep the constant-term representative first when present.
  std::stable_sort(p_reps_.begin(), p_reps_.end(),
                   [](const Site& a, const Site& b) {
                     const bool ca = a.j == 0 && a.k == 0;
                     const bool cb = b.j == 0 && b.k == 0;
                     return ca && !cb;
                   });
  for (int la = 0; la <= 2 * m; la += 2)
    for (int lb = -2 * (n - m); lb <= 2 * (n - m); lb += 2)
      if (la > 0 || lb > 0) shifts_.emplace_back(la, lb);
}

int UnitarityModel::param_count() const {
  return 2 * static_cast<int>(p_reps_.size() + q_reps_.size());
}

int UnitarityModel::residual_count() const {
  return 1 + 2 * static_cast<int>(shifts_.size());
}

UnitarityModel::CoeffMap UnitarityModel::coeffs(const Eigen::VectorXd& x,
                                                bool q_family) const {
  CoeffMap out;
  const auto& reps = q_family ? q_reps_ : p_reps_;
  const int base = q_family ? 2 * static_cast<int>(p_reps_.size()) : 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::complex<double> c{x[base + 2 * i], x[base + 2 * i + 1]};
    if (c == 0.0) continue;
    out[{reps[i].j, reps[i].k}] += c;
    if (reps[i].j != 0 || reps[i].k != 0)
      out[{-reps[i].j, -reps[i].k}] += q_family ? -c : c;
  }
  return out;
}

UnitarityModel::CoeffMap UnitarityModel::p_coeffs(
    const Eigen::VectorXd& x) const {
  return coeffs(x, false);
}

UnitarityModel::CoeffMap UnitarityModel::q_coeffs(
    const Eigen::VectorXd& x) const {
  return coeffs(x, true);
}

PolyPair UnitarityModel::assemble(const Eigen::VectorXd& x) const {
  PolyPair pair;
  pair.p = BiLaurent::zero(Backend::Float);
  pair.q = BiLaurent::zero(Backend::Float);
  pair.n = n_;
  pair.m = m_;
  for (const auto& [e, c] : coeffs(x, false))
    pair.p.add_term(e.first, e.second, Scalar::floating(c));
  for (const auto& [e, c] : coeffs(x, true))
    pair.q.add_term(e.first, e.second, Scalar::floating(c));
  return pair;
}

Eigen::VectorXd UnitarityModel::params_from_pair(const PolyPair& pair) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(param_count());
  for (std::size_t i = 0; i < p_reps_.size(); ++i) {
    const auto c = pair.p.coeff(p_reps_[i].j, p_reps_[i].k).to_complex();
    x[2 * i] = c.real();
    x[2 * i + 1] = c.imag();
  }
  const int base = 2 * static_cast<int>(p_reps_.size());
  for (std::size_t i = 0; i < q_reps_.size(); ++i) {
    const auto c = pair.q.coeff(q_reps_[i].j, q_reps_[i].k).to_complex();
    x[base + 2 * i] = c.real();
    x[base + 2 * i + 1] = c.imag();
  }
  return x;
}

Eigen::VectorXd UnitarityModel::residual(const Eigen::VectorXd& x) const {
  const CoeffMap P = coeffs(x, false);
  const CoeffMap Q = coeffs(x, true);
  const auto g_at = [&](int la, int lb) {
    std::complex<double> g = 0.0;
    for (const CoeffMap* X : {&P, &Q})
      for (const auto& [e, c] : *X) {
        const auto it = X->find({e.first - la, e.second - lb});
        if (it != X->end()) g += c * std::conj(it->second);
      }
    return g;
  };
  Eigen::VectorXd r(residual_count());
  r[0] = g_at(0, 0).real() - 1.0;
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    const auto g = g_at(shifts_[i].first, shifts_[i].second);
    r[1 + 2 * i] = g.real();
    r[2 + 2 * i] = g.imag();
  }
  return r;
}

Eigen::MatrixXd UnitarityModel::jacobian(const Eigen::VectorXd& x) const {
  const CoeffMap P = coeffs(x, false);
  const CoeffMap Q = coeffs(x, true);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(residual_count(), param_count());

  const auto lookup = [](const CoeffMap& X, int j,
                         int k) -> std::complex<double> {
    const auto it = X.find({j, k});
    return it == X.end() ? std::complex<double>(0.0) : it->second;
  };

  // Each parameter touches at most two lattice sites; the derivative of
  // the convolution at shift l is w * conj(X_{s-l}) + X_{s+l} * conj(w)
  // summed over those sites.
  int col = 0;
  for (const bool q_family : {false, true}) {
    const auto& reps = q_family ? q_reps_ : p_reps_;
    const CoeffMap& X = q_family ? Q : P;
    for (const Site& rep : reps) {
      for (const int part : {0, 1}) {  // 0 = real param, 1 = imag param
        const std::complex<double> w =
            part == 0 ? std::complex<double>(1.0) : std::complex<double>(0, 1);
        std::vector<std::pair<Site, std::complex<double>>> sites;
        sites.push_back({rep, w});
        if (rep.j != 0 || rep.k != 0)
          sites.push_back({{-rep.j, -rep.k}, q_family ? -w : w});
        const auto dg_at = [&](int la, int lb) {
          std::complex<double> dg = 0.0;
          for (const auto& [s, ww] : sites)
            dg += ww * std::conj(lookup(X, s.j - la, s.k - lb)) +
                  lookup(X, s.j + la, s.k + lb) * std::conj(ww);
          return dg;
        };
        J(0, col) = dg_at(0, 0).real();
        for (std::size_t i = 0; i < shifts_.size(); ++i) {
          const auto dg = dg_at(shifts_[i].first, shifts_[i].second);
          J(1 + 2 * i, col) = dg.real();
          J(2 + 2 * i, col) = dg.imag();
        }
        ++col;
      }
    }
  }
  return J;
}

double UnitarityModel::axis_margin(const Eigen::VectorXd& x, Axis axis) const {
  const CoeffMap P = coeffs(x, false);
  const CoeffMap Q = coeffs(x, true);
  const int top = axis == Axis::A ? m_ : n_ - m_;
  std::complex<double> ip = 0.0;
  double np = 0.0, nq = 0.0;
  const auto pick = [&](const CoeffMap& X, int j, int k) {
    const auto it = X.find({j, k});
    return it == X.end() ? std::complex<double>(0.0) : it->second;
  };
  const int lim = axis == Axis::A ? n_ - m_ : m_;
  for (int e = -lim; e <= lim; ++e) {
    const int j = axis == Axis::A ? top : e;
    const int k = axis == Axis::A ? e : top;
    const auto pv = pick(P, j, k);
    const auto qv = pick(Q, j, k);
    ip += pv * std::conj(qv);
    np += std::norm(pv);
    nq += std::norm(qv);
  }
  const double denom = np + nq;
  if (denom < 1e-30) return 0.0;
  return std::sqrt(std::max(0.0, 1.0 - 2.0 * std::abs(ip) / denom));
}

namespace {

// Full objective: unitarity residuals plus one hinge row per axis pushing
// the top slices away from proportionality.  The hinge keeps the
// unitarity block dominant near convergence.
Eigen::VectorXd full_residual(const UnitarityModel& model,
                              const Eigen::VectorXd& x) {
  const Eigen::VectorXd r = model.residual(x);
  Eigen::VectorXd f(r.size() + 2);
  f.head(r.size()) = r;
  f[r.size()] = kPenaltyWeight *
                std::max(0.0, kPenaltyTarget - model.axis_margin(x, Axis::A));
  f[r.size() + 1] = kPenaltyWeight *
                    std::max(0.0, kPenaltyTarget - model.axis_margin(x, Axis::B));
  return f;
}

Eigen::MatrixXd full_jacobian(const UnitarityModel& model,
                              const Eigen::VectorXd& x) {
  const Eigen::MatrixXd Ju = model.jacobian(x);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(Ju.rows() + 2, Ju.cols());
  J.topRows(Ju.rows()) = Ju;
  // Hinge rows by central differences; two scalar functions only.
  for (int axis_row = 0; axis_row < 2; ++axis_row) {
    const Axis axis = axis_row == 0 ? Axis::A : Axis::B;
    Eigen::VectorXd xp = x;
    for (int t = 0; t < x.size(); ++t) {
      xp[t] = x[t] + kFdStep;
      const double hi =
          std::max(0.0, kPenaltyTarget - model.axis_margin(xp, axis));
      xp[t] = x[t] - kFdStep;
      const double lo =
          std::max(0.0, kPenaltyTarget - model.axis_margin(xp, axis));
      xp[t] = x[t];
      J(Ju.rows() + axis_row, t) = kPenaltyWeight * (hi - lo) / (2 * kFdStep);
    }
  }
  return J;
}

// Plain Levenberg-Marquardt with additive damping.
Eigen::VectorXd levenberg_marquardt(const UnitarityModel& model,
                                    Eigen::VectorXd x, int max_iters) {
  double lambda = 1e-3;
  Eigen::VectorXd f = full_residual(model, x);
  double cost = f.squaredNorm();
  for (int iter = 0; iter < max_iters; ++iter) {
    if (cost < 1e-28 || lambda > 1e12) break;
    const Eigen::MatrixXd J = full_jacobian(model, x);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * f;
    Eigen::MatrixXd H = JtJ;
    H.diagonal().array() += lambda * (JtJ.diagonal().array() + 1e-12);
    const Eigen::VectorXd step = H.ldlt().solve(-g);
    if (!step.allFinite() || step.norm() < 1e-15) break;
    const Eigen::VectorXd xn = x + step;
    const Eigen::VectorXd fn = full_residual(model, xn);
    const double cn = fn.squaredNorm();
    if (cn < cost) {
      x = xn;
      f = fn;
      cost = cn;
      lambda = std::max(lambda * 0.3, 1e-12);
    } else {
      lambda *= 3.0;
    }
  }
  return x;
}

}  // namespace

SearchOutcome search_nonrealizable(const SearchSpec& spec) {
  const UnitarityModel model(spec.n, spec.m);
  SearchOutcome outcome;
  for (int restart = 0; restart < spec.budget; ++restart) {
    std::seed_seq seq{static_cast<std::uint64_t>(spec.seed),
                      static_cast<std::uint64_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd x(model.param_count());
    for (int t = 0; t < x.size(); ++t) x[t] = uni(rng);
    // Start on the constraint sphere: scale so the constant term of the
    // convolution equals one.
    const double s0 = model.residual(x)[0] + 1.0;
    if (s0 > 1e-12) x /= std::sqrt(s0);

    x = levenberg_marquardt(model, x, 400);

    const double res = model.residual(x).cwiseAbs().maxCoeff();
    const double ma = model.axis_margin(x, Axis::A);
    const double mb = model.axis_margin(x, Axis::B);
    outcome.restarts_used = restart + 1;
    if (res < spec.residual_tol && ma > spec.violation_margin &&
        mb > spec.violation_margin) {
      outcome.pair = model.assemble(x);
      outcome.residual = res;
      outcome.margin_a = ma;
      outcome.margin_b = mb;
      return outcome;
    }
  }
  return outcome;
}

PolyPair lift(const PolyPair& base, const UnitPhase& phase) {
  return step_extend(base, Axis::A, phase);
}

InsufficiencyReport run_insufficiency(const PolyPair& base,
                                      const UnitPhase& lift_phase) {
  InsufficiencyReport report;
  report.base_pair = base;
  report.base_report = check_conditions(base, Variant::Revised);
  report.lifted_pair = lift(base, lift_phase);
  report.lifted_report = check_conditions(report.lifted_pair, Variant::Revised);

  DecomposeOptions opts;
  opts.check_precondition = false;  // verdicts already collected above
  report.decompose_outcome = decompose(report.lifted_pair, opts);

  const auto verdict_of = [](const ConditionReport& r, const char* key) {
    return r.verdicts.at(key).verdict;
  };
  const bool base_feasible = verdict_of(report.base_report, "i") != Verdict::Fail &&
                             verdict_of(report.base_report, "ii") != Verdict::Fail &&
                             verdict_of(report.base_report, "iii") != Verdict::Fail &&
                             verdict_of(report.base_report, "iv") != Verdict::Fail;
  const bool base_violates_top =
      verdict_of(report.base_report, "v") == Verdict::Fail;
  report.is_counterexample = base_feasible && base_violates_top &&
                             report.lifted_report.overall() &&
                             !report.decompose_outcome.decomposable();
  std::ostringstream s;
  if (report.is_counterexample) {
    s << "base pair satisfies the degree, symmetry, and unitarity "
         "conditions but fails top proportionality on both axes; the "
         "lifted pair satisfies the full revised list yet admits no phase "
         "sequence";
  } else if (report.decompose_outcome.decomposable()) {
    s << "not a counterexample: the lifted pair decomposes";
  } else {
    s << "not a counterexample: the base pair does not violate top "
         "proportionality cleanly";
  }
  report.summary = s.str();
  return report;
}

InsufficiencyReport insufficiency_pipeline(const SearchSpec& spec,
                                           const UnitPhase& lift_phase) {
  const SearchOutcome found = search_nonrealizable(spec);
  if (!found.pair)
    throw PrecondViolated("insufficiency_pipeline: search budget exhausted "
                          "without an accepted pair");
  return run_insufficiency(*found.pair, lift_phase);
}

}  // namespace mqsp
