#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>

#include "mqsp/decompose.hpp"

namespace mqsp {

struct SearchSpec {
  int n = 4;
  int m = 2;
  std::uint64_t seed = 0;
  int budget = 200;               // max random restarts
  double residual_tol = 1e-10;    // max |unitarity residual coefficient|
  double violation_margin = 1e-3; // min normalized cross-residual per axis
};

/// Least-squares model of the coefficient-level unitarity constraints for
/// pairs that satisfy the degree box and both symmetry conditions by
/// construction: free parameters are the real/imaginary parts of one
/// representative per inversion orbit; mirrored slots are tied with the
/// even (P) or odd (Q) sign and off-parity slots are absent.
class UnitarityModel {
 public:
  using CoeffMap = std::map<std::pair<int, int>, std::complex<double>>;

  /// Throws InvalidSpec unless m >= 1 and n - m >= 1.
  UnitarityModel(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int param_count() const;
  int residual_count() const;  // unitarity rows only

  PolyPair assemble(const Eigen::VectorXd& x) const;
  /// Inverse of assemble for pairs supported on the symmetric lattice.
  Eigen::VectorXd params_from_pair(const PolyPair& pair) const;

  /// Unitarity residual: constant-term sum minus one, then Re/Im of every
  /// nonzero-shift convolution coefficient.
  Eigen::VectorXd residual(const Eigen::VectorXd& x) const;
  /// Analytic Jacobian of residual(); the residuals are quadratic in the
  /// parameters so the Jacobian is linear and exact.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  /// Normalized distance of the axis top slices from unit-scalar
  /// proportionality: sqrt(1 - 2|<P_top, Q_top>| / (|P_top|^2 + |Q_top|^2)).
  double axis_margin(const Eigen::VectorXd& x, Axis axis) const;

  CoeffMap p_coeffs(const Eigen::VectorXd& x) const;
  CoeffMap q_coeffs(const Eigen::VectorXd& x) const;

 private:
  struct Site {
    int j, k;
  };
  int n_, m_;
  std::vector<Site> p_reps_;  // (0,0) first, then lex-positive orbit reps
  std::vector<Site> q_reps_;  // lex-positive orbit reps ((0,0) forced zero)
  std::vector<std::pair<int, int>> shifts_;  // lex-positive difference lattice

  CoeffMap coeffs(const Eigen::VectorXd& x, bool q_family) const;
};

struct SearchOutcome {
  std::optional<PolyPair> pair;
  int restarts_used = 0;
  double residual = 0.0;
  double margin_a = 0.0;
  double margin_b = 0.0;
};

/// Damped least-squares search for a pair satisfying the unitarity
/// constraints while violating top-slice proportionality on both axes.
/// Deterministic for a fixed spec: restarts are tried in index order and
/// the first acceptable minimum wins.  An empty outcome means the budget
/// ran out, not that no such pair exists.
SearchOutcome search_nonrealizable(const SearchSpec& spec);

/// step_extend by axis A; preserves the degree box, symmetry, and
/// unitarity conditions and creates axis-A top proportionality with
/// ratio e^{2i phi}.
PolyPair lift(const PolyPair& base, const UnitPhase& phase);

struct InsufficiencyReport {
  PolyPair base_pair;
  ConditionReport base_report;
  PolyPair lifted_pair;
  ConditionReport lifted_report;
  DecomposeResult decompose_outcome;
  bool is_counterexample = false;
  std::string summary;
};

/// check(base) -> lift -> check(lifted) -> decompose(lifted), collecting
/// every verdict.  is_counterexample is true when the base passes the
/// symmetry and unitarity conditions but fails top proportionality, the
/// lifted pair passes everything, and the lifted pair still fails to
/// decompose.
InsufficiencyReport run_insufficiency(const PolyPair& base,
                                      const UnitPhase& lift_phase);

/// search_nonrealizable + run_insufficiency.  Throws PrecondViolated when
/// the search budget is exhausted.
InsufficiencyReport insufficiency_pipeline(const SearchSpec& spec,
                                           const UnitPhase& lift_phase);

}  // namespace mqsp
