#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mqsp/protocol.hpp"

namespace mqsp {

/// Original = the theorem's published conditions (ii)/(iii) verbatim,
/// which are mutually inconsistent; Revised = the corrected list
/// (ii'), (iii'), (v').  Both share (i) and (iv).
enum class Variant { Original, Revised };

enum class Verdict { Pass, Fail, Vacuous };

struct ConditionVerdict {
  Verdict verdict = Verdict::Pass;
  std::string witness;  // empty on pass; concrete violating datum on fail
};

struct ConditionReport {
  Variant variant = Variant::Revised;
  std::map<std::string, ConditionVerdict> verdicts;  // keys "i".."v"

  bool overall() const {
    for (const auto& [key, v] : verdicts)
      if (v.verdict == Verdict::Fail) return false;
    return true;
  }
};

struct CheckOptions {
  double tol = 1e-10;           // absolute, float-backend coefficient checks
  double prop_rel_tol = 1e-8;   // relative, float top-slice proportionality
};

/// Coefficient-level check of every condition of the chosen variant.
/// Failures are verdicts with witnesses, never exceptions.
ConditionReport check_conditions(const PolyPair& pair, Variant variant,
                                 const CheckOptions& opts = {});

struct TopSliceRelation {
  enum class Kind { Proportional, NotProportional, BothSidesZero };
  Kind kind = Kind::BothSidesZero;
  Scalar ratio;           // unit scalar c with P_top = c * Q_top, when Proportional
  int witness_exponent = 0;  // deviating exponent, when NotProportional
  std::string detail;
};

/// Compares the top coefficient slice of P against Q on the declared
/// degree of the chosen axis (a^m for axis A, b^{n-m} for axis B).
/// BothSidesZero signals an overstated degree box.
TopSliceRelation top_proportionality(const PolyPair& pair, Axis axis,
                                     double rel_tol = 1e-8);

struct ForcedZeroStep {
  int l_a = 0;
  int l_b = 0;
  char poly = 'P';  // which family the concluded coefficient belongs to
  int j = 0;
  int k = 0;
  std::string justification;
};

/// Symbolic replay of the constraint chain that zeroes every coefficient
/// of a pair satisfying the Original conditions.  Quantified over all
/// coefficient assignments: a slot counts as known-zero from the parity
/// and degree constraints alone, or from an earlier step.
struct ForcedZeroTrace {
  int n = 0;
  int m = 0;
  std::vector<ForcedZeroStep> steps;
  /// Exponent pairs (within the (m, n-m) box, excluding (0,0)) where both
  /// the P and Q coefficients are forced to zero.
  std::set<std::pair<int, int>> final_zeroed;

  /// True when final_zeroed covers the whole box except the constant term.
  bool covers_box() const;
};

/// Throws InvalidRange unless m >= 1 and n - m >= 1 (both variables must
/// appear for the contradiction to close).
ForcedZeroTrace forced_zero_trace(int n, int m);

}  // namespace mqsp
