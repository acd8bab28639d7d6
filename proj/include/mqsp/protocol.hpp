#pragma once

#include <optional>
#include <vector>

#include "mqsp/laurent.hpp"

namespace mqsp {

/// A unit-modulus complex scalar e^{i phi}.  Exact values must satisfy
/// re^2 + im^2 = 1 as rationals; float values within 1e-12.
class UnitPhase {
 public:
  static UnitPhase exact(Rational re, Rational im);
  static UnitPhase angle(double radians);
  static UnitPhase from_scalar(const Scalar& value);
  static UnitPhase one() { return exact(Rational(1), Rational(0)); }

  Backend backend() const { return value_.backend(); }
  bool is_exact() const { return value_.is_exact(); }
  const Scalar& value() const { return value_; }

  /// e^{i phi} converted to the requested backend.  Exact -> Float is a
  /// rounding conversion; Float -> Exact throws BackendMismatch.
  Scalar scalar(Backend target) const;

  UnitPhase conjugated() const { return UnitPhase(value_.conj()); }
  UnitPhase squared() const { return UnitPhase(value_ * value_); }
  UnitPhase negated() const { return UnitPhase(-value_); }

  /// Angle in (-pi, pi].
  double radians() const;

  bool operator==(const UnitPhase& o) const { return value_ == o.value_; }

 private:
  explicit UnitPhase(Scalar v) : value_(std::move(v)) {}
  Scalar value_;
};

/// Phase sequence phi_0..phi_n plus the signal selection string s
/// (s_k = 1 applies A, s_k = 0 applies B).
struct Protocol {
  std::vector<int> s;
  std::vector<UnitPhase> phases;

  int n() const { return static_cast<int>(s.size()); }
  int hamming_weight() const;

  /// Exact iff every phase is exact.
  Backend backend() const;

  /// Throws InvalidRange on length mismatch or non-bit entries in s.
  void validate() const;
};

/// The pair (P, Q) read as the unitary [[P, Q], [-Q*, P*]], together with
/// the declared total degree n and a-degree m.
struct PolyPair {
  BiLaurent p;
  BiLaurent q;
  int n = 0;
  int m = 0;

  Backend backend() const { return p.backend(); }
};

/// The signal operator as a PolyPair: P = (x + x^-1)/2, Q = (x - x^-1)/2
/// in variable a or b.
PolyPair signal(Axis axis, Backend backend = Backend::Exact);

/// The n = 0 pair P = e^{i phi0}, Q = 0.
PolyPair identity_pair(const UnitPhase& phase0,
                       Backend backend = Backend::Exact);

/// Full product e^{i phi0 sz} prod_k A^{s_k} B^{1-s_k} e^{i phi_k sz}.
/// `force` overrides the backend inferred from the phases (Float only;
/// exact builds require all-exact phases).
PolyPair build(const Protocol& prot,
               std::optional<Backend> force = std::nullopt);

/// Right-multiply by (A or B) e^{i phi sz}; increments n, and m iff
/// axis == A.
PolyPair step_extend(const PolyPair& pair, Axis axis, const UnitPhase& phase);

/// Right-multiply by e^{-i phi sz} (A or B)^dagger and drop the declared
/// degree on `axis` by one.  The extremal terms must cancel: exactly in
/// the exact backend, with residual coefficient norm below `float_tol`
/// in float (residual terms are then truncated).  Throws DegreeNotReduced
/// otherwise.  Inverse of step_extend for the same axis and phase.
PolyPair step_peel(const PolyPair& pair, Axis axis, const UnitPhase& phase,
                   double float_tol = 1e-8);

}  // namespace mqsp
