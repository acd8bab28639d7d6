#pragma once

#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "mqsp/scalar.hpp"

namespace mqsp {

/// Exponent pair (j, k) of a term a^j b^k.  Ordered lexicographically,
/// which fixes the canonical term order for serialization.
struct ExpPair {
  int j = 0;
  int k = 0;
  auto operator<=>(const ExpPair&) const = default;
};

struct DegreeBox {
  int deg_a = 0;
  int deg_b = 0;
  bool within(int max_a, int max_b) const {
    return deg_a <= max_a && deg_b <= max_b;
  }
};

enum class Axis { A, B };

enum class Transform { InvertBoth, NegateA, NegateB };

enum class Parity { Even, Odd, None };

/// Single-variable Laurent polynomial; holds coefficient slices such as
/// P_m(b).  Canonical sparse form: no stored zero coefficients.
class UniLaurent {
 public:
  explicit UniLaurent(Backend b = Backend::Exact) : backend_(b) {}

  Backend backend() const { return backend_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<int, Scalar>& entries() const { return entries_; }

  void add_term(int e, const Scalar& c);
  Scalar coeff(int e) const;

  UniLaurent scaled(const Scalar& c) const;
  UniLaurent operator-() const;
  UniLaurent operator-(const UniLaurent& o) const;

  /// Euclidean norm of the coefficient vector, evaluated in float.
  double norm() const;

  bool operator==(const UniLaurent& o) const {
    return backend_ == o.backend_ && entries_ == o.entries_;
  }

 private:
  Backend backend_;
  std::map<int, Scalar> entries_;
};

/// Sparse bivariate Laurent polynomial with uniform numeric backend.
/// Canonical form invariant: no stored coefficient is zero, so equality
/// is plain entry-map equality.
class BiLaurent {
 public:
  explicit BiLaurent(Backend b = Backend::Exact) : backend_(b) {}

  static BiLaurent zero(Backend b) { return BiLaurent(b); }
  static BiLaurent constant(const Scalar& c);
  static BiLaurent monomial(int j, int k, const Scalar& c);

  /// make_poly: duplicate exponent pairs are summed, zero results dropped.
  /// Throws BackendMismatch when entries mix backends or disagree with
  /// the declared backend.
  static BiLaurent from_entries(
      Backend b, const std::vector<std::pair<ExpPair, Scalar>>& raw);

  Backend backend() const { return backend_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<ExpPair, Scalar>& entries() const { return entries_; }
  std::size_t term_count() const { return entries_.size(); }

  void add_term(int j, int k, const Scalar& c);
  Scalar coeff(int j, int k) const;

  /// (max |j|, max |k|) over stored terms; (0, 0) for the zero polynomial.
  DegreeBox degree() const;

  BiLaurent operator+(const BiLaurent& o) const;
  BiLaurent operator-(const BiLaurent& o) const;
  BiLaurent operator*(const BiLaurent& o) const;
  BiLaurent operator-() const;
  BiLaurent scaled(const Scalar& c) const;

  /// Torus star: (j,k) -> (-j,-k) with conjugated coefficient.  Agrees
  /// with pointwise complex conjugation on |a| = |b| = 1.
  BiLaurent star() const;

  BiLaurent transformed(Transform t) const;
  Parity parity(Transform t) const;

  /// Coefficient slice: axis A fixes j = exponent and returns a
  /// polynomial in b, axis B fixes k and returns a polynomial in a.
  UniLaurent slice(Axis axis, int exponent) const;

  std::complex<double> evaluate(double theta_a, double theta_b) const;

  bool operator==(const BiLaurent& o) const {
    return backend_ == o.backend_ && entries_ == o.entries_;
  }

 private:
  Backend backend_;
  std::map<ExpPair, Scalar> entries_;
};

/// max |p_jk - q_jk| over the union of supports, in float.  Intended for
/// tolerance comparisons of float-backend results.
double max_abs_diff(const BiLaurent& p, const BiLaurent& q);

}  // namespace mqsp
