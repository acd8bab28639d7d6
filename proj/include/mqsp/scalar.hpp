#pragma once

#include <complex>

#include "mqsp/numeric.hpp"

namespace mqsp {

/// A complex scalar in either the exact (arbitrary-precision rational
/// real/imaginary parts) or the float64 backend.  All arithmetic requires
/// matching backends and throws BackendMismatch otherwise.  Exact
/// arithmetic never rounds.
class Scalar {
 public:
  Scalar() : backend_(Backend::Exact) {}

  static Scalar exact(Rational re, Rational im = Rational(0)) {
    Scalar s;
    s.backend_ = Backend::Exact;
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    return s;
  }

  static Scalar floating(std::complex<double> z) {
    Scalar s;
    s.backend_ = Backend::Float;
    s.f_ = z;
    return s;
  }

  static Scalar zero(Backend b) {
    return b == Backend::Exact ? exact(Rational(0)) : floating({0.0, 0.0});
  }

  static Scalar one(Backend b) {
    return b == Backend::Exact ? exact(Rational(1)) : floating({1.0, 0.0});
  }

  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::Exact; }

  bool is_zero() const {
    if (is_exact()) return re_ == 0 && im_ == 0;
    return f_.real() == 0.0 && f_.imag() == 0.0;
  }

  const Rational& re() const {
    require_exact();
    return re_;
  }
  const Rational& im() const {
    require_exact();
    return im_;
  }

  std::complex<double> to_complex() const {
    if (!is_exact()) return f_;
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

  /// re^2 + im^2, exact backend only.
  Rational norm_sqr_exact() const {
    require_exact();
    return re_ * re_ + im_ * im_;
  }

  double abs() const { return std::abs(to_complex()); }

  Scalar conj() const {
    if (is_exact()) return exact(re_, -im_);
    return floating(std::conj(f_));
  }

  Scalar operator-() const {
    if (is_exact()) return exact(-re_, -im_);
    return floating(-f_);
  }

  Scalar operator+(const Scalar& o) const {
    require_same(o);
    if (is_exact()) return exact(re_ + o.re_, im_ + o.im_);
    return floating(f_ + o.f_);
  }

  Scalar operator-(const Scalar& o) const {
    require_same(o);
    if (is_exact()) return exact(re_ - o.re_, im_ - o.im_);
    return floating(f_ - o.f_);
  }

  Scalar operator*(const Scalar& o) const {
    require_same(o);
    if (is_exact())
      return exact(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    return floating(f_ * o.f_);
  }

  Scalar operator/(const Scalar& o) const {
    require_same(o);
    if (is_exact()) {
      Rational d = o.re_ * o.re_ + o.im_ * o.im_;
      if (d == 0) throw std::domain_error("Scalar: division by zero");
      return exact((re_ * o.re_ + im_ * o.im_) / d,
                   (im_ * o.re_ - re_ * o.im_) / d);
    }
    return floating(f_ / o.f_);
  }

  /// Exact equality; values from different backends compare unequal.
  bool operator==(const Scalar& o) const {
    if (backend_ != o.backend_) return false;
    if (is_exact()) return re_ == o.re_ && im_ == o.im_;
    return f_ == o.f_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  void require_exact() const {
    if (!is_exact())
      throw BackendMismatch("Scalar: exact accessor on float value");
  }
  void require_same(const Scalar& o) const {
    if (backend_ != o.backend_)
      throw BackendMismatch("Scalar: mixed exact and float operands");
  }

  Backend backend_;
  Rational re_, im_;
  std::complex<double> f_{};
};

}  // namespace mqsp
