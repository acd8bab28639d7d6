#include "mqsp/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace mqsp {

// ---------------------------------------------------------------- UniLaurent

void UniLaurent::add_term(int e, const Scalar& c) {
  if (c.backend() != backend_)
    throw BackendMismatch("UniLaurent: term backend differs from polynomial");
  auto it = entries_.find(e);
  if (it == entries_.end()) {
    if (!c.is_zero()) entries_.emplace(e, c);
    return;
  }
  Scalar sum = it->second + c;
  if (sum.is_zero())
    entries_.erase(it);
  else
    it->second = sum;
}

Scalar UniLaurent::coeff(int e) const {
  auto it = entries_.find(e);
  return it == entries_.end() ? Scalar::zero(backend_) : it->second;
}

UniLaurent UniLaurent::scaled(const Scalar& c) const {
  UniLaurent out(backend_);
  for (const auto& [e, v] : entries_) out.add_term(e, v * c);
  return out;
}

UniLaurent UniLaurent::operator-() const {
  UniLaurent out(backend_);
  for (const auto& [e, v] : entries_) out.add_term(e, -v);
  return out;
}

UniLaurent UniLaurent::operator-(const UniLaurent& o) const {
  if (backend_ != o.backend_)
    throw BackendMismatch("UniLaurent: mixed backends in subtraction");
  UniLaurent out = *this;
  for (const auto& [e, v] : o.entries_) out.add_term(e, -v);
  return out;
}

double UniLaurent::norm() const {
  double s = 0.0;
  for (const auto& [e, v] : entries_) s += std::norm(v.to_complex());
  return std::sqrt(s);
}

// ----------------------------------------------------------------- BiLaurent

BiLaurent BiLaurent::constant(const Scalar& c) { return monomial(0, 0, c); }

BiLaurent BiLaurent::monomial(int j, int k, const Scalar& c) {
  BiLaurent out(c.backend());
  out.add_term(j, k, c);
  return out;
}

BiLaurent BiLaurent::from_entries(
    Backend b, const std::vector<std::pair<ExpPair, Scalar>>& raw) {
  BiLaurent out(b);
  for (const auto& [e, c] : raw) out.add_term(e.j, e.k, c);
  return out;
}

void BiLaurent::add_term(int j, int k, const Scalar& c) {
  if (c.backend() != backend_)
    throw BackendMismatch("BiLaurent: term backend differs from polynomial");
  const ExpPair e{j, k};
  auto it = entries_.find(e);
  if (it == entries_.end()) {
    if (!c.is_zero()) entries_.emplace(e, c);
    return;
  }
  Scalar sum = it->second + c;
  if (sum.is_zero())
    entries_.erase(it);
  else
    it->second = sum;
}

Scalar BiLaurent::coeff(int j, int k) const {
  auto it = entries_.find(ExpPair{j, k});
  return it == entries_.end() ? Scalar::zero(backend_) : it->second;
}

DegreeBox BiLaurent::degree() const {
  DegreeBox box;
  for (const auto& [e, c] : entries_) {
    box.deg_a = std::max(box.deg_a, std::abs(e.j));
    box.deg_b = std::max(box.deg_b, std::abs(e.k));
  }
  return box;
}

BiLaurent BiLaurent::operator+(const BiLaurent& o) const {
  if (backend_ != o.backend_)
    throw BackendMismatch("BiLaurent: mixed backends in addition");
  BiLaurent out = *this;
  for (const auto& [e, c] : o.entries_) out.add_term(e.j, e.k, c);
  return out;
}

BiLaurent BiLaurent::operator-(const BiLaurent& o) const {
  if (backend_ != o.backend_)
    throw BackendMismatch("BiLaurent: mixed backends in subtraction");
  BiLaurent out = *this;
  for (const auto& [e, c] : o.entries_) out.add_term(e.j, e.k, -c);
  return out;
}

BiLaurent BiLaurent::operator*(const BiLaurent& o) const {
  if (backend_ != o.backend_)
    throw BackendMismatch("BiLaurent: mixed backends in multiplication");
  BiLaurent out(backend_);
  for (const auto& [e1, c1] : entries_)
    for (const auto& [e2, c2] : o.entries_)
      out.add_term(e1.j + e2.j, e1.k + e2.k, c1 * c2);
  return out;
}

BiLaurent BiLaurent::operator-() const {
  BiLaurent out(backend_);
  for (const auto& [e, c] : entries_) out.add_term(e.j, e.k, -c);
  return out;
}

BiLaurent BiLaurent::scaled(const Scalar& c) const {
  BiLaurent out(backend_);
  for (const auto& [e, v] : entries_) out.add_term(e.j, e.k, v * c);
  return out;
}

BiLaurent BiLaurent::star() const {
  BiLaurent out(backend_);
  for (const auto& [e, c] : entries_) out.add_term(-e.j, -e.k, c.conj());
  return out;
}

BiLaurent BiLaurent::transformed(Transform t) const {
  BiLaurent out(backend_);
  for (const auto& [e, c] : entries_) {
    switch (t) {
      case Transform::InvertBoth:
        out.add_term(-e.j, -e.k, c);
        break;
      case Transform::NegateA:
        out.add_term(e.j, e.k, (e.j % 2 != 0) ? -c : c);
        break;
      case Transform::NegateB:
        out.add_term(e.j, e.k, (e.k % 2 != 0) ? -c : c);
        break;
    }
  }
  return out;
}

Parity BiLaurent::parity(Transform t) const {
  const BiLaurent mapped = transformed(t);
  if (mapped == *this) return Parity::Even;  // includes the zero polynomial
  if (mapped == -*this) return Parity::Odd;
  return Parity::None;
}

UniLaurent BiLaurent::slice(Axis axis, int exponent) const {
  UniLaurent out(backend_);
  for (const auto& [e, c] : entries_) {
    if (axis == Axis::A && e.j == exponent) out.add_term(e.k, c);
    if (axis == Axis::B && e.k == exponent) out.add_term(e.j, c);
  }
  return out;
}

std::complex<double> BiLaurent::evaluate(double theta_a,
                                         double theta_b) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : entries_)
    sum += c.to_complex() * std::polar(1.0, e.j * theta_a + e.k * theta_b);
  return sum;
}

double max_abs_diff(const BiLaurent& p, const BiLaurent& q) {
  double worst = 0.0;
  for (const auto& [e, c] : p.entries())
    worst = std::max(worst,
                     std::abs(c.to_complex() - q.coeff(e.j, e.k).to_complex()));
  for (const auto& [e, c] : q.entries())
    worst = std::max(worst,
                     std::abs(c.to_complex() - p.coeff(e.j, e.k).to_complex()));
  return worst;
}

}  // namespace mqsp
