#include "mqsp/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mqsp {

// ----------------------------------------------------------------- UnitPhase

UnitPhase UnitPhase::exact(Rational re, Rational im) {
  if (re * re + im * im != 1)
    throw InvalidRange("UnitPhase: exact value is not unit-modulus");
  return UnitPhase(Scalar::exact(std::move(re), std::move(im)));
}

UnitPhase UnitPhase::angle(double radians) {
  // Normalize to (-pi, pi] for canonical serialization.
  const double pi = std::numbers::pi;
  double r = std::remainder(radians, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return UnitPhase(Scalar::floating(std::polar(1.0, r)));
}

UnitPhase UnitPhase::from_scalar(const Scalar& value) {
  if (value.is_exact()) {
    if (value.norm_sqr_exact() != 1)
      throw InvalidRange("UnitPhase: exact value is not unit-modulus");
    return UnitPhase(value);
  }
  if (std::abs(value.abs() - 1.0) > 1e-12)
    throw InvalidRange("UnitPhase: float value is not unit-modulus");
  return UnitPhase(value);
}

Scalar UnitPhase::scalar(Backend target) const {
  if (target == value_.backend()) return value_;
  if (target == Backend::Float) return Scalar::floating(value_.to_complex());
  throw BackendMismatch("UnitPhase: cannot promote float phase to exact");
}

double UnitPhase::radians() const {
  const auto z = value_.to_complex();
  return std::atan2(z.imag(), z.real());
}

// ------------------------------------------------------------------ Protocol

int Protocol::hamming_weight() const {
  int m = 0;
  for (int bit : s) m += bit;
  return m;
}

Backend Protocol::backend() const {
  for (const auto& ph : phases)
    if (!ph.is_exact()) return Backend::Float;
  return Backend::Exact;
}

void Protocol::validate() const {
  if (phases.size() != s.size() + 1) {
    std::ostringstream msg;
    msg << "Protocol: " << phases.size() << " phases for " << s.size()
        << " signal slots (need n + 1)";
    throw InvalidRange(msg.str());
  }
  for (int bit : s)
    if (bit != 0 && bit != 1)
      throw InvalidRange("Protocol: s entries must be 0 or 1");
}

// ------------------------------------------------------------------- PolyPair

namespace {

Scalar half(Backend b) {
  return b == Backend::Exact ? Scalar::exact(Rational(1, 2))
                             : Scalar::floating({0.5, 0.0});
}

// (x + x^-1)/2 and (x - x^-1)/2 in the axis variable.
BiLaurent signal_diag(Axis axis, Backend b) {
  const Scalar h = half(b);
  BiLaurent out(b);
  const int j = axis == Axis::A ? 1 : 0;
  const int k = axis == Axis::A ? 0 : 1;
  out.add_term(j, k, h);
  out.add_term(-j, -k, h);
  return out;
}

BiLaurent signal_off(Axis axis, Backend b) {
  const Scalar h = half(b);
  BiLaurent out(b);
  const int j = axis == Axis::A ? 1 : 0;
  const int k = axis == Axis::A ? 0 : 1;
  out.add_term(j, k, h);
  out.add_term(-j, -k, -h);
  return out;
}

}  // namespace

PolyPair signal(Axis axis, Backend backend) {
  return PolyPair{signal_diag(axis, backend), signal_off(axis, backend), 1,
                  axis == Axis::A ? 1 : 0};
}

PolyPair identity_pair(const UnitPhase& phase0, Backend backend) {
  return PolyPair{BiLaurent::constant(phase0.scalar(backend)),
                  BiLaurent::zero(backend), 0, 0};
}

PolyPair step_extend(const PolyPair& pair, Axis axis, const UnitPhase& phase) {
  const Backend b = pair.backend();
  const BiLaurent d = signal_diag(axis, b);
  const BiLaurent o = signal_off(axis, b);
  const Scalar e = phase.scalar(b);
  const Scalar ec = phase.conjugated().scalar(b);
  PolyPair out;
  out.p = (d * pair.p + o * pair.q).scaled(e);
  out.q = (o * pair.p + d * pair.q).scaled(ec);
  out.n = pair.n + 1;
  out.m = pair.m + (axis == Axis::A ? 1 : 0);
  return out;
}

PolyPair build(const Protocol& prot, std::optional<Backend> force) {
  prot.validate();
  Backend b = force.value_or(prot.backend());
  if (b == Backend::Exact && prot.backend() == Backend::Float)
    throw BackendMismatch("build: exact mode requires all-exact phases");
  PolyPair pair = identity_pair(prot.phases[0], b);
  for (std::size_t k = 0; k < prot.s.size(); ++k)
    pair = step_extend(pair, prot.s[k] == 1 ? Axis::A : Axis::B,
                       prot.phases[k + 1]);
  return pair;
}

PolyPair step_peel(const PolyPair& pair, Axis axis, const UnitPhase& phase,
                   double float_tol) {
  const int axis_deg = axis == Axis::A ? pair.m : pair.n - pair.m;
  if (pair.n < 1 || axis_deg < 1)
    throw DegreeNotReduced("step_peel: declared degree on axis is already 0");

  const Backend b = pair.backend();
  const BiLaurent d = signal_diag(axis, b);
  const BiLaurent o = signal_off(axis, b);
  const Scalar e = phase.scalar(b);
  const Scalar ec = phase.conjugated().scalar(b);

  // pair * e^{-i phi sz} * signal^dagger
  BiLaurent np = d * pair.p.scaled(ec) - o * pair.q.scaled(e);
  BiLaurent nq = d * pair.q.scaled(e) - o * pair.p.scaled(ec);

  // The extremal terms on the peeled axis must cancel down to axis_deg - 1.
  const auto exceeds = [&](const ExpPair& ep) {
    const int deg = axis == Axis::A ? std::abs(ep.j) : std::abs(ep.k);
    return deg > axis_deg - 1;
  };
  double residual = 0.0;
  for (const BiLaurent* poly : {&np, &nq}) {
    for (const auto& [ep, c] : poly->entries()) {
      if (!exceeds(ep)) continue;
      if (b == Backend::Exact)
        throw DegreeNotReduced("step_peel: extremal terms do not cancel");
      residual = std::hypot(residual, std::abs(c.to_complex()));
    }
  }
  if (residual > float_tol)
    throw DegreeNotReduced("step_peel: residual top-slice norm " +
                           std::to_string(residual) + " exceeds tolerance");
  if (b == Backend::Float) {
    BiLaurent tp(b), tq(b);
    for (const auto& [ep, c] : np.entries())
      if (!exceeds(ep)) tp.add_term(ep.j, ep.k, c);
    for (const auto& [ep, c] : nq.entries())
      if (!exceeds(ep)) tq.add_term(ep.j, ep.k, c);
    np = std::move(tp);
    nq = std::move(tq);
  }
  return PolyPair{std::move(np), std::move(nq), pair.n - 1,
                  pair.m - (axis == Axis::A ? 1 : 0)};
}

}  // namespace mqsp
