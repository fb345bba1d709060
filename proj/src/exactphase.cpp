#include "permsym/exactphase.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace permsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_radians(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0)
    r += kTwoPi;
  if (r >= kTwoPi)
    r = 0.0;
  return r;
}

Rational reduce_half_turns(const Rational &h) {
  // h mod 2
  const Rational half = h / 2;
  return h - Rational(2 * floor(half));
}

} // namespace

// ---------------------------------------------------------------- HalfInt

std::optional<HalfInt> HalfInt::parse(std::string_view text) {
  auto r = parse_rational(text);
  if (!r)
    return std::nullopt;
  const Rational twice = *r * 2;
  if (!is_integer(twice))
    return std::nullopt;
  const BigInt n = boost::multiprecision::numerator(twice);
  if (n > 1'000'000 || n < -1'000'000)
    return std::nullopt;
  return HalfInt(n.convert_to<int>());
}

std::string HalfInt::to_string() const {
  if (twice_ % 2 == 0)
    return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

// -------------------------------------------------------------- TurnAngle

TurnAngle TurnAngle::exact(const Rational &turns) {
  TurnAngle a;
  const BigInt w = floor(turns);
  a.winding_ = w.convert_to<std::int64_t>();
  a.exact_ = turns - Rational(w);
  a.approx_ = to_double(*a.exact_);
  if (a.approx_ >= 1.0)
    a.approx_ = std::nextafter(1.0, 0.0);
  return a;
}

TurnAngle TurnAngle::approximate(double turns) {
  TurnAngle a;
  const double w = std::floor(turns);
  double frac = turns - w;
  a.winding_ = static_cast<std::int64_t>(w);
  if (frac >= 1.0) {
    frac = 0.0;
    ++a.winding_;
  }
  a.approx_ = frac;
  a.exact_.reset();
  return a;
}

TurnAngle TurnAngle::from_turns(double turns, const Tolerances &tol) {
  if (auto r = snap_to_rational(turns, tol.snap, tol.snap_max_denominator))
    return exact(*r);
  return approximate(turns);
}

TurnAngle TurnAngle::from_radians(double radians, const Tolerances &tol) {
  return from_turns(radians / kTwoPi, tol);
}

const Rational &TurnAngle::exact_fraction() const {
  if (!exact_)
    throw std::logic_error("TurnAngle::exact_fraction on an inexact angle");
  return *exact_;
}

std::optional<Rational> TurnAngle::exact_turns() const {
  if (!exact_)
    return std::nullopt;
  return *exact_ + Rational(winding_);
}

double TurnAngle::radians() const { return turns() * kTwoPi; }

TurnAngle TurnAngle::rank0() const { return with_winding(0); }

TurnAngle TurnAngle::with_winding(std::int64_t w) const {
  TurnAngle a = *this;
  a.winding_ = w;
  return a;
}

TurnAngle TurnAngle::operator+(const TurnAngle &rhs) const {
  if (exact_ && rhs.exact_)
    return exact(*exact_turns() + *rhs.exact_turns());
  TurnAngle a = approximate(approx_ + rhs.approx_);
  a.winding_ += winding_ + rhs.winding_;
  return a;
}

TurnAngle TurnAngle::operator-() const {
  if (exact_)
    return exact(-*exact_turns());
  return approximate(-turns());
}

TurnAngle TurnAngle::operator-(const TurnAngle &rhs) const {
  return *this + (-rhs);
}

std::string TurnAngle::to_string() const {
  std::string body;
  if (exact_) {
    body = format_rational(*exact_);
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.12f", approx_);
    body = buf;
  }
  if (winding_ != 0)
    body = std::to_string(winding_) + "+" + body;
  return body + " turn";
}

// ------------------------------------------------------------------ Phase

Phase Phase::half_turns(const Rational &h) {
  Phase p;
  p.half_turns_ = reduce_half_turns(h);
  return p;
}

Phase Phase::radians(double x) {
  Phase p;
  p.inexact_ = reduce_radians(x);
  p.exact_ = false;
  return p;
}

std::optional<int> Phase::sign() const {
  if (!exact_)
    return std::nullopt;
  if (half_turns_ == 0)
    return 1;
  if (half_turns_ == 1)
    return -1;
  return std::nullopt;
}

double Phase::angle() const {
  return reduce_radians(to_double(half_turns_) * std::numbers::pi + inexact_);
}

Phase Phase::operator*(const Phase &rhs) const {
  Phase p;
  p.half_turns_ = reduce_half_turns(half_turns_ + rhs.half_turns_);
  p.exact_ = exact_ && rhs.exact_;
  p.inexact_ = p.exact_ ? 0.0 : reduce_radians(inexact_ + rhs.inexact_);
  return p;
}

Phase Phase::inverse() const {
  Phase p;
  p.half_turns_ = reduce_half_turns(-half_turns_);
  p.exact_ = exact_;
  p.inexact_ = exact_ ? 0.0 : reduce_radians(-inexact_);
  return p;
}

Phase Phase::operator/(const Phase &rhs) const { return *this * rhs.inverse(); }

std::string Phase::to_string(double tol) const {
  if (exact_) {
    if (half_turns_ == 0)
      return "+1";
    if (half_turns_ == 1)
      return "-1";
    return "e^{iπ·" + format_rational(half_turns_) + "}";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "~e^{i·%.12f} (±%g)", angle(), tol);
  return buf;
}

PhaseMatch compare_phases(const Phase &a, const Phase &b, double tol) {
  if (a.is_exact() && b.is_exact())
    return {a.exact_half_turns() == b.exact_half_turns(), false};
  double d = std::fabs(a.angle() - b.angle());
  d = std::min(d, kTwoPi - d);
  return {d < tol, true};
}

Phase winding_phase(HalfInt m, std::int64_t delta_winding) {
  // e^{i2π m ΔN} = e^{iπ (2m ΔN)}
  return Phase::half_turns(Rational(static_cast<std::int64_t>(m.twice()) *
                                    delta_winding));
}

Phase compose(const Phase &a, const Phase &b) { return a * b; }

Phase canonical_rotation_phase(HalfInt m, const TurnAngle &phi) {
  // e^{i m φ} with φ = 2π t  ->  e^{iπ (2m t)}
  if (auto t = phi.exact_turns())
    return Phase::half_turns(Rational(m.twice()) * *t);
  return Phase::radians(m.value() * phi.radians());
}

} // namespace permsym
