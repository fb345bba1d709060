#pragma once

#include "permsym/rational.hpp"
#include "permsym/tolerances.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace permsym {

/// Exact half-integer, stored as twice its value. Used for spins s and
/// projections m (helicities are projections quantized along p̂).
class HalfInt {
public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int v) { return HalfInt(2 * v); }

  /// Accepts "3/2", "-1/2", "1", "0".
  static std::optional<HalfInt> parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_half_odd() const { return twice_ % 2 != 0; }
  constexpr double value() const { return twice_ / 2.0; }
  Rational exact() const { return make_rational(twice_, 2); }
  std::string to_string() const;

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

constexpr bool is_valid_spin(HalfInt s) { return s.twice() >= 0; }

/// |m| <= s and s - m integral.
constexpr bool is_valid_projection(HalfInt s, HalfInt m) {
  const int a = m.twice() < 0 ? -m.twice() : m.twice();
  return is_valid_spin(s) && a <= s.twice() && (s.twice() - m.twice()) % 2 == 0;
}

/// Spin-statistics convention: half-odd spin is a fermion.
constexpr bool is_fermion(HalfInt s) { return s.is_half_odd(); }

/// An angle measured in whole turns: an integer winding count plus a
/// fraction in [0, 1). The fraction is either an exact rational or, when an
/// input could not be snapped to one, an approximate double.
class TurnAngle {
public:
  /// Exact zero.
  TurnAngle() = default;

  static TurnAngle exact(const Rational &turns);
  static TurnAngle approximate(double turns);

  /// Converts a float azimuth, snapping to the simplest nearby rational turn
  /// when the tolerances allow it.
  static TurnAngle from_radians(double radians, const Tolerances &tol = {});
  static TurnAngle from_turns(double turns, const Tolerances &tol = {});

  bool is_exact() const { return exact_.has_value(); }

  /// Requires is_exact().
  const Rational &exact_fraction() const;
  /// winding + fraction; nullopt when inexact.
  std::optional<Rational> exact_turns() const;

  double fraction() const { return approx_; }
  std::int64_t winding() const { return winding_; }
  double turns() const { return static_cast<double>(winding_) + approx_; }
  double radians() const;

  /// Same direction with the winding discarded, i.e. the [0, 2π) representative.
  TurnAngle rank0() const;
  TurnAngle with_winding(std::int64_t w) const;

  TurnAngle operator+(const TurnAngle &rhs) const;
  TurnAngle operator-(const TurnAngle &rhs) const;
  TurnAngle operator-() const;

  /// "3/8 turn", "1+1/4 turn", "~0.1234567890 turn".
  std::string to_string() const;

  friend bool operator==(const TurnAngle &, const TurnAngle &) = default;

private:
  std::optional<Rational> exact_ = Rational(0); // fraction in [0, 1)
  double approx_ = 0.0;           // fraction in [0, 1), always populated
  std::int64_t winding_ = 0;
};

/// A unit-modulus phase e^{iπ·h + i·x}: h is an exact rational number of
/// half-turns (kept in [0, 2)) and x an optional inexact remainder in
/// radians. Exchange phases are always exact with integral h.
class Phase {
public:
  Phase() = default;

  static Phase half_turns(const Rational &h);
  static Phase minus_one() { return half_turns(Rational(1)); }
  static Phase radians(double x);

  bool is_exact() const { return exact_; }
  const Rational &exact_half_turns() const { return half_turns_; }
  double inexact_radians() const { return inexact_; }

  /// +1 or -1 when the phase is exactly real; nullopt otherwise.
  std::optional<int> sign() const;

  /// Total angle in radians, reduced to [0, 2π).
  double angle() const;

  Phase operator*(const Phase &rhs) const;
  Phase operator/(const Phase &rhs) const;
  Phase inverse() const;

  /// "+1", "-1", "e^{iπ·r}" for exact phases; "~e^{i·x} (±tol)" otherwise.
  std::string to_string(double tol = 1e-9) const;

  friend bool operator==(const Phase &, const Phase &) = default;

private:
  Rational half_turns_ = 0; // in [0, 2)
  double inexact_ = 0.0;    // in [0, 2π)
  bool exact_ = true;
};

struct PhaseMatch {
  bool equal = false;
  /// Set when either side carried an inexact part; equality then only holds
  /// within the tolerance.
  bool approximate = false;
};

/// Inexact phases never compare exactly equal; they match within `tol`
/// radians and the result is flagged approximate.
PhaseMatch compare_phases(const Phase &a, const Phase &b, double tol = 1e-9);

/// e^{i2π m ΔN}; always exactly ±1.
Phase winding_phase(HalfInt m, std::int64_t delta_winding);

Phase compose(const Phase &a, const Phase &b);

/// e^{i m φ}. Exact (possibly non-real) when φ is an exact turn.
Phase canonical_rotation_phase(HalfInt m, const TurnAngle &phi);

} // namespace permsym
