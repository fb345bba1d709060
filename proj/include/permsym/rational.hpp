#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace permsym {

/// Arbitrary-precision rational. Chains of azimuth offsets over snapped
/// angles can have large common denominators, so fixed-width is not enough.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", "p" or "-p/q". Returns nullopt on malformed input or q == 0.
std::optional<Rational> parse_rational(std::string_view text);

/// "p/q", or "p" for integers.
std::string format_rational(const Rational &r);

BigInt floor(const Rational &r);
bool is_integer(const Rational &r);

/// r - floor(r), always in [0, 1).
Rational fractional_part(const Rational &r);

double to_double(const Rational &r);

/// Simplest fraction (smallest denominator) within `tol` of `x`, provided its
/// denominator does not exceed `max_den`.
std::optional<Rational> snap_to_rational(double x, double tol,
                                         std::int64_t max_den);

} // namespace permsym
