#include "permsym/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace permsym {

Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  if (s.empty())
    return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n)
      return std::nullopt;
    return make_rational(*n);
  }
  auto n = parse_int(trim(text.substr(0, slash)));
  auto d = parse_int(trim(text.substr(slash + 1)));
  if (!n || !d || *d == 0)
    return std::nullopt;
  return make_rational(*n, *d);
}

std::string format_rational(const Rational &r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor(const Rational &r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den; // truncates toward zero
  if (num < 0 && q * den != num)
    q -= 1;
  return q;
}

bool is_integer(const Rational &r) {
  return boost::multiprecision::denominator(r) == 1;
}

Rational fractional_part(const Rational &r) { return r - Rational(floor(r)); }

double to_double(const Rational &r) { return r.convert_to<double>(); }

namespace {

// Simplest rational in the closed interval [lo, hi], 0 <= lo <= hi.
// Returns nullopt once the denominator would exceed max_den.
bool simplest_in(long double lo, long double hi, std::int64_t max_den,
                 int depth, std::int64_t &p, std::int64_t &q) {
  if (depth > 64)
    return false;
  const long double fl = std::floor(lo);
  if (fl == lo || fl + 1 <= hi) {
    p = static_cast<std::int64_t>(fl == lo ? fl : fl + 1);
    q = 1;
    return true;
  }
  // lo and hi share the integer part fl; recurse on reciprocals of the
  // fractional parts.
  std::int64_t pp = 0, qq = 0;
  if (!simplest_in(1.0L / (hi - fl), 1.0L / (lo - fl), max_den, depth + 1, pp,
                   qq))
    return false;
  // fl + 1/(pp/qq) = (fl*pp + qq)/pp
  const std::int64_t a = static_cast<std::int64_t>(fl);
  p = a * pp + qq;
  q = pp;
  return q <= max_den;
}

} // namespace

std::optional<Rational> snap_to_rational(double x, double tol,
                                         std::int64_t max_den) {
  if (!std::isfinite(x) || tol < 0)
    return std::nullopt;
  const long double base = std::floor(static_cast<long double>(x));
  const long double frac = static_cast<long double>(x) - base;
  const long double lo = std::max<long double>(0.0L, frac - tol);
  const long double hi = frac + tol;
  std::int64_t p = 0, q = 1;
  if (!simplest_in(lo, hi, max_den, 0, p, q) || q > max_den)
    return std::nullopt;
  return make_rational(p, q) + Rational(static_cast<std::int64_t>(base));
}

} // namespace permsym
