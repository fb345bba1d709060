#pragma once

#include "permsym/error.hpp"
#include "permsym/geometry.hpp"
#include "permsym/rational.hpp"
#include "permsym/statevec.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace permsym::testing {

inline const Frame kLab{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

/// Small hand-rolled generator for property tests; fixed seeds keep failures
/// reproducible.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// A turn in [0, 1) with denominator at most max_den. Small denominators
  /// make exact ties common.
  Rational turn(int max_den) {
    const int q = integer(1, max_den);
    return make_rational(integer(0, q - 1), q);
  }
  HalfInt spin(int max_twice) { return HalfInt::from_twice(integer(0, max_twice)); }
  HalfInt projection(HalfInt s) {
    return HalfInt::from_twice(s.twice() - 2 * integer(0, s.twice()));
  }
  Vec3 unit() {
    for (;;) {
      Vec3 v{real(-1, 1), real(-1, 1), real(-1, 1)};
      const double n = v.norm();
      if (n > 0.1 && n <= 1.0)
        return v * (1.0 / n);
    }
  }
  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

/// Polar angle for identity i, so equal azimuths still give distinct
/// momenta and the aggregate axis never lies along a single momentum.
inline double default_theta(std::size_t i) {
  return std::numbers::pi / 7.0 + static_cast<double>(i % 4) * std::numbers::pi / 9.0;
}

/// State with the azimuths given exactly in turns.
inline SymmetricState angle_state(const std::vector<Rational> &phis,
                                  const std::vector<HalfInt> &spins,
                                  const std::vector<HalfInt> &projections,
                                  std::vector<double> thetas = {},
                                  std::vector<std::string> labels = {}) {
  std::vector<ParticleState> ps;
  std::vector<TurnAngle> phi0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const TurnAngle phi = TurnAngle::exact(phis[i]);
    const double theta = thetas.empty() ? default_theta(i) : thetas[i];
    ps.push_back({labels.empty() ? "x" : labels[i],
                  direction_from_angles(theta, phi.radians(), kLab), spins[i],
                  projections[i], FrameKind::Canonical});
    phi0.push_back(phi);
  }
  return build_symmetric(ps, FrameKind::Canonical, kLab, std::span<const TurnAngle>(phi0));
}

/// angle_state, or nothing when a momentum falls on the aggregate axis.
inline std::optional<SymmetricState> try_angle_state(const std::vector<Rational> &phis,
                                                     const std::vector<HalfInt> &spins,
                                                     const std::vector<HalfInt> &projections) {
  try {
    return angle_state(phis, spins, projections);
  } catch (const Error &e) {
    if (!e.is_geometric())
      throw;
    return std::nullopt;
  }
}

/// Same spin for everyone, m = s.
inline SymmetricState uniform_state(const std::vector<Rational> &phis, HalfInt s) {
  return angle_state(phis, std::vector<HalfInt>(phis.size(), s),
                     std::vector<HalfInt>(phis.size(), s));
}

inline HalfInt half(int twice) { return HalfInt::from_twice(twice); }
inline Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

/// (−1)^n as a Phase, from integer parity alone.
inline Phase parity_phase(std::int64_t n) {
  return ((n % 2) + 2) % 2 == 1 ? Phase::minus_one() : Phase{};
}

} // namespace permsym::testing

namespace permsym::testing {

/// Random momenta (2–6 particles when n == 0) away from the degenerate
/// cases: |k| ≥ 0.05 and every momentum at least 1e-3 off the axis.
inline std::vector<Vec3> random_momenta(Gen &g, std::size_t n = 0) {
  if (n == 0)
    n = static_cast<std::size_t>(g.integer(2, 6));
  for (;;) {
    std::vector<Vec3> ps;
    for (std::size_t i = 0; i < n; ++i)
      ps.push_back(g.unit() * g.real(0.5, 20.0));
    Vec3 k;
    for (const auto &p : ps)
      k += p.normalized();
    if (k.norm() < 0.05)
      continue;
    const Vec3 kh = k.normalized();
    bool ok = true;
    for (const auto &p : ps) {
      const Vec3 u = p.normalized();
      ok = ok && (u - kh * u.dot(kh)).norm() > 1e-3;
    }
    if (ok)
      return ps;
  }
}

} // namespace permsym::testing

namespace permsym::testing {

/// Each particle gets a chain of up to max_rank distinct others.
inline RankingScheme random_scheme(Gen &g, std::size_t n, std::size_t max_rank) {
  RankingScheme s(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::size_t> pool;
    for (std::size_t x = 0; x < n; ++x)
      if (x != t)
        pool.push_back(x);
    std::shuffle(pool.begin(), pool.end(), g.engine());
    const auto len = static_cast<std::size_t>(g.integer(0, static_cast<int>(std::min(max_rank, pool.size()))));
    pool.resize(len);
    s.set_sequence(t, pool);
  }
  return s;
}

struct RandomState {
  std::vector<Rational> phis;
  std::vector<HalfInt> spins;
  std::vector<HalfInt> ms;
  SymmetricState state;
};

inline RandomState random_state(Gen &g, std::size_t n, int max_den = 4, int max_twice_s = 3) {
  for (;;) {
    std::vector<Rational> phis;
    std::vector<HalfInt> spins, ms;
    for (std::size_t i = 0; i < n; ++i) {
      phis.push_back(g.turn(max_den));
      spins.push_back(g.spin(max_twice_s));
      ms.push_back(g.projection(spins.back()));
    }
    try {
      auto st = angle_state(phis, spins, ms);
      return {phis, spins, ms, std::move(st)};
    } catch (const Error &e) {
      // A momentum along the aggregate axis; draw again.
      if (!e.is_geometric())
        throw;
    }
  }
}

} // namespace permsym::testing
