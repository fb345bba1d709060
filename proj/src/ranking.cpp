#include "permsym/ranking.hpp"

#include "permsym/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace permsym {

namespace {

void check_pair(std::size_t j, std::size_t i, const Rank0Azimuths &phi0) {
  if (j == i)
    throw Error(ErrorKind::SameParticle,
                "pair quantity needs two distinct particles, got " +
                    std::to_string(i) + " twice");
  if (j >= phi0.size() || i >= phi0.size())
    throw Error(ErrorKind::UnknownIdentity, "particle index out of range");
}

// Circular-safe closeness is not what we want here: ordering is on [0, 1).
bool inexact_tie(const TurnAngle &a, const TurnAngle &b, const Tolerances &tol) {
  if (a.is_exact() && b.is_exact())
    return false;
  const double diff = std::fabs(a.fraction() - b.fraction()) * 2.0 * std::numbers::pi;
  return diff < tol.geometric;
}

bool less_angle(const TurnAngle &a, const TurnAngle &b) {
  if (a.is_exact() && b.is_exact())
    return a.exact_fraction() < b.exact_fraction();
  return a.fraction() < b.fraction();
}

} // namespace

std::vector<std::size_t> index_sort(std::span<const TurnAngle> phi0,
                                    const Tolerances &tol) {
  for (std::size_t a = 0; a < phi0.size(); ++a)
    for (std::size_t b = a + 1; b < phi0.size(); ++b)
      if (inexact_tie(phi0[a].rank0(), phi0[b].rank0(), tol))
        throw Error(ErrorKind::InexactTie,
                    "azimuths of particles " + std::to_string(a) + " and " +
                        std::to_string(b) +
                        " are within tolerance but not certifiably equal");
  std::vector<std::size_t> perm(phi0.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return less_angle(phi0[a].rank0(), phi0[b].rank0());
  });
  return perm;
}

Rank0Azimuths::Rank0Azimuths(std::vector<TurnAngle> phi0, const Tolerances &tol)
    : phi0_(std::move(phi0)) {
  for (auto &a : phi0_) {
    a = a.rank0();
    all_exact_ = all_exact_ && a.is_exact();
  }
  order_ = index_sort(phi0_, tol);
  position_.resize(order_.size());
  for (std::size_t k = 0; k < order_.size(); ++k)
    position_[order_[k]] = k;
}

TurnAngle delta(std::size_t j, std::size_t i, const Rank0Azimuths &phi0) {
  check_pair(j, i, phi0);
  const TurnAngle &aj = phi0[j];
  const TurnAngle &ai = phi0[i];
  if (aj.is_exact() && ai.is_exact()) {
    const Rational &fj = aj.exact_fraction();
    const Rational &fi = ai.exact_fraction();
    if (fj == fi)
      return TurnAngle::exact(i < j ? Rational(0) : Rational(1));
    Rational diff = fj - fi;
    if (diff < 0)
      diff += 1;
    return TurnAngle::exact(diff);
  }
  // Inexact angles are never tied (Rank0Azimuths refuses them).
  double diff = aj.fraction() - ai.fraction();
  if (diff < 0)
    diff += 1.0;
  return TurnAngle::approximate(diff);
}

int d_order(std::size_t j, std::size_t i, const Rank0Azimuths &phi0) {
  check_pair(j, i, phi0);
  return phi0.position(j) < phi0.position(i) ? 1 : 0;
}

void validate_sequence(std::size_t target, std::span<const std::size_t> sequence,
                       std::size_t count) {
  if (target >= count)
    throw Error(ErrorKind::InvalidSequence,
                "target " + std::to_string(target) + " out of range");
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const std::size_t q = sequence[k];
    if (q >= count)
      throw Error(ErrorKind::InvalidSequence,
                  "predecessor " + std::to_string(q) + " out of range");
    if (q == target)
      throw Error(ErrorKind::InvalidSequence,
                  "particle " + std::to_string(target) + " depends on itself");
    for (std::size_t l = 0; l < k; ++l)
      if (sequence[l] == q)
        throw Error(ErrorKind::InvalidSequence,
                    "predecessor " + std::to_string(q) +
                        " repeated in the sequence of particle " +
                        std::to_string(target));
  }
}

RankedAzimuth rank_n_phi(std::size_t target, std::span<const std::size_t> sequence,
                         const Rank0Azimuths &phi0) {
  validate_sequence(target, sequence, phi0.size());
  if (sequence.empty())
    throw Error(ErrorKind::InvalidSequence, "rank-n azimuth needs a predecessor");
  TurnAngle phi = phi0[sequence.front()];
  std::size_t prev = sequence.front();
  auto step = [&](std::size_t next) {
    phi = phi + delta(next, prev, phi0);
    prev = next;
  };
  for (std::size_t k = 1; k < sequence.size(); ++k)
    step(sequence[k]);
  step(target);

  const TurnAngle diff = phi - phi0[target];
  std::int64_t winding = 0;
  if (auto exact = diff.exact_turns()) {
    if (!is_integer(*exact))
      throw std::logic_error("rank-n azimuth differs from φ^0 by a non-integral turn");
    winding = boost::multiprecision::numerator(*exact).convert_to<std::int64_t>();
  } else {
    const double t = diff.turns();
    winding = static_cast<std::int64_t>(std::llround(t));
    if (std::fabs(t - static_cast<double>(winding)) > 1e-6)
      throw std::logic_error("rank-n azimuth differs from φ^0 by a non-integral turn");
  }
  return {phi, winding};
}

std::int64_t winding_number(std::size_t target,
                            std::span<const std::size_t> sequence,
                            const Rank0Azimuths &phi0) {
  validate_sequence(target, sequence, phi0.size());
  return winding_from_positions(target, sequence, phi0.positions());
}

std::int64_t closed_form_winding(std::size_t target,
                                 std::span<const std::size_t> sequence,
                                 const Rank0Azimuths &phi0) {
  validate_sequence(target, sequence, phi0.size());
  if (sequence.empty())
    return 0;
  std::int64_t n = d_order(target, sequence.front(), phi0);
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
    n += d_order(sequence[k + 1], sequence[k], phi0);
  return n;
}

WindingSplit winding_split(std::size_t target, std::span<const std::size_t> sequence,
                           const Rank0Azimuths &phi0) {
  validate_sequence(target, sequence, phi0.size());
  if (sequence.empty())
    throw Error(ErrorKind::InvalidSequence, "winding split needs a predecessor");
  const std::int64_t back = d_order(sequence.back(), target, phi0);
  std::int64_t chain = 0;
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
    chain += d_order(sequence[k + 1], sequence[k], phi0);
  return {1 - 2 * back, chain + back};
}

RankingScheme::RankingScheme(std::vector<std::vector<std::size_t>> sequences)
    : seq_(std::move(sequences)) {
  for (std::size_t t = 0; t < seq_.size(); ++t)
    validate_sequence(t, seq_[t], seq_.size());
}

RankingScheme RankingScheme::cyclic(std::span<const std::size_t> cycle,
                                    std::size_t count) {
  RankingScheme s(count);
  if (cycle.size() < 2)
    return s;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const std::size_t prev = cycle[(k + cycle.size() - 1) % cycle.size()];
    s.set_sequence(cycle[k], {prev});
  }
  return s;
}

void RankingScheme::set_sequence(std::size_t target, std::vector<std::size_t> sequence) {
  validate_sequence(target, sequence, seq_.size());
  seq_[target] = std::move(sequence);
}

RankingScheme RankingScheme::relabeled(std::span<const std::size_t> mapping) const {
  std::vector<std::vector<std::size_t>> out(seq_.size());
  for (std::size_t t = 0; t < seq_.size(); ++t) {
    auto &dst = out[mapping[t]];
    dst.reserve(seq_[t].size());
    for (std::size_t q : seq_[t])
      dst.push_back(mapping[q]);
  }
  return RankingScheme(std::move(out));
}

WindingVector scheme_windings(const RankingScheme &scheme, const Rank0Azimuths &phi0) {
  if (scheme.size() != phi0.size())
    throw Error(ErrorKind::InvalidSequence, "scheme and azimuth counts differ");
  WindingVector w;
  w.n_per_particle.resize(scheme.size());
  for (std::size_t t = 0; t < scheme.size(); ++t)
    w.n_per_particle[t] = winding_number(t, scheme.sequence(t), phi0);
  return w;
}

} // namespace permsym
