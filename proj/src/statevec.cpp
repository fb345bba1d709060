#include "permsym/statevec.hpp"

#include "permsym/clebsch_gordan.hpp"
#include "permsym/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace permsym {

std::string_view to_string(FrameKind kind) {
  switch (kind) {
  case FrameKind::Helicity: return "helicity";
  case FrameKind::Aggregate: return "aggregate";
  case FrameKind::Canonical: return "canonical";
  }
  return "canonical";
}

std::optional<FrameKind> parse_frame_kind(std::string_view text) {
  if (text == "helicity") return FrameKind::Helicity;
  if (text == "aggregate") return FrameKind::Aggregate;
  if (text == "canonical") return FrameKind::Canonical;
  return std::nullopt;
}

void validate(const ParticleState &p) {
  if (!is_valid_spin(p.spin))
    throw Error(ErrorKind::Validation, "negative spin " + p.spin.to_string());
  if (!is_valid_projection(p.spin, p.projection))
    throw Error(ErrorKind::Validation, "projection " + p.projection.to_string() +
                                           " is not valid for spin " +
                                           p.spin.to_string());
}

// ------------------------------------------------------------ SymmetricState

namespace {

bool particle_less(const Particle &a, const Particle &b) {
  const auto &sa = a.state;
  const auto &sb = b.state;
  auto key = [](const ParticleState &s) {
    return std::tuple(s.label, s.spin, s.projection, static_cast<int>(s.frame),
                      s.momentum.x, s.momentum.y, s.momentum.z);
  };
  if (key(sa) != key(sb))
    return key(sa) < key(sb);
  if (a.phi0.is_exact() && b.phi0.is_exact())
    return a.phi0.exact_fraction() < b.phi0.exact_fraction();
  if (a.phi0.is_exact() != b.phi0.is_exact())
    return a.phi0.is_exact();
  return a.phi0.fraction() < b.phi0.fraction();
}

Rank0Azimuths azimuths_of(std::span<const Particle> ps, const Tolerances &tol) {
  std::vector<TurnAngle> phi0;
  phi0.reserve(ps.size());
  for (const auto &p : ps)
    phi0.push_back(p.phi0);
  return Rank0Azimuths(std::move(phi0), tol);
}

} // namespace

SymmetricState::SymmetricState(std::vector<Particle> particles, const Tolerances &tol)
    : particles_(std::move(particles)), tol_(tol) {
  for (auto &p : particles_) {
    validate(p.state);
    p.phi0 = p.phi0.rank0();
  }
  azimuths_ = azimuths_of(particles_, tol_);
}

double SymmetricState::norm_alpha() const {
  return 1.0 / std::sqrt(std::tgamma(static_cast<double>(particles_.size()) + 1.0));
}

Phase SymmetricState::canonical_phase() const {
  Phase total;
  for (const auto &p : particles_)
    total = total * canonical_rotation_phase(p.state.projection, p.phi0);
  return total;
}

SymmetricState SymmetricState::with_rotated_frame(const TurnAngle &alpha) const {
  std::vector<Particle> out = particles_;
  for (auto &p : out)
    p.phi0 = (p.phi0 - alpha).rank0();
  return SymmetricState(std::move(out), tol_);
}

std::vector<Particle> SymmetricState::canonical_multiset() const {
  std::vector<Particle> out = particles_;
  std::sort(out.begin(), out.end(), particle_less);
  return out;
}

bool operator==(const SymmetricState &a, const SymmetricState &b) {
  return a.size() == b.size() && a.canonical_multiset() == b.canonical_multiset();
}

SymmetricState build_symmetric(std::span<const ParticleState> particles,
                               FrameKind frame, const std::optional<Frame> &canonical,
                               std::optional<std::span<const TurnAngle>> phi0,
                               const Tolerances &tol) {
  if (phi0 && phi0->size() != particles.size())
    throw Error(ErrorKind::Validation, "azimuth count does not match particle count");
  std::vector<Vec3> momenta;
  momenta.reserve(particles.size());
  for (const auto &p : particles) {
    validate(p);
    momenta.push_back(p.momentum);
  }
  const Vec3 k = aggregate_axis(momenta, tol);
  const Frame canon = canonical ? *canonical : default_canonical_frame(k, tol);

  std::vector<Particle> out;
  out.reserve(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    // The per-particle frames must exist for the chosen basis.
    if (frame == FrameKind::Helicity)
      (void)helicity_frame(momenta[i], k, tol);
    else
      (void)aggregate_frame(momenta[i], k, tol);
    Particle p{particles[i], {}};
    p.state.frame = frame;
    p.phi0 = phi0 ? (*phi0)[i].rank0() : canonical_angles(momenta[i], canon, tol).phi;
    out.push_back(std::move(p));
  }
  return SymmetricState(std::move(out), tol);
}

// ------------------------------------------------------------ AnnotatedState

std::size_t AnnotatedState::slot_of(std::size_t identity) const {
  auto it = std::find(occupancy_.begin(), occupancy_.end(), identity);
  if (it == occupancy_.end())
    throw Error(ErrorKind::UnknownIdentity,
                "no particle with identity " + std::to_string(identity));
  return static_cast<std::size_t>(it - occupancy_.begin());
}

std::vector<std::size_t> AnnotatedState::effective_sequence(std::size_t identity) const {
  const auto seq = scheme_.sequence(slot_of(identity));
  std::vector<std::size_t> out;
  out.reserve(seq.size());
  for (std::size_t q : seq)
    out.push_back(occupancy_[q]);
  return out;
}

void AnnotatedState::refresh() {
  const auto positions = base_->azimuths().positions();
  windings_.n_per_particle.assign(occupancy_.size(), 0);
  phase_ = Phase{};
  std::vector<std::size_t> seq;
  for (std::size_t t = 0; t < occupancy_.size(); ++t) {
    const std::size_t target = occupancy_[t];
    seq.clear();
    for (std::size_t q : scheme_.sequence(t))
      seq.push_back(occupancy_[q]);
    const std::int64_t n = winding_from_positions(target, seq, positions);
    windings_.n_per_particle[target] = n;
    phase_ = phase_ * winding_phase(base_->particle(target).state.projection, n);
  }
}

Phase AnnotatedState::recompute_phase() const {
  Phase total;
  for (std::size_t id = 0; id < occupancy_.size(); ++id) {
    const auto seq = effective_sequence(id);
    if (seq.empty())
      continue;
    const auto ranked = rank_n_phi(id, seq, base_->azimuths());
    total = total * winding_phase(base_->particle(id).state.projection, ranked.winding);
  }
  return total;
}

bool operator==(const AnnotatedState &a, const AnnotatedState &b) {
  return *a.base_ == *b.base_ && a.scheme_ == b.scheme_ &&
         a.occupancy_ == b.occupancy_ && a.phase_ == b.phase_;
}

AnnotatedState annotate(const SymmetricState &base, const RankingScheme &scheme) {
  if (scheme.size() != base.size())
    throw Error(ErrorKind::InvalidSequence,
                "scheme covers " + std::to_string(scheme.size()) + " particles, state has " +
                    std::to_string(base.size()));
  AnnotatedState s;
  s.base_ = std::make_shared<const SymmetricState>(base);
  s.scheme_ = scheme;
  s.occupancy_.resize(base.size());
  std::iota(s.occupancy_.begin(), s.occupancy_.end(), std::size_t{0});
  s.refresh();
  return s;
}

AnnotatedState with_occupancy(const AnnotatedState &state,
                              std::vector<std::size_t> occupancy) {
  std::vector<std::size_t> check = occupancy;
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < check.size(); ++k)
    if (check[k] != k || check.size() != state.occupancy_.size())
      throw Error(ErrorKind::UnknownIdentity, "occupancy is not a permutation");
  AnnotatedState s;
  s.base_ = state.base_;
  s.scheme_ = state.scheme_;
  s.occupancy_ = std::move(occupancy);
  s.refresh();
  return s;
}

ExchangeResult exchange(const AnnotatedState &state, std::size_t a, std::size_t b) {
  const std::size_t n = state.base().size();
  if (a >= n || b >= n)
    throw Error(ErrorKind::UnknownIdentity,
                "exchange names identity " + std::to_string(std::max(a, b)) +
                    " but the state has " + std::to_string(n) + " particles");
  if (a == b)
    throw Error(ErrorKind::SameParticle, "cannot exchange a particle with itself");

  std::vector<std::size_t> occ(state.occupancy().begin(), state.occupancy().end());
  const std::size_t sa = state.slot_of(a), sb = state.slot_of(b);
  std::swap(occ[sa], occ[sb]);
  AnnotatedState next = with_occupancy(state, occ);

  ExchangeReport rep;
  rep.pair = {a, b};
  rep.exchange_phase = next.phase() / state.phase();
  if (!rep.exchange_phase.sign())
    throw std::logic_error("exchange phase is not ±1");
  rep.winding_deltas.n_per_particle.resize(n);
  for (std::size_t id = 0; id < n; ++id) {
    const auto d = next.windings().n_per_particle[id] - state.windings().n_per_particle[id];
    rep.winding_deltas.n_per_particle[id] = d;
    if (d != 0 && id != a && id != b)
      rep.third_party_affected.push_back(id);
  }
  rep.self_mapped = true;
  for (std::size_t t = 0; t < n; ++t)
    if (!(state.base().particle(state.occupancy()[t]) ==
          state.base().particle(next.occupancy()[t])))
      rep.self_mapped = false;
  rep.vanishes = rep.self_mapped && rep.exchange_phase.sign() == -1;
  return {std::move(next), std::move(rep)};
}

bool pauli_check(const AnnotatedState &state, std::size_t a, std::size_t b) {
  return exchange(state, a, b).report.vanishes;
}

std::vector<HalfInt> odd_s_exclusion(HalfInt s) {
  if (!is_valid_spin(s) || s.twice() > 6)
    throw Error(ErrorKind::Validation, "odd-S exclusion supports 0 <= 2s <= 6");

  // Pair exchange phase for two identical particles: take the rank-1
  // ordering of the pair next to a spinless spectator (two identical
  // momenta alone would leave the aggregate axis collinear with both).
  const ParticleState member{"pair", {1.0, 0.0, 0.0}, s, s, FrameKind::Canonical};
  const ParticleState spectator{"spectator", {0.0, 1.0, 0.0}, HalfInt{}, HalfInt{},
                                FrameKind::Canonical};
  const ParticleState parts[3] = {member, member, spectator};
  const auto base = build_symmetric(parts, FrameKind::Canonical);
  RankingScheme scheme(3);
  scheme.set_sequence(1, {0});
  const Phase pair_phase = exchange(annotate(base, scheme), 0, 1).report.exchange_phase;

  std::vector<HalfInt> forbidden;
  for (int twice_S = 0; twice_S <= 2 * s.twice(); twice_S += 2) {
    const HalfInt S = HalfInt::from_twice(twice_S);
    const int eps = pair_exchange_symmetry(s, S);
    const Phase coupled = pair_phase * (eps < 0 ? Phase::minus_one() : Phase{});
    if (coupled.sign() == -1)
      forbidden.push_back(S);
  }
  return forbidden;
}

} // namespace permsym
