#pragma once

#include "permsym/exactphase.hpp"
#include "permsym/geometry.hpp"
#include "permsym/ranking.hpp"
#include "permsym/tolerances.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace permsym {

enum class FrameKind { Helicity, Aggregate, Canonical };

std::string_view to_string(FrameKind kind);
std::optional<FrameKind> parse_frame_kind(std::string_view text);

/// One particle's description: non-kinematic label Q, momentum, spin and
/// spin projection (the helicity when frame == Helicity).
struct ParticleState {
  std::string label;
  Vec3 momentum;
  HalfInt spin;
  HalfInt projection;
  FrameKind frame = FrameKind::Canonical;

  bool is_fermion() const { return permsym::is_fermion(spin); }

  friend bool operator==(const ParticleState &, const ParticleState &) = default;
};

/// Throws Validation when s, m are inconsistent.
void validate(const ParticleState &p);

/// A particle inside a state: its description plus the rank-0 canonical
/// azimuth the description implies.
struct Particle {
  ParticleState state;
  TurnAngle phi0;

  friend bool operator==(const Particle &, const Particle &) = default;
};

/// Permutation-symmetric state. Particles are indexed by identity (creation
/// order); equality compares the multiset of descriptions only.
class SymmetricState {
public:
  SymmetricState(std::vector<Particle> particles, const Tolerances &tol = {});

  std::size_t size() const { return particles_.size(); }
  const Particle &particle(std::size_t identity) const { return particles_.at(identity); }
  std::span<const Particle> particles() const { return particles_; }
  const Rank0Azimuths &azimuths() const { return azimuths_; }

  /// α = 1/√(N!); never enters a phase.
  double norm_alpha() const;

  /// e^{i Σ m_a φ^0_a}: the rank-0 canonical state in terms of the
  /// aggregate-frame state.
  Phase canonical_phase() const;

  /// Same particles with the canonical frame turned by `alpha` about its
  /// z-axis, so every azimuth decreases by alpha.
  SymmetricState with_rotated_frame(const TurnAngle &alpha) const;

  /// Descriptions sorted into a canonical order.
  std::vector<Particle> canonical_multiset() const;

  friend bool operator==(const SymmetricState &a, const SymmetricState &b);

private:
  std::vector<Particle> particles_;
  Rank0Azimuths azimuths_;
  Tolerances tol_;
};

/// Builds the symmetric state from descriptions, deriving each φ^0 from the
/// aggregate-axis geometry. `canonical` overrides the default canonical
/// frame (its z-axis must be the aggregate axis for the azimuths to be the
/// canonical ones). `phi0`, when given, supplies the azimuths directly.
SymmetricState build_symmetric(std::span<const ParticleState> particles,
                               FrameKind frame,
                               const std::optional<Frame> &canonical = std::nullopt,
                               std::optional<std::span<const TurnAngle>> phi0 = std::nullopt,
                               const Tolerances &tol = {});

/// A symmetric state with an order-dependent ranking scheme applied.
///
/// The scheme is a pattern over slots; slot t initially holds identity t.
/// Exchanges move descriptions between slots, so a slot's predecessor chain
/// is read through whatever identities currently occupy the referenced
/// slots. The stored phase is relative to the rank-0 canonical state.
class AnnotatedState {
public:
  const SymmetricState &base() const { return *base_; }
  const RankingScheme &scheme() const { return scheme_; }
  const Phase &phase() const { return phase_; }

  /// occupancy()[slot] = identity.
  std::span<const std::size_t> occupancy() const { return occupancy_; }
  std::size_t slot_of(std::size_t identity) const;

  /// Winding per identity.
  const WindingVector &windings() const { return windings_; }

  /// Predecessor identities of `identity` under the current occupancy.
  std::vector<std::size_t> effective_sequence(std::size_t identity) const;

  /// Phase recomputed from scratch through the Δ-chain angles.
  Phase recompute_phase() const;

  friend bool operator==(const AnnotatedState &a, const AnnotatedState &b);

private:
  friend AnnotatedState annotate(const SymmetricState &, const RankingScheme &);
  friend AnnotatedState with_occupancy(const AnnotatedState &, std::vector<std::size_t>);
  AnnotatedState() = default;
  void refresh();

  std::shared_ptr<const SymmetricState> base_;
  RankingScheme scheme_;
  std::vector<std::size_t> occupancy_;
  WindingVector windings_;
  Phase phase_;
};

AnnotatedState annotate(const SymmetricState &base, const RankingScheme &scheme);

/// Same state and scheme with a different slot occupancy, windings and phase
/// recomputed.
AnnotatedState with_occupancy(const AnnotatedState &state,
                              std::vector<std::size_t> occupancy);

struct ExchangeReport {
  std::pair<std::size_t, std::size_t> pair;
  Phase exchange_phase;
  /// New minus old winding, per identity.
  WindingVector winding_deltas;
  /// Identities other than the pair whose winding changed.
  std::vector<std::size_t> third_party_affected;
  /// Every slot holds an identical description after the exchange.
  bool self_mapped = false;
  /// self_mapped with phase −1: the state equals its own negative.
  bool vanishes = false;
};

struct ExchangeResult {
  AnnotatedState state;
  ExchangeReport report;
};

ExchangeResult exchange(const AnnotatedState &state, std::size_t a, std::size_t b);

bool pauli_check(const AnnotatedState &state, std::size_t a, std::size_t b);

/// Composite spins S forbidden for two particles of spin s identical in
/// every other quantum number. Requires 2s <= 6.
std::vector<HalfInt> odd_s_exclusion(HalfInt s);

} // namespace permsym
