#pragma once

#include "permsym/exactphase.hpp"
#include "permsym/tolerances.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace permsym {

/// Rank-0 azimuths φ^0 (one per particle identity, each in [0, 2π)) and the
/// total order they induce. Equal angles are ordered by identity, so the
/// order is strict and every d_{ji} is defined.
class Rank0Azimuths {
public:
  Rank0Azimuths() = default;
  /// Throws InexactTie if two inexact angles cannot be ordered.
  explicit Rank0Azimuths(std::vector<TurnAngle> phi0, const Tolerances &tol = {});

  std::size_t size() const { return phi0_.size(); }
  const TurnAngle &operator[](std::size_t i) const { return phi0_[i]; }
  std::span<const TurnAngle> angles() const { return phi0_; }

  /// order()[k] is the identity at position k in increasing φ^0.
  std::span<const std::size_t> order() const { return order_; }
  /// Inverse of order().
  std::span<const std::size_t> positions() const { return position_; }
  std::size_t position(std::size_t i) const { return position_[i]; }

  bool all_exact() const { return all_exact_; }

private:
  std::vector<TurnAngle> phi0_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;
  bool all_exact_ = true;
};

/// Stable argsort by φ^0; equal angles keep identity order.
std::vector<std::size_t> index_sort(std::span<const TurnAngle> phi0,
                                    const Tolerances &tol = {});

/// Δ_{ji} in [0, 2π], congruent to φ^0_j − φ^0_i. Equal angles give 0 when
/// i < j and a full turn when i > j.
TurnAngle delta(std::size_t j, std::size_t i, const Rank0Azimuths &phi0);

/// d_{ji}: 0 when j follows i in the φ^0 order, 1 when it precedes it.
int d_order(std::size_t j, std::size_t i, const Rank0Azimuths &phi0);

/// Checks that `sequence` (q_1 … q_n) is a usable predecessor chain for
/// `target` among `count` particles: indices in range, distinct, and not the
/// target itself. Throws InvalidSequence.
void validate_sequence(std::size_t target, std::span<const std::size_t> sequence,
                       std::size_t count);

struct RankedAzimuth {
  TurnAngle phi;         ///< φ^{n,q_1…q_n}_target, winding included
  std::int64_t winding;  ///< (φ − φ^0_target) / 2π
};

/// Builds the rank-n azimuth by walking the Δ chain from φ^0_{q_1}.
RankedAzimuth rank_n_phi(std::size_t target, std::span<const std::size_t> sequence,
                         const Rank0Azimuths &phi0);

/// N = Σ_{i=1}^{n} d_{q_{i+1} q_i} with q_{n+1} = target: the number of
/// chain steps that go backwards in the φ^0 order. Order bits only.
std::int64_t winding_number(std::size_t target,
                            std::span<const std::size_t> sequence,
                            const Rank0Azimuths &phi0);

/// Same as winding_number, on a raw position table with no validation.
inline std::int64_t winding_from_positions(std::size_t target,
                                           std::span<const std::size_t> sequence,
                                           std::span<const std::size_t> position) {
  if (sequence.empty())
    return 0;
  auto d = [&](std::size_t j, std::size_t i) -> std::int64_t {
    return position[j] < position[i] ? 1 : 0;
  };
  std::int64_t n = d(target, sequence.back());
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
    n += d(sequence[k + 1], sequence[k]);
  return n;
}

/// The paper-style closed form d_{target,q_1} + Σ_{i<n} d_{q_{i+1} q_i}. It
/// equals winding_number only when the last step and the wrap-around step
/// agree; kept for comparison reports.
std::int64_t closed_form_winding(std::size_t target,
                                 std::span<const std::size_t> sequence,
                                 const Rank0Azimuths &phi0);

/// The winding split N = (1 − 2 d_{q_n,target}) + (Σ_{i<n} d_{q_{i+1} q_i} + d_{q_n,target}).
/// The first term is always odd.
struct WindingSplit {
  std::int64_t odd_term;
  std::int64_t order_term;
};
WindingSplit winding_split(std::size_t target, std::span<const std::size_t> sequence,
                           const Rank0Azimuths &phi0);

/// Predecessor sequences, one per particle; an empty sequence is rank 0.
class RankingScheme {
public:
  RankingScheme() = default;
  /// All rank 0.
  explicit RankingScheme(std::size_t count) : seq_(count) {}
  /// Throws InvalidSequence on a bad entry.
  explicit RankingScheme(std::vector<std::vector<std::size_t>> sequences);

  /// Each listed particle is rank 1 on the previous one, the first on the
  /// last. Particles not listed stay rank 0.
  static RankingScheme cyclic(std::span<const std::size_t> cycle, std::size_t count);

  std::size_t size() const { return seq_.size(); }
  std::span<const std::size_t> sequence(std::size_t i) const { return seq_[i]; }
  std::size_t rank(std::size_t i) const { return seq_[i].size(); }
  const std::vector<std::vector<std::size_t>> &sequences() const { return seq_; }

  void set_sequence(std::size_t target, std::vector<std::size_t> sequence);

  /// Renames particle t to mapping[t] everywhere.
  RankingScheme relabeled(std::span<const std::size_t> mapping) const;

  friend auto operator<=>(const RankingScheme &, const RankingScheme &) = default;
  friend bool operator==(const RankingScheme &, const RankingScheme &) = default;

private:
  std::vector<std::vector<std::size_t>> seq_;
};

struct WindingVector {
  std::vector<std::int64_t> n_per_particle;
  friend bool operator==(const WindingVector &, const WindingVector &) = default;
};

WindingVector scheme_windings(const RankingScheme &scheme, const Rank0Azimuths &phi0);

} // namespace permsym
