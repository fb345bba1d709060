#pragma once

#include "permsym/exactphase.hpp"
#include "permsym/ranking.hpp"
#include "permsym/statevec.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace permsym {

/// Scheme from the four emulation rules: order by φ^0, bosons rank 0, fewer
/// than three fermions chain the second onto the first, exactly three
/// fermions form the cyclic rank-1 chain. Throws TooManyFermions above three.
RankingScheme build_ruleset_scheme(const SymmetricState &state);

enum class PairKind { FermionFermion, BosonBoson, Mixed };
PairKind pair_kind(const SymmetricState &state, std::size_t a, std::size_t b);
std::string_view to_string(PairKind kind);

/// Phase the conventional postulate demands for a transposition: −1 for two
/// fermions, +1 for two bosons, nothing for a mixed pair.
std::optional<Phase> csp_expected(PairKind kind);

struct Transposition {
  std::size_t a = 0; // a < b, identities
  std::size_t b = 0;
  friend auto operator<=>(const Transposition &, const Transposition &) = default;
};

struct SingleExchange {
  Transposition pair;
  PairKind kind;
  Phase phase;
};

/// Two exchanges applied one after the other, each on the state the
/// previous one produced.
struct DoubleExchange {
  Transposition first;
  Transposition second;
  Phase first_phase;
  Phase second_phase;
  /// Final phase over original phase.
  Phase net;
  /// The same final occupancy annotated from scratch, over original phase.
  Phase direct_net;
};

struct PhaseTable {
  std::vector<SingleExchange> singles;
  std::vector<DoubleExchange> doubles;

  const SingleExchange *single(std::size_t a, std::size_t b) const;
};

PhaseTable phase_table(const AnnotatedState &state);

struct CspVerdict {
  bool singles_ok = true; ///< every FF single is −1, every BB single +1
  bool doubles_ok = true; ///< the same, composed, for every FF/BB double
  /// Every mixed transposition has the same phase from the original state
  /// and after any one FF or BB exchange.
  bool mixed_stable = true;
  bool emulates() const { return singles_ok && doubles_ok; }
};

CspVerdict evaluate_csp(const PhaseTable &table, const AnnotatedState &state);

struct AnomalyResult {
  std::size_t middle = 0;            ///< identity in the middle of the φ^0 order
  Transposition exchanged;           ///< the boson pair (outer pair if all bosons)
  std::optional<Phase> phase;        ///< nullopt when fewer than two bosons
  bool anomalous = false;            ///< boson-boson exchange phase is −1
};

/// Three particles under the cyclic rank-1 scheme taken in φ^0 order after
/// turning the canonical frame by `rotation`.
AnomalyResult boson_anomaly_check(const SymmetricState &state,
                                  const TurnAngle &rotation = TurnAngle{});

struct BreakdownWitness {
  std::array<HalfInt, 4> spins;
  Phase annotation;      ///< vs the rank-0 state
  Phase first;           ///< i↔j
  Phase second;          ///< then j↔k, relative to the intermediate state
  Phase net;             ///< after both, relative to the original
  Phase single_kl;       ///< k↔l alone, from the original
  std::optional<Phase> csp_net; ///< the conventional postulate's demand; nullopt for mixed pairs
  bool matches_single_kl = false;
  bool violates_csp = false;
};

/// Four particles i<j<k<l in φ^0 order, each rank 1 on the previous one
/// cyclically, taken through i↔j then j↔k.
BreakdownWitness four_fermion_breakdown(std::array<HalfInt, 4> spins = {
                                            HalfInt::from_twice(1), HalfInt::from_twice(1),
                                            HalfInt::from_twice(1), HalfInt::from_twice(1)});

/// The three parity conditions on the ordering-label windings of three
/// fermions, as a certificate over every parity assignment.
struct ParityRow {
  /// Parities of n¹ − n² for particles i, j, k.
  std::array<int, 3> bits;
  /// All six signed differences, in the order
  /// (n¹_i−n²_i, n²_j−n¹_j, n¹_j−n²_j, n²_k−n¹_k, n¹_k−n²_k, n²_i−n¹_i).
  std::array<int, 6> differences;
  std::array<bool, 3> conditions;
  /// The same conditions evaluated as spin-½ exchange ratios equal to −1.
  std::array<bool, 3> phase_conditions;
  bool all() const { return conditions[0] && conditions[1] && conditions[2]; }
};

struct ImpossibilityCertificate {
  std::size_t assignments_enumerated = 0; ///< raw 2^6 space
  std::vector<ParityRow> rows;            ///< consistent assignments (8)
  std::size_t satisfying = 0;
  /// Satisfying assignments with condition c dropped.
  std::array<std::size_t, 3> relaxed_satisfying{};
  /// Adding the three conditions mod 2 gives 0 = 1.
  bool parity_sum_contradiction = false;
};

ImpossibilityCertificate impossibility_search();

struct SearchOptions {
  std::uint64_t budget = 5'000'000; ///< candidate schemes
  unsigned threads = 0;             ///< 0 = hardware concurrency
};

struct SchemeHit {
  RankingScheme scheme; ///< canonical representative
  bool mixed_stable = false;
};

struct SearchResult {
  std::size_t particles = 0;
  std::size_t max_rank = 0;
  std::uint64_t candidates = 0;
  std::vector<SchemeHit> hits; ///< sorted by scheme
  bool any_mixed_stable = false;
};

/// Every scheme (each particle a chain of at most `max_rank` distinct
/// predecessors) whose single and double FF/BB exchange phases match the
/// conventional postulate. At most 5 particles and rank 3.
SearchResult scheme_search(const SymmetricState &state, std::size_t max_rank,
                           const SearchOptions &options = {});

/// Number of schemes scheme_search would enumerate.
std::uint64_t scheme_count(std::size_t particles, std::size_t max_rank);

} // namespace permsym
