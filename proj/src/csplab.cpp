#include "permsym/csplab.hpp"

#include "permsym/error.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace permsym {

// ---------------------------------------------------------------- rule set

RankingScheme build_ruleset_scheme(const SymmetricState &state) {
  std::vector<std::size_t> fermions;
  for (std::size_t id : state.azimuths().order())
    if (state.particle(id).state.is_fermion())
      fermions.push_back(id);
  if (fermions.size() > 3)
    throw Error(ErrorKind::TooManyFermions,
                std::to_string(fermions.size()) +
                    " fermions; the emulation rules cover at most three");
  RankingScheme scheme(state.size());
  if (fermions.size() == 2)
    scheme.set_sequence(fermions[1], {fermions[0]});
  else if (fermions.size() == 3)
    scheme = RankingScheme::cyclic(fermions, state.size());
  return scheme;
}

PairKind pair_kind(const SymmetricState &state, std::size_t a, std::size_t b) {
  const bool fa = state.particle(a).state.is_fermion();
  const bool fb = state.particle(b).state.is_fermion();
  if (fa && fb)
    return PairKind::FermionFermion;
  if (!fa && !fb)
    return PairKind::BosonBoson;
  return PairKind::Mixed;
}

std::string_view to_string(PairKind kind) {
  switch (kind) {
  case PairKind::FermionFermion: return "fermion-fermion";
  case PairKind::BosonBoson: return "boson-boson";
  case PairKind::Mixed: return "fermion-boson";
  }
  return "fermion-boson";
}

std::optional<Phase> csp_expected(PairKind kind) {
  switch (kind) {
  case PairKind::FermionFermion: return Phase::minus_one();
  case PairKind::BosonBoson: return Phase{};
  case PairKind::Mixed: return std::nullopt;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- phase table

namespace {

std::vector<Transposition> all_transpositions(std::size_t n) {
  std::vector<Transposition> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      out.push_back({a, b});
  return out;
}

} // namespace

const SingleExchange *PhaseTable::single(std::size_t a, std::size_t b) const {
  if (a > b)
    std::swap(a, b);
  for (const auto &s : singles)
    if (s.pair.a == a && s.pair.b == b)
      return &s;
  return nullptr;
}

PhaseTable phase_table(const AnnotatedState &state) {
  PhaseTable table;
  const auto pairs = all_transpositions(state.base().size());
  const Phase origin_direct = state.recompute_phase();
  for (const auto &t1 : pairs) {
    const auto first = exchange(state, t1.a, t1.b);
    table.singles.push_back(
        {t1, pair_kind(state.base(), t1.a, t1.b), first.report.exchange_phase});
    for (const auto &t2 : pairs) {
      const auto second = exchange(first.state, t2.a, t2.b);
      DoubleExchange d;
      d.first = t1;
      d.second = t2;
      d.first_phase = first.report.exchange_phase;
      d.second_phase = second.report.exchange_phase;
      d.net = second.state.phase() / state.phase();
      d.direct_net = second.state.recompute_phase() / origin_direct;
      table.doubles.push_back(std::move(d));
    }
  }
  return table;
}

CspVerdict evaluate_csp(const PhaseTable &table, const AnnotatedState &state) {
  const auto &base = state.base();
  CspVerdict v;
  for (const auto &s : table.singles)
    if (auto e = csp_expected(s.kind); e && s.phase != *e)
      v.singles_ok = false;
  for (const auto &d : table.doubles) {
    const auto e1 = csp_expected(pair_kind(base, d.first.a, d.first.b));
    const auto k2 = pair_kind(base, d.second.a, d.second.b);
    const auto e2 = csp_expected(k2);
    if (!e1)
      continue;
    if (e2) {
      if (d.net != *e1 * *e2)
        v.doubles_ok = false;
    } else if (d.second_phase != table.single(d.second.a, d.second.b)->phase) {
      v.mixed_stable = false;
    }
  }
  return v;
}

// ------------------------------------------------------------ boson anomaly

AnomalyResult boson_anomaly_check(const SymmetricState &state, const TurnAngle &rotation) {
  if (state.size() != 3)
    throw Error(ErrorKind::Validation, "the boson anomaly needs exactly three particles");
  const SymmetricState turned = state.with_rotated_frame(rotation);
  const auto order = turned.azimuths().order();
  const auto annotated = annotate(turned, RankingScheme::cyclic(order, 3));

  AnomalyResult r;
  r.middle = order[1];
  std::vector<std::size_t> bosons;
  for (std::size_t id = 0; id < 3; ++id)
    if (!turned.particle(id).state.is_fermion())
      bosons.push_back(id);
  if (bosons.size() < 2)
    return r;
  if (bosons.size() == 2)
    r.exchanged = {bosons[0], bosons[1]};
  else
    r.exchanged = {std::min(order[0], order[2]), std::max(order[0], order[2])};
  r.phase = exchange(annotated, r.exchanged.a, r.exchanged.b).report.exchange_phase;
  r.anomalous = r.phase->sign() == -1;
  return r;
}

// ------------------------------------------------------ four-particle chain

BreakdownWitness four_fermion_breakdown(std::array<HalfInt, 4> spins) {
  // Azimuths 0, 1/4, 1/2, 3/4 at a common polar angle: the transverse
  // momenta cancel, so the aggregate axis is the lab z-axis and the
  // declared azimuths are the canonical ones.
  const Frame lab{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<ParticleState> parts;
  std::vector<TurnAngle> phi0;
  for (int q = 0; q < 4; ++q) {
    const TurnAngle phi = TurnAngle::exact(make_rational(q, 4));
    const Vec3 p = direction_from_angles(std::numbers::pi / 3, phi.radians(), lab);
    parts.push_back({"q" + std::to_string(q), p, spins[q], spins[q], FrameKind::Canonical});
    phi0.push_back(phi);
  }
  const auto base = build_symmetric(parts, FrameKind::Canonical, lab,
                                    std::span<const TurnAngle>(phi0));
  const std::size_t cycle[4] = {0, 1, 2, 3};
  const auto state = annotate(base, RankingScheme::cyclic(cycle, 4));

  BreakdownWitness w;
  w.spins = spins;
  w.annotation = state.phase();
  const auto ij = exchange(state, 0, 1);
  const auto jk = exchange(ij.state, 1, 2);
  w.first = ij.report.exchange_phase;
  w.second = jk.report.exchange_phase;
  w.net = jk.state.phase() / state.phase();
  w.single_kl = exchange(state, 2, 3).report.exchange_phase;
  w.matches_single_kl = w.net == w.single_kl;
  const auto e1 = csp_expected(pair_kind(base, 0, 1));
  const auto e2 = csp_expected(pair_kind(base, 1, 2));
  if (e1 && e2)
    w.csp_net = *e1 * *e2;
  w.violates_csp = w.csp_net && w.net != *w.csp_net;
  return w;
}

// ------------------------------------------------------- parity certificate

ImpossibilityCertificate impossibility_search() {
  ImpossibilityCertificate cert;
  const HalfInt half = HalfInt::from_twice(1);
  for (unsigned raw = 0; raw < 64; ++raw) {
    ++cert.assignments_enumerated;
    std::array<int, 6> x{};
    for (int b = 0; b < 6; ++b)
      x[b] = (raw >> b) & 1;
    // n¹_q − n²_q and n²_q − n¹_q have the same parity.
    if (x[0] != x[5] || x[1] != x[2] || x[3] != x[4])
      continue;
    ParityRow row;
    row.bits = {x[0], x[2], x[4]};
    // Representatives n¹_q = bit_q, n²_q = 0.
    row.differences = {row.bits[0], -row.bits[1], row.bits[1],
                       -row.bits[2], row.bits[2], -row.bits[0]};
    for (int c = 0; c < 3; ++c) {
      const int u = row.differences[2 * c];
      const int v = row.differences[2 * c + 1];
      row.conditions[c] = ((u & 1) ^ (v & 1)) == 1;
      const Phase ratio = winding_phase(half, u) * winding_phase(half, v);
      row.phase_conditions[c] = ratio.sign() == -1;
    }
    cert.rows.push_back(row);
  }
  for (const auto &row : cert.rows) {
    if (row.all())
      ++cert.satisfying;
    for (int drop = 0; drop < 3; ++drop) {
      bool ok = true;
      for (int c = 0; c < 3; ++c)
        if (c != drop)
          ok = ok && row.conditions[c];
      if (ok)
        ++cert.relaxed_satisfying[drop];
    }
  }
  // Conditions as GF(2) equations: b_i+b_j = 1, b_j+b_k = 1, b_k+b_i = 1.
  const int coeff[3][3] = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  int lhs_sum[3] = {0, 0, 0};
  for (const auto &eq : coeff)
    for (int v = 0; v < 3; ++v)
      lhs_sum[v] ^= eq[v];
  cert.parity_sum_contradiction = lhs_sum[0] == 0 && lhs_sum[1] == 0 &&
                                  lhs_sum[2] == 0 && ((1 + 1 + 1) % 2) == 1;
  return cert;
}

// ------------------------------------------------------------ scheme search

namespace {

std::vector<std::vector<std::size_t>> slot_options(std::size_t n, std::size_t t,
                                                   std::size_t max_rank) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (std::size_t len = 1; len <= max_rank; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto &seq : frontier)
      for (std::size_t q = 0; q < n; ++q) {
        if (q == t || std::find(seq.begin(), seq.end(), q) != seq.end())
          continue;
        auto s = seq;
        s.push_back(q);
        next.push_back(s);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Exchange parities on raw arrays. Every exchange phase is ±1, so the
// search tracks (2m·N) mod 2 summed over particles.
class ParityEvaluator {
public:
  ParityEvaluator(const SymmetricState &state)
      : n_(state.size()), positions_(state.azimuths().positions().begin(),
                                     state.azimuths().positions().end()) {
    for (std::size_t id = 0; id < n_; ++id)
      odd_m_.push_back(state.particle(id).state.projection.is_half_odd() ? 1 : 0);
    pairs_ = all_transpositions(n_);
    for (const auto &t : pairs_)
      kinds_.push_back(pair_kind(state, t.a, t.b));
  }

  struct Verdict {
    bool pass = false;
    bool mixed_stable = true;
  };

  Verdict evaluate(const std::vector<const std::vector<std::size_t> *> &scheme) const {
    std::array<std::size_t, 8> occ0{};
    for (std::size_t t = 0; t < n_; ++t)
      occ0[t] = t;
    const int p0 = parity(scheme, occ0);

    std::array<int, 16> single{};
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      auto occ = occ0;
      swap_ids(occ, pairs_[k]);
      single[k] = parity(scheme, occ) ^ p0;
      if (kinds_[k] == PairKind::FermionFermion && single[k] != 1)
        return {};
      if (kinds_[k] == PairKind::BosonBoson && single[k] != 0)
        return {};
    }
    Verdict v{true, true};
    for (std::size_t k1 = 0; k1 < pairs_.size(); ++k1) {
      if (kinds_[k1] == PairKind::Mixed)
        continue;
      auto occ1 = occ0;
      swap_ids(occ1, pairs_[k1]);
      const int p1 = p0 ^ single[k1];
      const int e1 = kinds_[k1] == PairKind::FermionFermion ? 1 : 0;
      for (std::size_t k2 = 0; k2 < pairs_.size(); ++k2) {
        auto occ2 = occ1;
        swap_ids(occ2, pairs_[k2]);
        const int p2 = parity(scheme, occ2);
        if (kinds_[k2] == PairKind::Mixed) {
          if ((p2 ^ p1) != single[k2])
            v.mixed_stable = false;
          continue;
        }
        const int e2 = kinds_[k2] == PairKind::FermionFermion ? 1 : 0;
        if ((p2 ^ p0) != (e1 ^ e2))
          return {};
      }
    }
    return v;
  }

private:
  int parity(const std::vector<const std::vector<std::size_t> *> &scheme,
             const std::array<std::size_t, 8> &occ) const {
    int p = 0;
    std::array<std::size_t, 8> seq{};
    for (std::size_t t = 0; t < n_; ++t) {
      const auto &s = *scheme[t];
      if (s.empty() || !odd_m_[occ[t]])
        continue;
      for (std::size_t q = 0; q < s.size(); ++q)
        seq[q] = occ[s[q]];
      const auto w = winding_from_positions(occ[t], std::span(seq.data(), s.size()),
                                            positions_);
      p ^= static_cast<int>(w & 1);
    }
    return p;
  }

  void swap_ids(std::array<std::size_t, 8> &occ, const Transposition &t) const {
    std::size_t sa = 0, sb = 0;
    for (std::size_t s = 0; s < n_; ++s) {
      if (occ[s] == t.a) sa = s;
      if (occ[s] == t.b) sb = s;
    }
    std::swap(occ[sa], occ[sb]);
  }

  std::size_t n_;
  std::vector<std::size_t> positions_;
  std::vector<int> odd_m_;
  std::vector<Transposition> pairs_;
  std::vector<PairKind> kinds_;
};

// Identity permutations that only move particles with equal φ^0 and equal
// descriptions among themselves.
std::vector<std::vector<std::size_t>> tie_relabelings(const SymmetricState &state) {
  const std::size_t n = state.size();
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> used(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (used[a])
      continue;
    std::vector<std::size_t> g{a};
    used[a] = true;
    for (std::size_t b = a + 1; b < n; ++b)
      if (!used[b] && state.particle(a) == state.particle(b) &&
          state.particle(a).phi0.is_exact()) {
        g.push_back(b);
        used[b] = true;
      }
    groups.push_back(std::move(g));
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> map(n);
  auto rec = [&](auto &&self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      out.push_back(map);
      return;
    }
    auto img = groups[gi];
    std::sort(img.begin(), img.end());
    do {
      for (std::size_t k = 0; k < img.size(); ++k)
        map[groups[gi][k]] = img[k];
      self(self, gi + 1);
    } while (std::next_permutation(img.begin(), img.end()));
  };
  rec(rec, 0);
  return out;
}

} // namespace

std::uint64_t scheme_count(std::size_t particles, std::size_t max_rank) {
  if (particles == 0)
    return 1;
  std::uint64_t per_slot = 0, perm = 1;
  for (std::size_t len = 0; len <= std::min(max_rank, particles - 1); ++len) {
    per_slot += perm;
    perm *= particles - 1 - len;
  }
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < particles; ++k) {
    if (total > UINT64_MAX / per_slot)
      return UINT64_MAX;
    total *= per_slot;
  }
  return total;
}

SearchResult scheme_search(const SymmetricState &state, std::size_t max_rank,
                           const SearchOptions &options) {
  const std::size_t n = state.size();
  if (n > 5 || max_rank > 3)
    throw Error(ErrorKind::BudgetExceeded,
                "scheme search is limited to 5 particles and rank 3");
  const std::uint64_t total = scheme_count(n, max_rank);
  if (total > options.budget)
    throw Error(ErrorKind::BudgetExceeded,
                std::to_string(total) + " candidate schemes exceed the budget of " +
                    std::to_string(options.budget));

  std::vector<std::vector<std::vector<std::size_t>>> opts(n);
  for (std::size_t t = 0; t < n; ++t)
    opts[t] = slot_options(n, t, max_rank);
  const std::uint64_t radix = opts.empty() ? 1 : opts[0].size();

  const ParityEvaluator eval(state);
  auto decode = [&](std::uint64_t index) {
    std::vector<const std::vector<std::size_t> *> s(n);
    for (std::size_t t = 0; t < n; ++t) {
      s[t] = &opts[t][index % radix];
      index /= radix;
    }
    return s;
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::max<std::uint64_t>(1, total / 1024))));
  std::vector<std::vector<std::uint64_t>> found(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < total; i += threads)
          if (eval.evaluate(decode(i)).pass)
            found[w].push_back(i);
      });
  }

  auto to_scheme = [&](const std::vector<const std::vector<std::size_t> *> &s) {
    std::vector<std::vector<std::size_t>> seqs(n);
    for (std::size_t t = 0; t < n; ++t)
      seqs[t] = *s[t];
    return RankingScheme(std::move(seqs));
  };

  const auto relabelings = tie_relabelings(state);
  std::map<RankingScheme, bool> hits;
  for (const auto &bucket : found)
    for (std::uint64_t idx : bucket) {
      const RankingScheme scheme = to_scheme(decode(idx));
      // Representative: smallest passing member of the relabeling orbit.
      std::optional<RankingScheme> rep;
      bool stable = false;
      for (const auto &map : relabelings) {
        RankingScheme image = scheme.relabeled(map);
        std::vector<const std::vector<std::size_t> *> view(n);
        for (std::size_t t = 0; t < n; ++t)
          view[t] = &image.sequences()[t];
        const auto v = eval.evaluate(view);
        if (!v.pass)
          continue;
        stable = stable || v.mixed_stable;
        if (!rep || image < *rep)
          rep = std::move(image);
      }
      auto &slot = hits[*rep];
      slot = slot || stable;
    }

  SearchResult result;
  result.particles = n;
  result.max_rank = max_rank;
  result.candidates = total;
  for (auto &[scheme, stable] : hits) {
    result.hits.push_back({scheme, stable});
    result.any_mixed_stable = result.any_mixed_stable || stable;
  }
  return result;
}

} // namespace permsym
