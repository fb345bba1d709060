#include "permsym/clebsch_gordan.hpp"
#include "permsym/error.hpp"
#include "permsym/statevec.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace permsym;
using namespace permsym::testing;

namespace {

std::vector<int> twice(const std::vector<HalfInt> &v) {
  std::vector<int> out;
  for (auto h : v)
    out.push_back(h.twice());
  return out;
}

std::vector<std::vector<std::size_t>> slots_of(const RankingScheme &s) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t t = 0; t < s.size(); ++t)
    out.emplace_back(s.sequence(t).begin(), s.sequence(t).end());
  return out;
}

/// Two fermions with the same description plus a spinless spectator.
SymmetricState identical_pair(HalfInt s, HalfInt m, HalfInt m2) {
  const double th = std::numbers::pi / 4;
  std::vector<ParticleState> ps{
      {"e", direction_from_angles(th, 0.0, kLab), s, m},
      {"e", direction_from_angles(th, 0.0, kLab), s, m2},
      {"pi", direction_from_angles(th, std::numbers::pi / 2, kLab), half(0), half(0)}};
  return build_symmetric(ps, FrameKind::Canonical);
}

} // namespace

TEST(BuildSymmetric, ListOrderIndependent) {
  const std::vector<ParticleState> abc{{"a", {1, 0, 0.5}, half(1), half(1)},
                                       {"b", {0, 1, 0.5}, half(2), half(0)},
                                       {"c", {-1, -1, 0.5}, half(0), half(0)}};
  const std::vector<ParticleState> cab{abc[2], abc[0], abc[1]};
  EXPECT_EQ(build_symmetric(abc, FrameKind::Helicity), build_symmetric(cab, FrameKind::Helicity));
  const std::vector<ParticleState> other{abc[0], abc[1], {"c", {-1, -1, 0.5}, half(2), half(2)}};
  EXPECT_FALSE(build_symmetric(abc, FrameKind::Helicity) ==
               build_symmetric(other, FrameKind::Helicity));
}

TEST(BuildSymmetric, RejectsBadProjection) {
  const std::vector<ParticleState> ps{{"a", {1, 0, 0.5}, half(1), half(3)},
                                      {"b", {0, 1, 0.5}, half(1), half(1)}};
  try {
    build_symmetric(ps, FrameKind::Canonical);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(BuildSymmetric, IdenticalBosonsAreFine) {
  const auto st = identical_pair(half(2), half(0), half(0));
  EXPECT_EQ(st.size(), 3u);
  EXPECT_NEAR(st.norm_alpha(), 1.0 / std::sqrt(6.0), 1e-15);
}

TEST(BuildSymmetric, CanonicalPhaseIsRotationProduct) {
  Gen g(51);
  for (int n = 0; n < 300; ++n) {
    auto r = random_state(g, static_cast<std::size_t>(g.integer(2, 5)), 12);
    Rational h = 0;
    for (std::size_t i = 0; i < r.phis.size(); ++i)
      h += Rational(r.ms[i].twice()) * r.phis[i];
    EXPECT_EQ(r.state.canonical_phase(), Phase::half_turns(h));
  }
}

TEST(Annotate, Examples) {
  Gen g(52);
  for (int n = 0; n < 200; ++n) {
    auto r = random_state(g, 3, 6);
    EXPECT_EQ(annotate(r.state, RankingScheme(3)).phase(), Phase{});

    RankingScheme pair(3);
    pair.set_sequence(1, {0});
    EXPECT_EQ(annotate(r.state, pair).phase(),
              winding_phase(r.ms[1], oracle::d(r.phis, 1, 0)));
  }
  // Cyclic scheme over sorted fermions: (−1)^{2 s_i}, whatever the m.
  for (int m0 : {-1, 1})
    for (int m1 : {-3, 1, 3}) {
      const auto st = angle_state({q(0), q(1, 3), q(2, 3)}, {half(1), half(3), half(1)},
                                  {half(m0), half(m1), half(1)});
      const std::size_t cyc[] = {0, 1, 2};
      EXPECT_EQ(annotate(st, RankingScheme::cyclic(cyc, 3)).phase(), Phase::minus_one());
    }
}

TEST(Exchange, RankOnePair) {
  Gen g(53);
  for (int n = 0; n < 500; ++n) {
    auto r = random_state(g, 2, 6, 4);
    RankingScheme s(2);
    s.set_sequence(1, {0});
    const auto res = exchange(annotate(r.state, s), 0, 1);
    const HalfInt s_j = r.spins[1], s_i = r.spins[0];
    const Phase want = oracle::d(r.phis, 1, 0) ? winding_phase(s_j, 1) : winding_phase(s_i, 1);
    EXPECT_EQ(res.report.exchange_phase, want);
  }
}

TEST(Exchange, RankZeroIsSymmetric) {
  Gen g(54);
  for (int n = 0; n < 100; ++n) {
    auto r = random_state(g, 4);
    const auto st = annotate(r.state, RankingScheme(4));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        EXPECT_EQ(exchange(st, a, b).report.exchange_phase, Phase{});
  }
}

TEST(Exchange, CyclicThreeFirstPair) {
  for (int sj : {1, 2, 3}) {
    const auto st = angle_state({q(1, 8), q(1, 4), q(5, 8)}, {half(1), half(sj), half(1)},
                                {half(1), half(sj), half(1)});
    const std::size_t cyc[] = {0, 1, 2};
    const auto res = exchange(annotate(st, RankingScheme::cyclic(cyc, 3)), 0, 1);
    EXPECT_EQ(res.report.exchange_phase, winding_phase(half(sj), 1));
  }
}

TEST(Exchange, Errors) {
  const auto st = annotate(uniform_state({q(0), q(1, 2)}, half(1)), RankingScheme(2));
  try {
    exchange(st, 0, 0);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::SameParticle);
  }
  try {
    exchange(st, 0, 7);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownIdentity);
  }
}

TEST(Pauli, IdenticalFermionsVanish) {
  RankingScheme s(3);
  s.set_sequence(1, {0});
  for (int ts : {1, 3, 5}) {
    const auto st = annotate(identical_pair(half(ts), half(ts), half(ts)), s);
    EXPECT_TRUE(pauli_check(st, 0, 1));
    const auto r = exchange(st, 0, 1).report;
    EXPECT_TRUE(r.self_mapped);
    EXPECT_TRUE(r.vanishes);

    // Any other state vector for the same state vanishes too.
    const std::size_t cyc[] = {0, 1, 2};
    const auto cyc_state = annotate(identical_pair(half(ts), half(ts), half(ts)),
                                    RankingScheme::cyclic(cyc, 3));
    const auto rc = exchange(cyc_state, 0, 1).report;
    EXPECT_TRUE(rc.self_mapped);
    EXPECT_EQ(rc.exchange_phase, Phase::minus_one());
  }
}

TEST(Pauli, BosonsAndDistinctFermionsDoNotVanish) {
  RankingScheme s(3);
  s.set_sequence(1, {0});
  for (int ts : {0, 2, 4}) {
    const auto st = annotate(identical_pair(half(ts), half(ts), half(ts)), s);
    EXPECT_FALSE(pauli_check(st, 0, 1));
    EXPECT_TRUE(exchange(st, 0, 1).report.self_mapped);
  }
  const auto st = annotate(identical_pair(half(1), half(1), half(-1)), s);
  EXPECT_FALSE(pauli_check(st, 0, 1));
  EXPECT_FALSE(exchange(st, 0, 1).report.self_mapped);
}

TEST(OddS, Exclusion) {
  using V = std::vector<HalfInt>;
  EXPECT_EQ(odd_s_exclusion(half(0)), V{});
  EXPECT_EQ(odd_s_exclusion(half(1)), V{half(2)});
  EXPECT_EQ(odd_s_exclusion(half(2)), V{half(2)});
  EXPECT_EQ(odd_s_exclusion(half(3)), (V{half(2), half(6)}));
  EXPECT_EQ(odd_s_exclusion(half(4)), (V{half(2), half(6)}));
  EXPECT_EQ(odd_s_exclusion(half(5)), (V{half(2), half(6), half(10)}));
  EXPECT_EQ(odd_s_exclusion(half(6)), (V{half(2), half(6), half(10)}));
  EXPECT_THROW(odd_s_exclusion(half(7)), Error);
}

TEST(StateProperty, ExchangePhasesMatchOracle) {
  Gen g(55);
  for (int n = 0; n < 1000; ++n) {
    const auto count = static_cast<std::size_t>(g.integer(2, 5));
    auto r = random_state(g, count, 4);
    const auto scheme = random_scheme(g, count, 3);
    auto st = annotate(r.state, scheme);
    std::vector<std::size_t> occ(count);
    for (std::size_t i = 0; i < count; ++i)
      occ[i] = i;
    const auto tm = twice(r.ms);
    const auto slots = slots_of(scheme);
    ASSERT_EQ(st.phase(), parity_phase(oracle::annotated_parity(r.phis, tm, slots, occ)));

    for (int step = 0; step < 4; ++step) {
      const auto a = static_cast<std::size_t>(g.integer(0, static_cast<int>(count) - 1));
      auto b = static_cast<std::size_t>(g.integer(0, static_cast<int>(count) - 2));
      if (b >= a)
        ++b;
      const int before = oracle::annotated_parity(r.phis, tm, slots, occ);
      const auto res = exchange(st, a, b);
      std::swap(*std::find(occ.begin(), occ.end(), a), *std::find(occ.begin(), occ.end(), b));
      const int after = oracle::annotated_parity(r.phis, tm, slots, occ);

      ASSERT_TRUE(res.report.exchange_phase.sign());
      EXPECT_EQ(res.report.exchange_phase, parity_phase(after - before));
      // Same phase from spins and winding deltas alone.
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < count; ++i)
        sum += r.spins[i].twice() * res.report.winding_deltas.n_per_particle[i];
      EXPECT_EQ(res.report.exchange_phase, parity_phase(sum));
      EXPECT_EQ(res.state.recompute_phase(), res.state.phase());
      for (std::size_t id : res.report.third_party_affected) {
        EXPECT_NE(id, a);
        EXPECT_NE(id, b);
        EXPECT_NE(res.report.winding_deltas.n_per_particle[id], 0);
      }
      // Involution.
      const auto back = exchange(res.state, a, b);
      EXPECT_EQ(back.state, st);
      EXPECT_EQ(res.report.exchange_phase * back.report.exchange_phase, Phase{});
      st = res.state;
    }
  }
}
