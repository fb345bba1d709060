// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "permsym/clebsch_gordan.hpp"
#include "permsym/csplab.hpp"
#include "permsym/geometry.hpp"
#include "permsym/ranking.hpp"
#include "permsym/statevec.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

using namespace permsym;
using namespace permsym::testing;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void criterion(const char *id, const char *title, double limit_ms,
               const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_ms <= 0 || ms < limit_ms;
  const bool ok = o.passed && in_time;
  failures += !ok;
  std::printf("%s %s  %s  [%s; %.2f ms", id, ok ? "PASS" : "FAIL", title, o.detail.c_str(), ms);
  if (limit_ms > 0)
    std::printf(" / limit %.0f ms%s", limit_ms, in_time ? "" : ", TOO SLOW");
  std::printf("]\n");
}

double circular_gap(double a, double b) {
  const double t = 2 * std::numbers::pi;
  const double d = std::fmod(std::abs(a - b), t);
  return std::min(d, t - d);
}

Outcome ac1() {
  Gen g(1001);
  int bad = 0, ties = 0;
  for (int n = 0; n < 500; ++n) {
    auto r = random_state(g, 2, 6, 5);
    // Particle j is the ranked one, i its predecessor; either identity.
    const std::size_t j = g.coin() ? 1 : 0, i = 1 - j;
    RankingScheme s(2);
    s.set_sequence(j, {i});
    const Phase got = exchange(annotate(r.state, s), i, j).report.exchange_phase;
    const bool j_first = oracle::d(r.phis, j, i) == 1;
    ties += r.phis[i] == r.phis[j];
    const Phase want = parity_phase(j_first ? r.spins[j].twice() : r.spins[i].twice());
    bad += !(got == want);
  }
  return {bad == 0, "500 configs, " + std::to_string(ties) + " ties, " + std::to_string(bad) +
                        " mismatches"};
}

SymmetricState identical_with_spectator(Gen &g, HalfInt s, HalfInt m) {
  const double th = g.real(0.2, 2.9), ph = g.real(0, 2 * std::numbers::pi);
  const Vec3 p = direction_from_angles(th, ph, kLab) * g.real(0.5, 5);
  const Vec3 spectator = direction_from_angles(g.real(0.2, 2.9), ph + g.real(0.5, 5.5), kLab);
  const std::vector<ParticleState> ps{
      {"Q", p, s, m}, {"Q", p, s, m}, {"X", spectator, half(0), half(0)}};
  return build_symmetric(ps, FrameKind::Helicity);
}

Outcome ac2() {
  Gen g(1002);
  int fermion_bad = 0, boson_bad = 0, total = 0;
  RankingScheme s(3);
  s.set_sequence(1, {0});
  for (int n = 0; n < 100; ++n) {
    const HalfInt sf = half(2 * g.integer(0, 3) + 1);
    const HalfInt sb = half(2 * g.integer(0, 3));
    const auto f = annotate(identical_with_spectator(g, sf, g.projection(sf)), s);
    const auto b = annotate(identical_with_spectator(g, sb, g.projection(sb)), s);
    fermion_bad += !exchange(f, 0, 1).report.vanishes;
    boson_bad += exchange(b, 0, 1).report.vanishes;
    total += 2;
  }
  return {fermion_bad == 0 && boson_bad == 0,
          std::to_string(total) + " pairs; fermions not vanishing: " +
              std::to_string(fermion_bad) + ", bosons vanishing: " + std::to_string(boson_bad)};
}

Outcome ac3() {
  bool ok = true;
  std::string detail;
  for (int ts : {1, 2, 3, 4}) {
    std::vector<HalfInt> want;
    for (int S = 1; S <= ts; S += 2)
      want.push_back(half(2 * S));
    const auto got = odd_s_exclusion(half(ts));
    ok = ok && got == want;
    // The ladder-built coefficients agree with Racah's closed form.
    for (int S = 0; S <= ts; ++S) {
      const CoupledMultiplet mult(half(ts), half(ts), half(2 * S));
      for (int m1 = -ts; m1 <= ts; m1 += 2)
        for (int m2 = -ts; m2 <= ts; m2 += 2)
          ok = ok && mult.coefficient(half(m1), half(m2)) ==
                         oracle::racah(ts, m1, ts, m2, 2 * S, m1 + m2);
    }
    detail += "s=" + half(ts).to_string() + ":{";
    for (std::size_t k = 0; k < got.size(); ++k)
      detail += (k ? "," : "") + got[k].to_string();
    detail += "} ";
  }
  detail.pop_back();
  return {ok, detail};
}

Outcome ac4() {
  Gen g(1004);
  int bad = 0, unsorted = 0;
  for (int n = 0; n < 100; ++n) {
    std::vector<Rational> phis{g.turn(8), g.turn(8), g.turn(8)};
    std::vector<HalfInt> spins, ms;
    for (int k = 0; k < 3; ++k) {
      spins.push_back(half(2 * g.integer(0, 2) + 1));
      ms.push_back(g.projection(spins.back()));
    }
    const auto built = try_angle_state(phis, spins, ms);
    if (!built) {
      --n; // momentum along the aggregate axis; draw again
      continue;
    }
    const SymmetricState &st = *built;
    const auto order = st.azimuths().order();
    unsorted += !std::is_sorted(order.begin(), order.end());
    const auto ann = annotate(st, build_ruleset_scheme(st));
    const auto table = phase_table(ann);
    for (const auto &s : table.singles)
      bad += !(s.phase == Phase::minus_one());
    for (const auto &d : table.doubles)
      bad += !(d.net == Phase{}) + !(d.direct_net == d.net);
  }
  return {bad == 0, "100 configs (" + std::to_string(unsorted) + " unsorted), " +
                        std::to_string(bad) + " wrong entries"};
}

Outcome ac5() {
  Gen g(1005);
  int bad = 0, rotated = 0;
  for (int n = 0; n < 50; ++n) {
    // Boson, fermion, boson in increasing φ^0.
    Rational a = g.turn(12), b = g.turn(12), c = g.turn(12);
    if (a == b || b == c || a == c)
      continue;
    std::vector<Rational> v{a, b, c};
    std::sort(v.begin(), v.end());
    const auto st = angle_state(v, {half(2 * g.integer(0, 2)), half(2 * g.integer(0, 2) + 1),
                                    half(2 * g.integer(0, 2))},
                                {half(0), half(1), half(0)});
    const auto before = boson_anomaly_check(st);
    bad += !(before.middle == 1 && before.anomalous && *before.phase == Phase::minus_one());
    // Turn the frame so the first boson wraps past zero: the fermion is
    // then first in the order and the anomaly must disappear.
    const Rational turn = (v[0] + v[1]) / 2;
    const auto after = boson_anomaly_check(st, TurnAngle::exact(turn));
    bad += !(after.middle != 1 && !after.anomalous && *after.phase == Phase{});
    ++rotated;
  }
  return {bad == 0 && rotated > 0, std::to_string(rotated) + " configs before and after rotation, " +
                                       std::to_string(bad) + " wrong"};
}

Outcome ac6() {
  bool ok = true;
  for (int sk : {1, 3, 5}) {
    const auto w = four_fermion_breakdown({half(1), half(1), half(sk), half(1)});
    ok = ok && w.net == winding_phase(half(sk), 1) && w.first == Phase::minus_one() &&
         w.violates_csp && w.matches_single_kl && w.annotation == Phase::minus_one();
  }
  const auto st = uniform_state({q(0), q(1, 4), q(1, 2), q(3, 4)}, half(1));
  const auto r = scheme_search(st, 1);
  ok = ok && r.hits.empty() && r.candidates == 256;
  return {ok, "double exchange net (-1)^{2s_k} for s_k=1/2,3/2,5/2; rank<=1 search: " +
                  std::to_string(r.hits.size()) + " of " + std::to_string(r.candidates)};
}

Outcome ac7() {
  const auto c = impossibility_search();
  bool relax = true;
  for (auto n : c.relaxed_satisfying)
    relax = relax && n > 0;
  return {c.rows.size() == 8 && c.satisfying == 0 && relax && c.parity_sum_contradiction,
          std::to_string(c.rows.size()) + " rows, " + std::to_string(c.satisfying) +
              " satisfying, relaxations " + std::to_string(c.relaxed_satisfying[0]) + "/" +
              std::to_string(c.relaxed_satisfying[1]) + "/" +
              std::to_string(c.relaxed_satisfying[2])};
}

Outcome ac8() {
  Gen g(1008);
  double worst_sum = 0, worst_phi = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto ps = random_momenta(g);
    const Vec3 k = aggregate_axis(ps);
    worst_sum = std::max(worst_sum, check_transverse_sum(ps, k));
    const Frame c = default_canonical_frame(k);
    std::vector<CanonicalAngles> angles;
    for (const auto &p : ps)
      angles.push_back(canonical_angles(p, c));
    for (std::size_t i = 0; i < ps.size(); ++i)
      worst_phi = std::max(worst_phi,
                           circular_gap(dependent_phi_radians(i, angles), angles[i].phi_radians));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "1000 configs, max transverse %.2e, max dphi %.2e", worst_sum,
                worst_phi);
  return {worst_sum < 1e-9 && worst_phi < 1e-9, buf};
}

Outcome ac9() {
  std::vector<Rational> t(5);
  std::size_t checked = 0, bad = 0, closed_agree = 0;
  for (int code = 0; code < 3125; ++code) {
    int c = code;
    std::vector<TurnAngle> a;
    for (auto &x : t) {
      x = make_rational(c % 5, 5);
      a.push_back(TurnAngle::exact(x));
      c /= 5;
    }
    const Rank0Azimuths az(a);
    for (std::size_t target = 0; target < 5; ++target) {
      std::vector<std::size_t> seq;
      std::function<void()> rec = [&] {
        if (!seq.empty()) {
          const auto direct = winding_number(target, seq, az);
          const auto angle = rank_n_phi(target, seq, az).winding;
          bad += direct != angle || Rational(direct) != oracle::chain_winding(t, target, seq);
          closed_agree += closed_form_winding(target, seq, az) == angle;
          ++checked;
        }
        if (seq.size() == 4)
          return;
        for (std::size_t x = 0; x < 5; ++x) {
          if (x == target || std::find(seq.begin(), seq.end(), x) != seq.end())
            continue;
          seq.push_back(x);
          rec();
          seq.pop_back();
        }
      };
      rec();
    }
  }
  return {bad == 0 && checked == 3125u * 5u * 64u,
          std::to_string(checked) + " (assignment, target, sequence) cases, " +
              std::to_string(bad) + " disagreements; first-to-target closed form agrees on " +
              std::to_string(closed_agree)};
}

} // namespace

int main() {
  criterion("AC1", "two-particle exchange phase", 1000, ac1);
  criterion("AC2", "Pauli vanishing", 0, ac2);
  criterion("AC3", "odd composite spin exclusion", 0, ac3);
  criterion("AC4", "three-fermion cyclic scheme", 0, ac4);
  criterion("AC5", "boson anomaly and its rotation", 0, ac5);
  criterion("AC6", "four-fermion breakdown", 0, ac6);
  criterion("AC7", "impossibility certificate", 10, ac7);
  criterion("AC8", "geometry suite", 5000, ac8);
  criterion("AC9", "winding oracle equivalence", 0, ac9);
  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
