#include "permsym/commands.hpp"

#include "permsym/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace permsym {

using nlohmann::json;

int exit_code_for(const Error &e) {
  if (e.kind() == ErrorKind::BudgetExceeded)
    return exit_code::budget;
  if (e.is_geometric())
    return exit_code::geometry;
  return exit_code::validation;
}

namespace {

json phase_json(const Phase &p) { return p.to_string(); }

json optional_phase_json(const std::optional<Phase> &p) {
  return p ? json(p->to_string()) : json(nullptr);
}

/// Transposition rendered with its ids in sorted order, for stable output.
std::string pair_name(const Instance &in, const Transposition &t) {
  auto a = in.ids[t.a], b = in.ids[t.b];
  if (b < a)
    std::swap(a, b);
  return a + "," + b;
}

json particles_json(const Instance &in) {
  json arr = json::array();
  std::vector<std::size_t> by_id(in.ids.size());
  for (std::size_t i = 0; i < by_id.size(); ++i)
    by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return in.ids[a] < in.ids[b]; });
  for (std::size_t i : by_id) {
    const auto &p = in.state.particle(i);
    arr.push_back({{"id", in.ids[i]},
                   {"Q", p.state.label},
                   {"s", p.state.spin.to_string()},
                   {"m", p.state.projection.to_string()},
                   {"fermion", p.state.is_fermion()},
                   {"phi0", p.phi0.to_string()},
                   {"phi0_exact", p.phi0.is_exact()},
                   {"order_position", in.state.azimuths().position(i)}});
  }
  return arr;
}

json windings_json(const Instance &in, const WindingVector &w) {
  json out = json::object();
  for (std::size_t i = 0; i < w.n_per_particle.size(); ++i)
    out[in.ids[i]] = w.n_per_particle[i];
  return out;
}

json ids_json(const Instance &in, std::vector<std::size_t> identities) {
  std::vector<std::string> names;
  for (std::size_t i : identities)
    names.push_back(in.ids[i]);
  std::sort(names.begin(), names.end());
  return names;
}

bool all_exact(const Instance &in) { return in.state.azimuths().all_exact(); }

struct Check {
  std::string name;
  bool passed;
  double residual;
  double threshold;
  bool informational = false;
  std::string detail = {};
};

json check_json(const Check &c) {
  json j = {{"name", c.name},         {"passed", c.passed},
            {"residual", c.residual}, {"threshold", c.threshold},
            {"informational", c.informational}};
  if (!c.detail.empty())
    j["detail"] = c.detail;
  return j;
}

double circular_gap(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

} // namespace

CommandOutput cmd_verify(const ParticleConfig &config, const Tolerances &tol) {
  const Instance in = instantiate(config, tol);
  std::vector<Check> checks;

  const Vec3 k = aggregate_axis(in.momenta, tol);
  checks.push_back({"aggregate_axis_nonzero", k.norm() > tol.geometric, k.norm(),
                    tol.geometric, false, "norm of the unnormalized axis"});
  checks.push_back({"canonical_frame_orthonormal",
                    in.canonical.orthonormality_residual() < tol.geometric,
                    in.canonical.orthonormality_residual(), tol.geometric});
  const double align = (in.canonical.z_axis - k.normalized()).norm();
  checks.push_back({"canonical_z_along_aggregate_axis", align < tol.geometric, align,
                    tol.geometric, config.angle_mode(),
                    config.angle_mode() ? "declared angles define the azimuths" : ""});

  const double transverse = check_transverse_sum(in.momenta, k);
  checks.push_back({"transverse_sum_zero", transverse < tol.geometric, transverse,
                    tol.geometric});

  // Each azimuth from the others, measured in the frame built about k.
  const Frame about_k = default_canonical_frame(k, tol);
  std::vector<CanonicalAngles> angles;
  for (const auto &p : in.momenta)
    angles.push_back(canonical_angles(p, about_k, tol));
  double worst_dep = 0.0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    try {
      const double dep = dependent_phi_radians(i, angles, tol);
      worst_dep = std::max(worst_dep, circular_gap(dep, angles[i].phi_radians));
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::IndeterminatePhi)
        throw;
      ++skipped;
    }
  }
  checks.push_back({"dependent_phi_matches", worst_dep < tol.geometric, worst_dep,
                    tol.geometric, false,
                    skipped ? std::to_string(skipped) + " particle(s) indeterminate" : ""});

  double worst_pair = 0.0;
  for (std::size_t i = 0; i < in.momenta.size(); ++i)
    for (std::size_t j = i + 1; j < in.momenta.size(); ++j) {
      try {
        worst_pair = std::max(
            worst_pair, std::abs(pair_azimuth_difference(in.momenta[i], in.momenta[j], tol) -
                                 std::numbers::pi));
      } catch (const Error &e) {
        if (!e.is_geometric())
          throw;
      }
    }
  checks.push_back({"pair_azimuths_opposite", worst_pair < tol.geometric, worst_pair,
                    tol.geometric});

  // Reversing the particle list must not move the axis or any azimuth.
  std::vector<Vec3> reversed(in.momenta.rbegin(), in.momenta.rend());
  const Vec3 k_rev = aggregate_axis(reversed, tol);
  const Frame rev_frame = default_canonical_frame(k_rev, tol);
  double worst_order = (k - k_rev).norm();
  for (std::size_t i = 0; i < reversed.size(); ++i) {
    const auto a = canonical_angles(reversed[i], rev_frame, tol);
    worst_order =
        std::max(worst_order,
                 circular_gap(a.phi_radians, angles[angles.size() - 1 - i].phi_radians));
  }
  checks.push_back({"list_order_independent", worst_order < tol.geometric, worst_order,
                    tol.geometric});

  if (config.scheme) {
    const auto &az = in.state.azimuths();
    std::int64_t mismatches = 0;
    for (std::size_t t = 0; t < in.scheme.size(); ++t) {
      const auto seq = in.scheme.sequence(t);
      if (seq.empty())
        continue;
      const auto ranked = rank_n_phi(t, seq, az);
      const auto direct = winding_number(t, seq, az);
      const auto split = winding_split(t, seq, az);
      if (ranked.winding != direct || split.odd_term + split.order_term != direct ||
          split.odd_term % 2 == 0)
        ++mismatches;
    }
    checks.push_back({"winding_routes_agree", mismatches == 0,
                      static_cast<double>(mismatches), 0.0, false,
                      "angle-chain vs order-bit windings"});
  }

  bool ok = true;
  json arr = json::array();
  for (const auto &c : checks) {
    arr.push_back(check_json(c));
    if (!c.informational && !c.passed)
      ok = false;
  }
  json results = {{"checks", arr}, {"passed", ok}, {"particles", particles_json(in)},
                  {"aggregate_axis", {k.x, k.y, k.z}}};
  if (config.scheme)
    results["windings"] = windings_json(in, scheme_windings(in.scheme, in.state.azimuths()));
  return {make_report("verify", to_json(config), std::move(results), all_exact(in)),
          ok ? exit_code::ok : exit_code::check_failed};
}

CommandOutput cmd_exchange(const ParticleConfig &config, std::string_view pair,
                           const Tolerances &tol) {
  const auto comma = pair.find(',');
  if (comma == std::string_view::npos)
    throw Error(ErrorKind::Validation, "--pair: expected two ids as \"a,b\"");
  const Instance in = instantiate(config, tol);
  const std::size_t a = in.identity_of(pair.substr(0, comma));
  const std::size_t b = in.identity_of(pair.substr(comma + 1));

  const AnnotatedState before = annotate(in.state, in.scheme);
  const ExchangeResult r = exchange(before, a, b);

  json deltas = json::object();
  for (std::size_t i = 0; i < r.report.winding_deltas.n_per_particle.size(); ++i)
    deltas[in.ids[i]] = r.report.winding_deltas.n_per_particle[i];

  json after_scheme = json::object();
  for (std::size_t i = 0; i < in.ids.size(); ++i) {
    const auto seq = r.state.effective_sequence(i);
    if (seq.empty())
      continue;
    json preds = json::array();
    for (std::size_t q : seq)
      preds.push_back(in.ids[q]);
    after_scheme[in.ids[i]] = std::move(preds);
  }

  json results = {
      {"pair", {in.ids[a], in.ids[b]}},
      {"kind", std::string(to_string(pair_kind(in.state, a, b)))},
      {"scheme", in.scheme_json(in.scheme)},
      {"windings_before", windings_json(in, before.windings())},
      {"windings_after", windings_json(in, r.state.windings())},
      {"phase_before", phase_json(before.phase())},
      {"phase_after", phase_json(r.state.phase())},
      {"exchange_phase", phase_json(r.report.exchange_phase)},
      {"winding_deltas", deltas},
      {"third_party_affected", ids_json(in, r.report.third_party_affected)},
      {"effective_scheme_after", after_scheme},
      {"self_mapped", r.report.self_mapped},
      {"vanishes", r.report.vanishes},
      {"particles", particles_json(in)},
  };
  json inputs = to_json(config);
  inputs["pair"] = std::string(pair);
  return {make_report("exchange", std::move(inputs), std::move(results),
                      r.report.exchange_phase.is_exact()),
          exit_code::ok};
}

CommandOutput cmd_csp(const ParticleConfig &config, const Tolerances &tol) {
  const Instance in = instantiate(config, tol);
  const bool from_rules = !config.scheme.has_value();
  const RankingScheme scheme = from_rules ? build_ruleset_scheme(in.state) : in.scheme;
  const AnnotatedState st = annotate(in.state, scheme);
  const PhaseTable table = phase_table(st);
  const CspVerdict verdict = evaluate_csp(table, st);

  auto expected_ok = [](const std::optional<Phase> &want, const Phase &got) -> json {
    if (!want)
      return nullptr;
    return *want == got;
  };

  std::vector<std::pair<std::string, json>> singles;
  for (const auto &s : table.singles) {
    const auto want = csp_expected(s.kind);
    singles.emplace_back(pair_name(in, s.pair),
                         json{{"pair", pair_name(in, s.pair)},
                              {"kind", std::string(to_string(s.kind))},
                              {"phase", phase_json(s.phase)},
                              {"expected", optional_phase_json(want)},
                              {"ok", expected_ok(want, s.phase)}});
  }
  std::sort(singles.begin(), singles.end(),
            [](const auto &x, const auto &y) { return x.first < y.first; });

  std::vector<std::pair<std::string, json>> doubles;
  for (const auto &d : table.doubles) {
    const auto k1 = pair_kind(in.state, d.first.a, d.first.b);
    const auto k2 = pair_kind(in.state, d.second.a, d.second.b);
    std::optional<Phase> want;
    if (auto e1 = csp_expected(k1), e2 = csp_expected(k2); e1 && e2)
      want = *e1 * *e2;
    const std::string key = pair_name(in, d.first) + " then " + pair_name(in, d.second);
    doubles.emplace_back(key, json{{"first", pair_name(in, d.first)},
                                   {"second", pair_name(in, d.second)},
                                   {"first_phase", phase_json(d.first_phase)},
                                   {"second_phase", phase_json(d.second_phase)},
                                   {"net", phase_json(d.net)},
                                   {"direct_net", phase_json(d.direct_net)},
                                   {"expected", optional_phase_json(want)},
                                   {"ok", expected_ok(want, d.net)}});
  }
  std::sort(doubles.begin(), doubles.end(),
            [](const auto &x, const auto &y) { return x.first < y.first; });

  json singles_arr = json::array(), doubles_arr = json::array();
  for (auto &[_, j] : singles)
    singles_arr.push_back(std::move(j));
  for (auto &[_, j] : doubles)
    doubles_arr.push_back(std::move(j));

  bool exact = true;
  for (const auto &s : table.singles)
    exact = exact && s.phase.is_exact();

  json results = {{"scheme_source", from_rules ? "rules" : "config"},
                  {"scheme", in.scheme_json(scheme)},
                  {"windings", windings_json(in, st.windings())},
                  {"annotation_phase", phase_json(st.phase())},
                  {"singles", singles_arr},
                  {"doubles", doubles_arr},
                  {"verdict",
                   {{"singles_ok", verdict.singles_ok},
                    {"doubles_ok", verdict.doubles_ok},
                    {"mixed_stable", verdict.mixed_stable},
                    {"emulates", verdict.emulates()}}},
                  {"particles", particles_json(in)}};
  return {make_report("csp", to_json(config), std::move(results), exact), exit_code::ok};
}

CommandOutput cmd_impossibility() {
  const ImpossibilityCertificate cert = impossibility_search();
  json rows = json::array();
  for (const auto &r : cert.rows) {
    rows.push_back({{"parity_i", r.bits[0]},
                    {"parity_j", r.bits[1]},
                    {"parity_k", r.bits[2]},
                    {"differences", r.differences},
                    {"condition_1", r.conditions[0]},
                    {"condition_2", r.conditions[1]},
                    {"condition_3", r.conditions[2]},
                    {"phase_conditions", r.phase_conditions},
                    {"all", r.all()}});
  }
  json results = {{"assignments_enumerated", cert.assignments_enumerated},
                  {"consistent_rows", cert.rows.size()},
                  {"satisfying", cert.satisfying},
                  {"relaxed_satisfying",
                   {{"without_condition_1", cert.relaxed_satisfying[0]},
                    {"without_condition_2", cert.relaxed_satisfying[1]},
                    {"without_condition_3", cert.relaxed_satisfying[2]}}},
                  {"parity_sum_contradiction", cert.parity_sum_contradiction},
                  {"rows", rows}};
  return {make_report("impossibility", json::object(), std::move(results), true),
          exit_code::ok};
}

CommandOutput cmd_search(const ParticleConfig &config, std::size_t max_rank,
                         const SearchOptions &options, const Tolerances &tol) {
  const Instance in = instantiate(config, tol);
  const SearchResult r = scheme_search(in.state, max_rank, options);
  json hits = json::array();
  for (const auto &h : r.hits)
    hits.push_back({{"scheme", in.scheme_json(h.scheme)}, {"mixed_stable", h.mixed_stable}});
  json results = {{"max_rank", r.max_rank},
                  {"candidates", r.candidates},
                  {"count", r.hits.size()},
                  {"any_mixed_stable", r.any_mixed_stable},
                  {"hits", hits},
                  {"particles", particles_json(in)}};
  json inputs = to_json(config);
  inputs["max_rank"] = max_rank;
  inputs["budget"] = options.budget;
  return {make_report("search", std::move(inputs), std::move(results), all_exact(in)),
          exit_code::ok};
}

CommandOutput run_guarded(std::string_view command, const std::function<CommandOutput()> &body) {
  try {
    return body();
  } catch (const Error &e) {
    const int code = exit_code_for(e);
    json results = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
                    {"exit_code", code}};
    return {make_report(command, json::object(), std::move(results), true), code};
  }
}

} // namespace permsym
