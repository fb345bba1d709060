#include "permsym/config.hpp"

#include "permsym/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace permsym {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &field, const std::string &msg) {
  throw Error(ErrorKind::Validation, field + ": " + msg);
}

Vec3 parse_vec3(const json &j, const std::string &field) {
  if (!j.is_array() || j.size() != 3)
    fail(field, "expected an array of three numbers");
  for (const auto &c : j)
    if (!c.is_number())
      fail(field, "expected an array of three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string parse_string(const json &obj, const char *key, const std::string &field,
                         bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required)
      fail(field + "." + key, "missing");
    return {};
  }
  if (!it->is_string())
    fail(field + "." + key, "expected a string");
  return it->get<std::string>();
}

HalfInt parse_half(const json &obj, const char *key, const std::string &field) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(field + "." + key, "missing");
  std::optional<HalfInt> h;
  if (it->is_string())
    h = HalfInt::parse(it->get<std::string>());
  else if (it->is_number_integer())
    h = HalfInt::from_int(it->get<int>());
  if (!h)
    fail(field + "." + key, "expected an integer or half-integer such as \"3/2\"");
  return *h;
}

json vec_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

} // namespace

bool ParticleConfig::angle_mode() const {
  return !particles.empty() &&
         std::holds_alternative<AngleKinematics>(particles.front().kinematics);
}

ParticleConfig parse_config(const json &doc) {
  if (!doc.is_object())
    fail("config", "expected a JSON object");
  ParticleConfig cfg;
  auto parts = doc.find("particles");
  if (parts == doc.end() || !parts->is_array())
    fail("particles", "expected an array");
  if (parts->size() < 2)
    fail("particles", "at least two particles are required");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < parts->size(); ++i) {
    const json &pj = (*parts)[i];
    const std::string field = "particles[" + std::to_string(i) + "]";
    if (!pj.is_object())
      fail(field, "expected an object");
    ParticleSpec spec;
    spec.id = parse_string(pj, "id", field);
    if (spec.id.empty())
      fail(field + ".id", "must not be empty");
    if (!seen.insert(spec.id).second)
      fail(field + ".id", "duplicate id '" + spec.id + "'");
    spec.label = parse_string(pj, "Q", field, false);

    auto p = pj.find("p");
    if (p == pj.end())
      fail(field + ".p", "missing");
    if (p->is_array()) {
      spec.kinematics = parse_vec3(*p, field + ".p");
    } else if (p->is_object()) {
      AngleKinematics a;
      auto th = p->find("theta");
      if (th == p->end() || !th->is_number())
        fail(field + ".p.theta", "expected a number (radians)");
      a.theta = th->get<double>();
      auto ph = p->find("phi_turns");
      std::optional<Rational> r;
      if (ph != p->end() && ph->is_string())
        r = parse_rational(ph->get<std::string>());
      else if (ph != p->end() && ph->is_number_integer())
        r = make_rational(ph->get<std::int64_t>());
      if (!r)
        fail(field + ".p.phi_turns", "expected an exact rational such as \"3/8\"");
      a.phi_turns = *r;
      spec.kinematics = a;
    } else {
      fail(field + ".p", "expected [x, y, z] or {theta, phi_turns}");
    }
    spec.spin = parse_half(pj, "s", field);
    spec.projection = parse_half(pj, "m", field);
    if (!is_valid_spin(spec.spin))
      fail(field + ".s", "spin of particle '" + spec.id + "' is negative");
    if (!is_valid_projection(spec.spin, spec.projection))
      fail(field + ".m", "projection " + spec.projection.to_string() +
                             " is not allowed for spin " + spec.spin.to_string() +
                             " of particle '" + spec.id + "'");
    if (i > 0 && spec.kinematics.index() != cfg.particles.front().kinematics.index())
      fail(field + ".p", "all particles must use the same kinematics form");
    cfg.particles.push_back(std::move(spec));
  }

  if (auto s = doc.find("scheme"); s != doc.end() && !s->is_null()) {
    if (!s->is_object())
      fail("scheme", "expected an object mapping ids to predecessor lists");
    SchemeSpec scheme;
    for (auto it = s->begin(); it != s->end(); ++it) {
      const std::string field = "scheme." + it.key();
      if (!seen.count(it.key()))
        fail(field, "unknown particle id '" + it.key() + "'");
      if (!it->is_array())
        fail(field, "expected an array of particle ids");
      std::vector<std::string> preds;
      for (const auto &q : *it) {
        if (!q.is_string() || !seen.count(q.get<std::string>()))
          fail(field, "predecessors must be known particle ids");
        preds.push_back(q.get<std::string>());
      }
      scheme[it.key()] = std::move(preds);
    }
    cfg.scheme = std::move(scheme);
  }

  if (auto f = doc.find("canonical_frame"); f != doc.end() && !f->is_null()) {
    if (!f->is_object())
      fail("canonical_frame", "expected {\"z\": [...], \"x\": [...]}");
    FrameSpec fs;
    fs.z = parse_vec3(f->value("z", json()), "canonical_frame.z");
    fs.x = parse_vec3(f->value("x", json()), "canonical_frame.x");
    cfg.canonical_frame = fs;
  }

  if (auto f = doc.find("frame"); f != doc.end()) {
    std::optional<FrameKind> k;
    if (f->is_string())
      k = parse_frame_kind(f->get<std::string>());
    if (!k)
      fail("frame", "expected \"helicity\", \"aggregate\" or \"canonical\"");
    cfg.frame = *k;
  }
  return cfg;
}

ParticleConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorKind::Validation, "config line " + std::to_string(line) +
                                           ", column " + std::to_string(col) +
                                           ": malformed JSON");
  }
  return parse_config(doc);
}

ParticleConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Validation, "cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

json to_json(const ParticleConfig &config) {
  json doc;
  doc["particles"] = json::array();
  for (const auto &p : config.particles) {
    json pj;
    pj["id"] = p.id;
    pj["Q"] = p.label;
    if (const auto *v = std::get_if<Vec3>(&p.kinematics))
      pj["p"] = vec_json(*v);
    else {
      const auto &a = std::get<AngleKinematics>(p.kinematics);
      pj["p"] = {{"theta", a.theta}, {"phi_turns", format_rational(a.phi_turns)}};
    }
    pj["s"] = p.spin.to_string();
    pj["m"] = p.projection.to_string();
    doc["particles"].push_back(std::move(pj));
  }
  if (config.scheme)
    doc["scheme"] = *config.scheme;
  if (config.canonical_frame)
    doc["canonical_frame"] = {{"z", vec_json(config.canonical_frame->z)},
                              {"x", vec_json(config.canonical_frame->x)}};
  doc["frame"] = std::string(to_string(config.frame));
  return doc;
}

// ------------------------------------------------------------------ Instance

std::size_t Instance::identity_of(std::string_view id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end())
    throw Error(ErrorKind::UnknownIdentity, "no particle with id '" + std::string(id) + "'");
  return static_cast<std::size_t>(it - ids.begin());
}

json Instance::scheme_json(const RankingScheme &s) const {
  json out = json::object();
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s.sequence(t).empty())
      continue;
    json preds = json::array();
    for (std::size_t q : s.sequence(t))
      preds.push_back(ids[q]);
    out[ids[t]] = std::move(preds);
  }
  return out;
}

Instance instantiate(const ParticleConfig &config, const Tolerances &tol) {
  const Frame lab{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::optional<Frame> explicit_frame;
  if (config.canonical_frame)
    explicit_frame = frame_from_zx(config.canonical_frame->z, config.canonical_frame->x, tol);

  std::vector<std::string> ids;
  std::vector<ParticleState> states;
  std::vector<TurnAngle> phi0;
  std::vector<Vec3> momenta;
  for (const auto &spec : config.particles) {
    ids.push_back(spec.id);
    Vec3 p;
    if (const auto *v = std::get_if<Vec3>(&spec.kinematics)) {
      p = *v;
    } else {
      const auto &a = std::get<AngleKinematics>(spec.kinematics);
      const TurnAngle phi = TurnAngle::exact(a.phi_turns);
      p = direction_from_angles(a.theta, phi.radians(), explicit_frame.value_or(lab));
      phi0.push_back(phi);
    }
    momenta.push_back(p);
    states.push_back({spec.label, p, spec.spin, spec.projection, config.frame});
  }

  const Vec3 k = aggregate_axis(momenta, tol);
  Frame canonical;
  if (config.angle_mode()) {
    canonical = explicit_frame.value_or(lab);
  } else if (explicit_frame) {
    if ((explicit_frame->z_axis - k.normalized()).norm() > tol.geometric)
      throw Error(ErrorKind::Validation,
                  "canonical_frame.z: must point along the aggregate axis");
    canonical = *explicit_frame;
  } else {
    canonical = default_canonical_frame(k, tol);
  }

  auto state = config.angle_mode()
                   ? build_symmetric(states, config.frame, canonical,
                                     std::span<const TurnAngle>(phi0), tol)
                   : build_symmetric(states, config.frame, canonical, std::nullopt, tol);

  RankingScheme scheme(ids.size());
  if (config.scheme) {
    auto index = [&](const std::string &id) {
      return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto &[target, preds] : *config.scheme) {
      std::vector<std::size_t> seq;
      for (const auto &q : preds)
        seq.push_back(index(q));
      try {
        scheme.set_sequence(index(target), std::move(seq));
      } catch (const Error &e) {
        throw Error(ErrorKind::Validation, "scheme." + target + ": " + e.what());
      }
    }
  }
  return Instance{config, std::move(ids), std::move(momenta), canonical, std::move(state),
                  std::move(scheme)};
}

} // namespace permsym
