#pragma once

#include "permsym/geometry.hpp"
#include "permsym/ranking.hpp"
#include "permsym/statevec.hpp"
#include "permsym/tolerances.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace permsym {

/// Direction given as canonical angles; the azimuth is an exact turn.
struct AngleKinematics {
  double theta = 0.0;
  Rational phi_turns = 0;
  friend bool operator==(const AngleKinematics &, const AngleKinematics &) = default;
};

struct ParticleSpec {
  std::string id;
  std::string label; ///< "Q"
  std::variant<Vec3, AngleKinematics> kinematics;
  HalfInt spin;
  HalfInt projection;
  friend bool operator==(const ParticleSpec &, const ParticleSpec &) = default;
};

struct FrameSpec {
  Vec3 z;
  Vec3 x;
  friend bool operator==(const FrameSpec &, const FrameSpec &) = default;
};

using SchemeSpec = std::map<std::string, std::vector<std::string>>;

struct ParticleConfig {
  std::vector<ParticleSpec> particles;
  std::optional<SchemeSpec> scheme;
  std::optional<FrameSpec> canonical_frame;
  FrameKind frame = FrameKind::Canonical;

  bool angle_mode() const;
  friend bool operator==(const ParticleConfig &, const ParticleConfig &) = default;
};

/// Field-level validation; throws Error(Validation) naming the field.
ParticleConfig parse_config(const nlohmann::json &doc);
/// As parse_config, reporting JSON syntax errors with line and column.
ParticleConfig parse_config_text(std::string_view text);
ParticleConfig load_config(const std::filesystem::path &path);

nlohmann::json to_json(const ParticleConfig &config);

/// A config turned into library objects. Identities follow list order.
struct Instance {
  ParticleConfig config;
  std::vector<std::string> ids;
  std::vector<Vec3> momenta;
  Frame canonical;
  SymmetricState state;
  RankingScheme scheme;

  std::size_t identity_of(std::string_view id) const;
  nlohmann::json scheme_json(const RankingScheme &s) const;
};

Instance instantiate(const ParticleConfig &config, const Tolerances &tol = {});

} // namespace permsym
