#pragma once

#include "permsym/config.hpp"
#include "permsym/csplab.hpp"
#include "permsym/error.hpp"
#include "permsym/tolerances.hpp"

#include <json.hpp>

#include <functional>
#include <string_view>

namespace permsym {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int validation = 2;
inline constexpr int geometry = 3;
inline constexpr int budget = 4;
} // namespace exit_code

int exit_code_for(const Error &e);

struct CommandOutput {
  nlohmann::json report;
  int exit_code = exit_code::ok;
};

/// Geometry and ranking invariants on the configured state, with residuals.
CommandOutput cmd_verify(const ParticleConfig &config, const Tolerances &tol = {});
/// `pair` is "a,b" in particle ids.
CommandOutput cmd_exchange(const ParticleConfig &config, std::string_view pair,
                           const Tolerances &tol = {});
/// Phase table under the config's scheme, or the rule-derived one if none.
CommandOutput cmd_csp(const ParticleConfig &config, const Tolerances &tol = {});
CommandOutput cmd_impossibility();
CommandOutput cmd_search(const ParticleConfig &config, std::size_t max_rank,
                         const SearchOptions &options = {}, const Tolerances &tol = {});

/// Runs `body`, turning a library Error into an error report and its exit code.
CommandOutput run_guarded(std::string_view command, const std::function<CommandOutput()> &body);

} // namespace permsym
