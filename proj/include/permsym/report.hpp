#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace permsym {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Markdown };
std::optional<Format> parse_format(std::string_view text);

/// Versioned report envelope around a command's results.
nlohmann::json make_report(std::string_view command, nlohmann::json inputs,
                           nlohmann::json results, bool exact);

/// Markdown view of a report. Every scalar is printed exactly as the JSON
/// serializer prints it, so both views carry the same numbers.
std::string render_markdown(const nlohmann::json &report);
std::string render(const nlohmann::json &report, Format format);

} // namespace permsym
