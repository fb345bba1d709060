#include "permsym/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace permsym {

using nlohmann::json;

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json")
    return Format::Json;
  if (text == "markdown" || text == "md")
    return Format::Markdown;
  return std::nullopt;
}

json make_report(std::string_view command, json inputs, json results, bool exact) {
  json r;
  r["schema"] = "permsym.report";
  r["schema_version"] = kSchemaVersion;
  r["tool_version"] = std::string(kToolVersion);
  r["command"] = std::string(command);
  r["exact"] = exact;
  r["inputs"] = std::move(inputs);
  r["results"] = std::move(results);
  return r;
}

namespace {

std::string scalar(const json &v) {
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

bool is_scalar(const json &v) { return !v.is_object() && !v.is_array(); }

std::string inline_value(const json &v) {
  if (is_scalar(v))
    return scalar(v);
  // Small nested values stay on one line, in JSON form.
  return v.dump();
}

bool is_table(const json &arr) {
  if (!arr.is_array() || arr.empty())
    return false;
  for (const auto &row : arr) {
    if (!row.is_object())
      return false;
    for (const auto &[k, v] : row.items())
      if (v.is_object())
        return false;
  }
  return true;
}

std::string cell(const json &v) {
  std::string s = inline_value(v);
  std::string out;
  for (char c : s)
    out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out;
}

void render_value(std::ostringstream &out, const std::string &key, const json &v, int depth);

void render_object(std::ostringstream &out, const json &obj, int depth) {
  for (const auto &[k, v] : obj.items())
    if (is_scalar(v) || (v.is_array() && !is_table(v) &&
                         std::all_of(v.begin(), v.end(), [](const json &e) { return is_scalar(e); })))
      out << "- **" << k << "**: " << inline_value(v) << "\n";
  for (const auto &[k, v] : obj.items())
    if (!(is_scalar(v) || (v.is_array() && !is_table(v) &&
                           std::all_of(v.begin(), v.end(),
                                       [](const json &e) { return is_scalar(e); }))))
      render_value(out, k, v, depth);
}

void render_value(std::ostringstream &out, const std::string &key, const json &v, int depth) {
  out << "\n" << std::string(static_cast<std::size_t>(std::min(depth, 6)), '#') << " " << key
      << "\n\n";
  if (is_table(v)) {
    std::vector<std::string> cols;
    std::set<std::string> seen;
    for (const auto &row : v)
      for (const auto &[k, _] : row.items())
        if (seen.insert(k).second)
          cols.push_back(k);
    out << "|";
    for (const auto &c : cols)
      out << " " << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << "---|";
    out << "\n";
    for (const auto &row : v) {
      out << "|";
      for (const auto &c : cols)
        out << " " << (row.contains(c) ? cell(row[c]) : std::string()) << " |";
      out << "\n";
    }
  } else if (v.is_object()) {
    render_object(out, v, depth + 1);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (is_scalar(v[i]) || v[i].is_array())
        out << "- " << inline_value(v[i]) << "\n";
      else
        render_value(out, key + "[" + std::to_string(i) + "]", v[i], depth + 1);
    }
  } else {
    out << inline_value(v) << "\n";
  }
}

} // namespace

std::string render_markdown(const json &report) {
  std::ostringstream out;
  out << "# permsym " << report.value("command", std::string("report")) << "\n\n";
  for (const char *k : {"schema", "schema_version", "tool_version", "exact"})
    if (report.contains(k))
      out << "- **" << k << "**: " << scalar(report[k]) << "\n";
  for (const auto &[k, v] : report.items()) {
    if (k == "schema" || k == "schema_version" || k == "tool_version" || k == "exact" ||
        k == "command")
      continue;
    render_value(out, k, v, 2);
  }
  return out.str();
}

std::string render(const json &report, Format format) {
  if (format == Format::Markdown)
    return render_markdown(report);
  return report.dump(2) + "\n";
}

} // namespace permsym
