#include "rbsc/render.hpp"

#include <json.hpp>

namespace rbsc {

namespace {

std::string spaced(const std::vector<std::size_t>& ids) {
  std::string out;
  for (auto id : ids) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id);
  }
  return out;
}

std::string line(const std::string& key, const std::string& value) {
  return value.empty() ? key + "\n" : key + " " + value + "\n";
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json" || s == "json-lines") return Format::JsonLines;
  throw UsageError("unknown format '" + s + "'");
}

std::string render_solution(const Solution& s, Format f, std::optional<std::uint64_t> nodes) {
  const bool yes = s.verdict == Verdict::Yes;
  if (f == Format::JsonLines) {
    nlohmann::ordered_json j;
    j["verdict"] = yes ? "yes" : "no";
    j["reds"] = s.red_count;
    j["objects"] = s.chosen;
    j["covered_reds"] = s.covered_reds;
    if (nodes) j["nodes"] = *nodes;
    if (s.optimum) j["optimum"] = *s.optimum;
    return j.dump() + "\n";
  }
  std::string out = line("verdict", yes ? "yes" : "no");
  out += line("reds", std::to_string(s.red_count));
  out += line("objects", spaced(s.chosen));
  out += line("covered_reds", spaced(s.covered_reds));
  if (nodes) out += line("nodes", std::to_string(*nodes));
  if (s.optimum) out += line("optimum", std::to_string(*s.optimum));
  return out;
}

std::string render_trace(const KernelTrace& t, Format f) {
  if (f == Format::Text) return t.render();
  std::string out;
  for (const auto& s : t.steps) {
    nlohmann::ordered_json j;
    j["step"] = rule_name(s.rule);
    if (s.delta) j["delta"] = *s.delta;
    j["forced"] = s.forced_objects;
    j["removed_pts"] = s.removed_points;
    j["removed_objs"] = s.removed_objects;
    j["kr-"] = s.budget_decrement;
    out += j.dump() + "\n";
  }
  return out;
}

std::string render_bounds(const BoundReport& b, Format f) {
  if (f == Format::Text) return b.render();
  std::string out;
  for (const auto& l : b.lines) {
    nlohmann::ordered_json j;
    j["bound"] = l.name;
    j["actual"] = l.actual.get_str();
    j["limit"] = l.limit.get_str();
    j["ok"] = l.ok();
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace rbsc
