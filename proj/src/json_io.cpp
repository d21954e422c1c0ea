#include "bublz/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace bublz {

namespace {

void expect_fields(const Json& j, std::initializer_list<std::string_view> fields,
                   const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  std::set<std::string_view> wanted(fields);
  for (const auto& [key, _] : j.items())
    if (!wanted.contains(key)) throw FormatError(where + ": unknown field \"" + key + "\"");
  for (auto f : fields)
    if (!j.contains(std::string(f)))
      throw FormatError(where + ": missing field \"" + std::string(f) + "\"");
}

std::int64_t int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw FormatError(where + ": \"" + key + "\" must be an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw FormatError(where + ": \"" + key + "\" out of range");
  return v.get<std::int64_t>();
}

std::pair<std::int64_t, std::int64_t> int_pair(const Json& j, const char* key,
                                               const std::string& where) {
  const Json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw FormatError(where + ": \"" + key + "\" must be a pair of integers");
  return {v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
}

Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const ClickTriplet& t) { return Json::array({t.L, t.D, t.R}); }

ClickTriplet triplet_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3 ||
      !std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number_integer(); }))
    throw FormatError("triplet must be [L, D, R]");
  ClickTriplet t{j[0].get<Count>(), j[1].get<Count>(), j[2].get<Count>()};
  if (t.L < 1 || t.D < 1 || t.R < 1) throw FormatError("triplet components must be positive");
  return t;
}

Json to_json(const LevelSpec& level) {
  Json j;
  j["index"] = level.index;
  j["triplet"] = to_json(level.triplet);
  j["bounds"] = Json::array({level.bounds.min_count, level.bounds.max_count});
  j["targets"] = Json::array({level.targets.lo, level.targets.hi});
  j["scoring"] = {{"base", level.scoring.base_score},
                  {"penalty", level.scoring.penalty_per_extra_move},
                  {"floor", level.scoring.floor}};
  return j;
}

Json to_json(const Campaign& campaign) {
  Json levels = Json::array();
  for (const auto& l : campaign.levels) levels.push_back(to_json(l));
  return {{"seed", campaign.seed}, {"levels", std::move(levels)}};
}

std::string serialize_campaign(const Campaign& campaign) {
  return to_json(campaign).dump(2) + "\n";
}

Campaign parse_campaign(const std::string& text) {
  const Json doc = parse_text(text, "campaign");
  expect_fields(doc, {"seed", "levels"}, "campaign");
  if (!doc["seed"].is_number_unsigned())
    throw FormatError("campaign: \"seed\" must be an unsigned integer");
  if (!doc["levels"].is_array()) throw FormatError("campaign: \"levels\" must be an array");

  Campaign c;
  c.seed = doc["seed"].get<std::uint64_t>();
  std::size_t i = 0;
  for (const Json& lj : doc["levels"]) {
    const std::string where = "campaign level #" + std::to_string(++i);
    expect_fields(lj, {"index", "triplet", "bounds", "targets", "scoring"}, where);
    expect_fields(lj["scoring"], {"base", "penalty", "floor"}, where + " scoring");
    LevelSpec level;
    level.index = static_cast<int>(int_field(lj, "index", where));
    try {
      level.triplet = triplet_from_json(lj["triplet"]);
    } catch (const FormatError& e) {
      throw FormatError(where + ": " + e.what());
    }
    auto [bmin, bmax] = int_pair(lj, "bounds", where);
    auto [tlo, thi] = int_pair(lj, "targets", where);
    level.bounds = {bmin, bmax};
    level.targets = {tlo, thi};
    level.scoring = {int_field(lj["scoring"], "base", where),
                     int_field(lj["scoring"], "penalty", where),
                     int_field(lj["scoring"], "floor", where)};
    level.start_count = level.bounds.min_count;
    try {
      validate(level);
    } catch (const InvalidArgument& e) {
      throw FormatError(where + ": " + e.what());
    }
    c.levels.push_back(level);
  }
  return c;
}

Campaign load_campaign_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open campaign file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_campaign(buf.str());
}

Json to_json(const TraceRecord& t) {
  Json moves = Json::array();
  for (const auto& m : t.moves)
    moves.push_back({{"kind", std::string(to_string(m.kind))}, {"count", m.count}, {"t_ms", m.t_ms}});
  return {{"session", t.session}, {"level", t.level},        {"triplet", to_json(t.triplet)},
          {"target", t.target},   {"moves", std::move(moves)}, {"optimal", t.optimal},
          {"score", t.score}};
}

std::string serialize_trace(const TraceRecord& trace) { return to_json(trace).dump(); }

TraceRecord parse_trace(const std::string& line) {
  const Json j = parse_text(line, "trace");
  const std::string where = "trace";
  expect_fields(j, {"session", "level", "triplet", "target", "moves", "optimal", "score"}, where);
  if (!j["session"].is_string()) throw FormatError("trace: \"session\" must be a string");
  if (!j["moves"].is_array()) throw FormatError("trace: \"moves\" must be an array");
  TraceRecord t;
  t.session = j["session"].get<std::string>();
  t.level = static_cast<int>(int_field(j, "level", where));
  t.triplet = triplet_from_json(j["triplet"]);
  t.target = int_field(j, "target", where);
  t.optimal = int_field(j, "optimal", where);
  t.score = int_field(j, "score", where);
  for (const Json& mj : j["moves"]) {
    expect_fields(mj, {"kind", "count", "t_ms"}, "trace move");
    if (!mj["kind"].is_string()) throw FormatError("trace move: \"kind\" must be a string");
    auto kind = parse_move_kind(mj["kind"].get<std::string>());
    if (!kind) throw FormatError("trace move: unknown kind \"" + mj["kind"].get<std::string>() + "\"");
    t.moves.push_back({*kind, int_field(mj, "count", "trace move"), int_field(mj, "t_ms", "trace move")});
  }
  return t;
}

Json to_json(const ValidityReport& r) {
  Json j;
  j["triplet"] = to_json(r.triplet);
  j["gcd_ok"] = r.gcd_ok;
  j["bounded_ok"] = r.bounded_ok;
  j["playable"] = r.playable();
  j["unreachable_targets"] = r.unreachable_targets;
  if (r.hardest_target)
    j["hardest_target"] = {{"target", r.hardest_target->first}, {"n_min", r.hardest_target->second}};
  else
    j["hardest_target"] = nullptr;
  j["dead_ends"] = r.dead_ends;
  j["trap_states"] = r.trap_states;
  return j;
}

Json to_json(const SolveResult& r) {
  Json witness = Json::array();
  for (MoveKind k : r.witness) witness.push_back(std::string(to_string(k)));
  return {{"n_min", r.n_min},
          {"x", r.decomposition.x},
          {"y", r.decomposition.y},
          {"z", r.decomposition.z},
          {"witness", std::move(witness)},
          {"order_feasible", r.order_feasible}};
}

Json to_json(const RegretProfile& p) {
  return {{"per_move_regret", p.per_move_regret},
          {"total_regret", p.total_regret},
          {"efficiency", p.efficiency.value()},
          {"optimal_moves", p.efficiency.optimal},
          {"moves_made", p.efficiency.made}};
}

Json to_json(const Summary& s) {
  Json levels = Json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"level", l.level},
                      {"traces", l.traces},
                      {"mean_efficiency", l.mean_efficiency},
                      {"median_efficiency", l.median_efficiency},
                      {"mean_total_regret", l.mean_total_regret},
                      {"mean_moves", l.mean_moves},
                      {"mean_score", l.mean_score},
                      {"mean_move_latency_ms", l.mean_move_latency_ms},
                      {"median_move_latency_ms", l.median_move_latency_ms}});
  return {{"levels", std::move(levels)}};
}

Json to_json(const FeedbackReport& r) {
  return {{"moves_made", r.moves_made},
          {"optimal_moves", r.optimal_moves},
          {"score", r.score},
          {"target", r.target}};
}

}  // namespace bublz
