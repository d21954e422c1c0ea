#pragma once

// JSON interchange: campaign files, trace-log lines, and machine-readable
// reports. Parsers are strict: every field is mandatory and unknown fields
// are rejected.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bublz/analytics.hpp"
#include "bublz/engine.hpp"
#include "bublz/level_design.hpp"
#include "bublz/solver.hpp"

namespace bublz {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const LevelSpec& level);
Json to_json(const Campaign& campaign);
/// Two-space indented document with a trailing newline.
std::string serialize_campaign(const Campaign& campaign);
/// Throws FormatError on malformed JSON, missing or unknown fields, or
/// values that violate LevelSpec invariants. Playability is not checked.
Campaign parse_campaign(const std::string& text);
Campaign load_campaign_file(const std::string& path);

Json to_json(const TraceRecord& trace);
/// Single line, no trailing newline.
std::string serialize_trace(const TraceRecord& trace);
TraceRecord parse_trace(const std::string& line);

Json to_json(const ValidityReport& report);
Json to_json(const SolveResult& result);
Json to_json(const RegretProfile& profile);
Json to_json(const Summary& summary);
Json to_json(const FeedbackReport& report);

Json to_json(const ClickTriplet& t);
/// Accepts [L, D, R] with positive integers.
ClickTriplet triplet_from_json(const Json& j);

}  // namespace bublz
