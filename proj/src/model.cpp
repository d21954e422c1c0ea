#include "bublz/model.hpp"

#include <algorithm>

namespace bublz {

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::SingleLeft:
      return "single_left";
    case MoveKind::DoubleLeft:
      return "double_left";
    case MoveKind::SingleRight:
      return "single_right";
  }
  return "unknown";
}

std::optional<MoveKind> parse_move_kind(std::string_view name) {
  for (MoveKind k : kAllMoves)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

void validate(const ClickTriplet& t) {
  if (t.L < 1 || t.D < 1 || t.R < 1)
    throw InvalidArgument("triplet components must be positive");
}

void validate(const BoardBounds& b) {
  if (b.min_count < 1) throw InvalidArgument("min_count must be >= 1");
  if (b.max_count <= b.min_count)
    throw InvalidArgument("max_count must exceed min_count");
}

void validate(const TargetRange& r, const BoardBounds& b) {
  if (r.lo > r.hi) throw InvalidArgument("target range is empty");
  if (r.lo <= b.min_count || r.hi > b.max_count)
    throw InvalidArgument("target range must lie in (min_count, max_count]");
}

void validate(const ScoringRule& s) {
  if (s.base_score <= 0) throw InvalidArgument("base_score must be positive");
  if (s.penalty_per_extra_move <= 0)
    throw InvalidArgument("penalty must be positive");
  if (s.floor < 0) throw InvalidArgument("score floor must be >= 0");
}

void validate(const LevelSpec& level) {
  if (level.index < 1) throw InvalidArgument("level index is 1-based");
  validate(level.triplet);
  if (level.triplet.D <= level.triplet.L)
    throw InvalidArgument("level triplet must satisfy D > L");
  validate(level.bounds);
  validate(level.targets, level.bounds);
  validate(level.scoring);
  if (!level.bounds.contains(level.start_count))
    throw InvalidArgument("start_count outside board bounds");
}

LevelSpec make_level(int index, ClickTriplet triplet, BoardBounds bounds,
                     TargetRange targets, ScoringRule scoring,
                     Count start_count) {
  LevelSpec level{index, triplet, bounds, targets, scoring, start_count};
  validate(level);
  return level;
}

std::int64_t score(std::int64_t moves_made, std::int64_t optimal_moves,
                   const ScoringRule& rule) {
  if (optimal_moves < 0) throw std::logic_error("negative optimal move count");
  if (moves_made < optimal_moves)
    throw std::logic_error("moves_made below the optimum: solver is not optimal");
  const std::int64_t extra = moves_made - optimal_moves;
  return std::max(rule.floor, rule.base_score - rule.penalty_per_extra_move * extra);
}

}  // namespace bublz
