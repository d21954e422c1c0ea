#pragma once

// Domain types and move arithmetic shared by every other module.
// Bubbles are modeled as a count; nothing here does I/O or draws randomness.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bublz {

using Count = std::int64_t;

enum class MoveKind : std::uint8_t { SingleLeft, DoubleLeft, SingleRight };

// Expansion order used wherever moves are enumerated (BFS tie-breaking,
// greedy policies). Changing it changes every witness.
inline constexpr std::array<MoveKind, 3> kAllMoves{
    MoveKind::SingleLeft, MoveKind::DoubleLeft, MoveKind::SingleRight};

/// Wire name: "single_left", "double_left" or "single_right".
std::string_view to_string(MoveKind kind);
std::optional<MoveKind> parse_move_kind(std::string_view name);

/// Move magnitudes of a level. Deliberately unchecked beyond positivity so
/// the validator can reason about arbitrary triplets; D > L is a LevelSpec
/// invariant.
struct ClickTriplet {
  Count L = 0;  // bubbles created by a single left-click
  Count D = 0;  // bubbles created by a double left-click
  Count R = 0;  // bubbles removed by a single right-click

  friend bool operator==(const ClickTriplet&, const ClickTriplet&) = default;
};

struct BoardBounds {
  Count min_count = 1;
  Count max_count = 150;

  bool contains(Count c) const { return min_count <= c && c <= max_count; }
  Count size() const { return max_count - min_count + 1; }

  friend bool operator==(const BoardBounds&, const BoardBounds&) = default;
};

/// Inclusive on both ends.
struct TargetRange {
  Count lo = 2;
  Count hi = 70;

  bool contains(Count t) const { return lo <= t && t <= hi; }
  Count size() const { return hi - lo + 1; }

  friend bool operator==(const TargetRange&, const TargetRange&) = default;
};

struct ScoringRule {
  std::int64_t base_score = 1000;
  std::int64_t penalty_per_extra_move = 10;
  std::int64_t floor = 0;

  friend bool operator==(const ScoringRule&, const ScoringRule&) = default;
};

struct GameState {
  Count count = 1;
  Count target = 0;
  std::int64_t moves_made = 0;
  bool complete = false;

  friend bool operator==(const GameState&, const GameState&) = default;
};

/// Thrown when a domain value violates its invariants.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const ClickTriplet& t);
void validate(const BoardBounds& b);
void validate(const TargetRange& r, const BoardBounds& b);
void validate(const ScoringRule& s);

struct LevelSpec {
  int index = 1;
  ClickTriplet triplet;
  BoardBounds bounds;
  TargetRange targets;
  ScoringRule scoring;
  Count start_count = 1;

  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

/// Checks the structural invariants (D > L, ranges nested in bounds, start
/// on the board). Playability is a level-design concern and is not checked.
void validate(const LevelSpec& level);

/// Builds and validates a level; throws InvalidArgument.
LevelSpec make_level(int index, ClickTriplet triplet, BoardBounds bounds = {},
                     TargetRange targets = {}, ScoringRule scoring = {},
                     Count start_count = 1);

constexpr Count apply_delta(Count count, MoveKind kind, const ClickTriplet& t) {
  switch (kind) {
    case MoveKind::SingleLeft:
      return count + t.L;
    case MoveKind::DoubleLeft:
      return count + t.D;
    case MoveKind::SingleRight:
      return count - t.R;
  }
  return count;
}

// A right-click needs count > R, and whatever survives must stay on the
// board. Additions may land exactly on max_count.
constexpr bool is_legal(Count count, MoveKind kind, const ClickTriplet& t,
                        const BoardBounds& b) {
  switch (kind) {
    case MoveKind::SingleLeft:
      return count + t.L <= b.max_count;
    case MoveKind::DoubleLeft:
      return count + t.D <= b.max_count;
    case MoveKind::SingleRight:
      return count > t.R && count - t.R >= b.min_count;
  }
  return false;
}

/// max(floor, base - penalty * (moves_made - optimal_moves)).
/// Throws std::logic_error if moves_made < optimal_moves: the "optimum" was
/// beaten, so the solver is wrong.
std::int64_t score(std::int64_t moves_made, std::int64_t optimal_moves,
                   const ScoringRule& rule = {});

}  // namespace bublz
