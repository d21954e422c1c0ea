#pragma once

// Session state machine: create, validate and apply moves, detect completion,
// score, and move between levels. Sessions are values; apply_move returns a
// new Session or the GuardViolation that rejected the move.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bublz/level_design.hpp"
#include "bublz/model.hpp"
#include "bublz/solver.hpp"

namespace bublz {

enum class SessionStatus : std::uint8_t { InProgress, Complete };

struct MoveRecord {
  MoveKind kind = MoveKind::SingleLeft;
  Count count = 0;         // count after the move
  std::int64_t t_ms = 0;   // milliseconds since the session started

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct Session {
  std::string id;
  LevelSpec level;
  GameState state;
  std::vector<MoveRecord> history;
  std::int64_t optimal_for_target = 0;
  SessionStatus status = SessionStatus::InProgress;
  std::int64_t started_at_ms = 0;  // wall clock, ms since epoch

  bool complete() const { return status == SessionStatus::Complete; }
  friend bool operator==(const Session&, const Session&) = default;
};

struct FeedbackReport {
  std::int64_t moves_made = 0;
  std::int64_t optimal_moves = 0;
  std::int64_t score = 0;
  Count target = 0;

  friend bool operator==(const FeedbackReport&, const FeedbackReport&) = default;
};

enum class GuardKind : std::uint8_t { BelowMin, AboveMax, SessionComplete };

std::string_view to_string(GuardKind kind);  // "below_min", ...

struct GuardViolation {
  GuardKind kind = GuardKind::BelowMin;
  std::string message;

  friend bool operator==(const GuardViolation&, const GuardViolation&) = default;
};

enum class GameErrorCode : std::uint8_t { TargetOutOfRange, NotComplete, NoNextLevel };

class GameError : public std::runtime_error {
 public:
  GameError(GameErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GameErrorCode code() const { return code_; }

 private:
  GameErrorCode code_;
};

std::int64_t wall_clock_ms();

/// Process-unique opaque id ("s-1", "s-2", ...).
std::string next_session_id();

/// Fresh session at start_count. optimal_for_target comes from `table` when
/// given (it must belong to `level`), otherwise from solve_sequence.
/// Throws GameError{TargetOutOfRange}, or SolverError if the target cannot be
/// reached at all.
Session new_session(const LevelSpec& level, Count target, std::string id = next_session_id(),
                    const OptimalTable* table = nullptr);
Session new_session(const LevelSpec& level, TargetPicker& picker,
                    std::string id = next_session_id(), const OptimalTable* table = nullptr);

/// Empty once complete; otherwise every kind for which is_legal holds, in
/// kAllMoves order.
std::vector<MoveKind> legal_moves(const Session& session);

using MoveOutcome = std::variant<Session, GuardViolation>;

/// t_ms stamps the history entry; the two-argument overload uses wall-clock
/// time since the session started.
MoveOutcome apply_move(const Session& session, MoveKind kind, std::int64_t t_ms);
MoveOutcome apply_move(const Session& session, MoveKind kind);

/// The guard alone: nullopt when `kind` is legal now.
std::optional<GuardViolation> check_move(const Session& session, MoveKind kind);
/// In-place form for long-running drivers; the move must have passed
/// check_move.
void commit_move(Session& session, MoveKind kind, std::int64_t t_ms);

/// Throws GameError{NotComplete} while in progress.
FeedbackReport feedback(const Session& session);

enum class TransitionChoice : std::uint8_t { RetrySameTarget, RepeatLevelNewTarget, NextLevel };

std::string_view to_string(TransitionChoice choice);  // "retry" | "repeat" | "next"
std::optional<TransitionChoice> parse_transition_choice(std::string_view name);

/// Throws GameError{NotComplete} or GameError{NoNextLevel}. RepeatLevelNewTarget
/// draws uniformly and may draw the same target again.
Session transition(const Session& session, TransitionChoice choice, const Campaign& campaign,
                   TargetPicker& picker, std::string id = next_session_id());

/// Replays the history from start_count; true iff every step is legal, each
/// recorded count matches, and the final count and moves_made agree with the
/// state.
bool history_consistent(const Session& session);

/// One line of the trace log.
struct TraceRecord {
  std::string session;
  int level = 1;
  ClickTriplet triplet;
  Count target = 0;
  std::vector<MoveRecord> moves;
  std::int64_t optimal = 0;
  std::int64_t score = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Throws GameError{NotComplete}.
TraceRecord to_trace(const Session& session);

}  // namespace bublz
