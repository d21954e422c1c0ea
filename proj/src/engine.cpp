#include "bublz/engine.hpp"

#include <atomic>
#include <chrono>

namespace bublz {

std::string_view to_string(GuardKind kind) {
  switch (kind) {
    case GuardKind::BelowMin:
      return "below_min";
    case GuardKind::AboveMax:
      return "above_max";
    case GuardKind::SessionComplete:
      return "session_complete";
  }
  return "unknown";
}

std::string_view to_string(TransitionChoice choice) {
  switch (choice) {
    case TransitionChoice::RetrySameTarget:
      return "retry";
    case TransitionChoice::RepeatLevelNewTarget:
      return "repeat";
    case TransitionChoice::NextLevel:
      return "next";
  }
  return "unknown";
}

std::optional<TransitionChoice> parse_transition_choice(std::string_view name) {
  for (auto c : {TransitionChoice::RetrySameTarget, TransitionChoice::RepeatLevelNewTarget,
                 TransitionChoice::NextLevel})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string next_session_id() {
  static std::atomic<std::uint64_t> counter{0};
  return "s-" + std::to_string(++counter);
}

Session new_session(const LevelSpec& level, Count target, std::string id,
                    const OptimalTable* table) {
  validate(level);
  if (!level.targets.contains(target))
    throw GameError(GameErrorCode::TargetOutOfRange,
                    "target " + std::to_string(target) + " outside [" +
                        std::to_string(level.targets.lo) + ", " +
                        std::to_string(level.targets.hi) + "]");

  Session s;
  s.id = std::move(id);
  s.level = level;
  s.state = GameState{level.start_count, target, 0, level.start_count == target};
  s.status = s.state.complete ? SessionStatus::Complete : SessionStatus::InProgress;
  s.started_at_ms = wall_clock_ms();
  if (table != nullptr && table->level == level) {
    s.optimal_for_target = table->n_min(target);
  } else {
    auto r = solve_sequence(level.triplet, level.bounds, level.start_count, target);
    if (!r)
      throw SolverError("target " + std::to_string(target) + " unreachable on level " +
                        std::to_string(level.index));
    s.optimal_for_target = r->n_min;
  }
  return s;
}

Session new_session(const LevelSpec& level, TargetPicker& picker, std::string id,
                    const OptimalTable* table) {
  return new_session(level, picker.pick(), std::move(id), table);
}

std::vector<MoveKind> legal_moves(const Session& session) {
  std::vector<MoveKind> out;
  if (session.complete()) return out;
  const auto& lvl = session.level;
  for (MoveKind k : kAllMoves)
    if (is_legal(session.state.count, k, lvl.triplet, lvl.bounds)) out.push_back(k);
  return out;
}

namespace {

std::string range_text(const BoardBounds& b) {
  return std::to_string(b.min_count) + "-" + std::to_string(b.max_count);
}

}  // namespace

std::optional<GuardViolation> check_move(const Session& session, MoveKind kind) {
  if (session.complete())
    return GuardViolation{GuardKind::SessionComplete,
                          "This level is complete. Retry, repeat the level or move on."};
  const auto& lvl = session.level;
  const Count count = session.state.count;
  if (!is_legal(count, kind, lvl.triplet, lvl.bounds)) {
    if (kind == MoveKind::SingleRight)
      return GuardViolation{GuardKind::BelowMin,
                            "Invalid move: removing " + std::to_string(lvl.triplet.R) +
                                " bubbles would take the count outside the range " +
                                range_text(lvl.bounds) + "."};
    return GuardViolation{GuardKind::AboveMax,
                          "Invalid move: adding " +
                              std::to_string(apply_delta(0, kind, lvl.triplet)) +
                              " bubbles would take the count outside the range " +
                              range_text(lvl.bounds) + "."};
  }
  return std::nullopt;
}

void commit_move(Session& s, MoveKind kind, std::int64_t t_ms) {
  s.state.count = apply_delta(s.state.count, kind, s.level.triplet);
  s.state.moves_made += 1;
  s.history.push_back({kind, s.state.count, t_ms});
  if (s.state.count == s.state.target) {
    s.state.complete = true;
    s.status = SessionStatus::Complete;
  }
}

MoveOutcome apply_move(const Session& session, MoveKind kind, std::int64_t t_ms) {
  if (auto g = check_move(session, kind)) return *std::move(g);
  Session next = session;
  commit_move(next, kind, t_ms);
  return next;
}

MoveOutcome apply_move(const Session& session, MoveKind kind) {
  return apply_move(session, kind, wall_clock_ms() - session.started_at_ms);
}

FeedbackReport feedback(const Session& session) {
  if (!session.complete())
    throw GameError(GameErrorCode::NotComplete, "session " + session.id + " is not complete");
  return {session.state.moves_made, session.optimal_for_target,
          score(session.state.moves_made, session.optimal_for_target, session.level.scoring),
          session.state.target};
}

Session transition(const Session& session, TransitionChoice choice, const Campaign& campaign,
                   TargetPicker& picker, std::string id) {
  if (!session.complete())
    throw GameError(GameErrorCode::NotComplete, "session " + session.id + " is not complete");
  switch (choice) {
    case TransitionChoice::RetrySameTarget:
      return new_session(session.level, session.state.target, std::move(id));
    case TransitionChoice::RepeatLevelNewTarget:
      return new_session(session.level, picker, std::move(id));
    case TransitionChoice::NextLevel: {
      const int next_index = session.level.index + 1;
      for (const auto& level : campaign.levels)
        if (level.index == next_index) return new_session(level, picker, std::move(id));
      throw GameError(GameErrorCode::NoNextLevel,
                      "level " + std::to_string(session.level.index) + " is the last level");
    }
  }
  throw std::logic_error("unhandled transition choice");
}

bool history_consistent(const Session& session) {
  const auto& lvl = session.level;
  Count c = lvl.start_count;
  for (const auto& m : session.history) {
    if (c == session.state.target) return false;  // moved past completion
    if (!is_legal(c, m.kind, lvl.triplet, lvl.bounds)) return false;
    c = apply_delta(c, m.kind, lvl.triplet);
    if (c != m.count) return false;
  }
  return c == session.state.count &&
         static_cast<std::int64_t>(session.history.size()) == session.state.moves_made &&
         session.complete() == (c == session.state.target);
}

TraceRecord to_trace(const Session& session) {
  const FeedbackReport fb = feedback(session);
  return {session.id,       session.level.index, session.level.triplet, session.state.target,
          session.history, fb.optimal_moves,    fb.score};
}

}  // namespace bublz
