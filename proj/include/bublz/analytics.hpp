#pragma once

// Distance of a play trace from ideal play.
//
// With d(s) the minimum number of moves from count s to the target, the move
// s_{i-1} -> s_i costs regret 1 + d(s_i) - d(s_{i-1}). A legal move can lower
// d by at most one, so regret is never negative and is zero exactly on moves
// an ideal player could have made. The sum telescopes to
// moves_made - d(start) = moves_made - optimal.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bublz/engine.hpp"

namespace bublz {

class InvalidTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Efficiency {
  std::int64_t optimal = 0;
  std::int64_t made = 0;

  double value() const { return made == 0 ? 1.0 : static_cast<double>(optimal) / made; }
  friend bool operator==(const Efficiency&, const Efficiency&) = default;
};

struct RegretProfile {
  std::vector<std::int64_t> per_move_regret;
  std::int64_t total_regret = 0;
  Efficiency efficiency;
};

/// Replays the trace on `bounds` from `start`. Throws InvalidTrace when a
/// move is illegal, a recorded count disagrees with the replay, the trace
/// does not end on its target (or continues past it), or the recorded
/// optimum is not the true one.
RegretProfile regret_profile(const TraceRecord& trace, const BoardBounds& bounds = {},
                             Count start = 1);

/// Same, reusing a precomputed distance function for the trace's target.
RegretProfile regret_profile(const TraceRecord& trace, const DistanceToTarget& dist,
                             Count start = 1);

struct LevelSummary {
  int level = 0;
  std::size_t traces = 0;
  double mean_efficiency = 0.0;
  double median_efficiency = 0.0;
  double mean_total_regret = 0.0;
  double mean_moves = 0.0;
  double mean_score = 0.0;
  // Gaps between consecutive move timestamps (the first gap is measured from
  // session start). Zero when no moves carry time.
  double mean_move_latency_ms = 0.0;
  double median_move_latency_ms = 0.0;
};

struct Summary {
  std::vector<LevelSummary> levels;  // ascending level index
  bool empty() const { return levels.empty(); }
};

/// Per-level statistics; independent of input order. Throws InvalidTrace on
/// the first invalid trace.
Summary aggregate(const std::vector<TraceRecord>& traces, const BoardBounds& bounds = {},
                  Count start = 1);

}  // namespace bublz
