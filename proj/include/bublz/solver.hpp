#pragma once

// Minimum-move solvers.
//
// solve_sequence is the gameplay ground truth: breadth-first search over the
// counts [min_count, max_count] with guard-checked edges. solve_ilp
// minimizes x + y + z subject to start + Lx + Dy - Rz = target over the
// non-negative integers, ignoring bounds and move order; it is a relaxation
// of the sequence problem, so its optimum never exceeds solve_sequence's.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "bublz/model.hpp"

namespace bublz {

struct Decomposition {
  std::int64_t x = 0;  // single left-clicks
  std::int64_t y = 0;  // double left-clicks
  std::int64_t z = 0;  // single right-clicks

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

Decomposition decompose(const std::vector<MoveKind>& moves);

struct SolveResult {
  std::int64_t n_min = 0;
  std::vector<MoveKind> witness;
  Decomposition decomposition;
  // Only meaningful for solve_ilp: whether the witness (all additions,
  // then all removals) replays legally on the board. Sequence witnesses are
  // always feasible.
  bool order_feasible = true;
};

/// Lexicographically-first shortest witness under SingleLeft < DoubleLeft <
/// SingleRight. std::nullopt means unreachable.
std::optional<SolveResult> solve_sequence(const ClickTriplet& triplet,
                                          const BoardBounds& bounds, Count start,
                                          Count target);

/// Default cap on N for solve_ilp.
constexpr std::int64_t default_search_cap(const BoardBounds& b) {
  return 4 * b.max_count;
}

/// Enumerates N = 0, 1, ..., search_cap and within each N the split with the
/// smallest x (then y); the witness orders additions before removals and is
/// checked against `bounds` for order_feasible. std::nullopt when no
/// solution exists with N <= search_cap.
std::optional<SolveResult> solve_ilp(const ClickTriplet& triplet,
                                           Count start, Count target,
                                           std::int64_t search_cap,
                                           const BoardBounds& bounds = {});

/// Replays `moves` from `start` through is_legal/apply_delta. Returns the
/// final count, or std::nullopt if any step is illegal.
std::optional<Count> replay(const ClickTriplet& triplet, const BoardBounds& bounds,
                            Count start, const std::vector<MoveKind>& moves);

inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

/// Minimum moves from every count in [min_count, max_count] to `target`
/// (backward BFS). Indexed by count - min_count; kUnreachable where no path.
class DistanceToTarget {
 public:
  DistanceToTarget(const ClickTriplet& triplet, const BoardBounds& bounds,
                   Count target);

  Count target() const { return target_; }
  const BoardBounds& bounds() const { return bounds_; }
  std::int64_t operator()(Count count) const;
  bool reachable_from(Count count) const { return (*this)(count) != kUnreachable; }

 private:
  BoardBounds bounds_;
  Count target_;
  std::vector<std::int64_t> dist_;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimalTable {
  LevelSpec level;
  std::map<Count, SolveResult> entries;

  /// Throws std::out_of_range for a target outside the table.
  std::int64_t n_min(Count target) const { return entries.at(target).n_min; }
};

/// One forward BFS from the level's start_count; throws SolverError if any
/// target is unreachable (the level should have failed validation).
OptimalTable optimal_table(const LevelSpec& level);

}  // namespace bublz
