#include "bublz/solver.hpp"

#include <algorithm>
#include <deque>

namespace bublz {

namespace {

// Forward BFS tree rooted at `start`. Moves are expanded in kAllMoves order
// and a node keeps its first-discovered parent, which makes the recovered
// path the lexicographically smallest among shortest paths.
struct ForwardTree {
  BoardBounds bounds;
  std::vector<std::int64_t> dist;
  std::vector<Count> parent;
  std::vector<MoveKind> via;

  std::size_t slot(Count c) const { return static_cast<std::size_t>(c - bounds.min_count); }

  std::optional<SolveResult> path_to(Count target) const {
    if (!bounds.contains(target) || dist[slot(target)] == kUnreachable)
      return std::nullopt;
    SolveResult r;
    r.n_min = dist[slot(target)];
    for (Count c = target; dist[slot(c)] > 0; c = parent[slot(c)])
      r.witness.push_back(via[slot(c)]);
    std::reverse(r.witness.begin(), r.witness.end());
    r.decomposition = decompose(r.witness);
    return r;
  }
};

ForwardTree bfs_from(const ClickTriplet& t, const BoardBounds& b, Count start) {
  validate(t);
  validate(b);
  if (!b.contains(start)) throw InvalidArgument("start outside board bounds");
  const auto n = static_cast<std::size_t>(b.size());
  ForwardTree tree{b, std::vector<std::int64_t>(n, kUnreachable),
                   std::vector<Count>(n, 0), std::vector<MoveKind>(n, MoveKind::SingleLeft)};
  std::deque<Count> queue{start};
  tree.dist[tree.slot(start)] = 0;
  while (!queue.empty()) {
    const Count c = queue.front();
    queue.pop_front();
    for (MoveKind k : kAllMoves) {
      if (!is_legal(c, k, t, b)) continue;
      const Count next = apply_delta(c, k, t);
      auto& d = tree.dist[tree.slot(next)];
      if (d != kUnreachable) continue;
      d = tree.dist[tree.slot(c)] + 1;
      tree.parent[tree.slot(next)] = c;
      tree.via[tree.slot(next)] = k;
      queue.push_back(next);
    }
  }
  return tree;
}

}  // namespace

Decomposition decompose(const std::vector<MoveKind>& moves) {
  Decomposition d;
  for (MoveKind k : moves) {
    switch (k) {
      case MoveKind::SingleLeft: ++d.x; break;
      case MoveKind::DoubleLeft: ++d.y; break;
      case MoveKind::SingleRight: ++d.z; break;
    }
  }
  return d;
}

std::optional<SolveResult> solve_sequence(const ClickTriplet& triplet,
                                          const BoardBounds& bounds, Count start,
                                          Count target) {
  if (!bounds.contains(target)) throw InvalidArgument("target outside board bounds");
  return bfs_from(triplet, bounds, start).path_to(target);
}

std::optional<Count> replay(const ClickTriplet& triplet, const BoardBounds& bounds,
                            Count start, const std::vector<MoveKind>& moves) {
  Count c = start;
  for (MoveKind k : moves) {
    if (!is_legal(c, k, triplet, bounds)) return std::nullopt;
    c = apply_delta(c, k, triplet);
  }
  return c;
}

std::optional<SolveResult> solve_ilp(const ClickTriplet& triplet, Count start,
                                           Count target, std::int64_t search_cap,
                                           const BoardBounds& bounds) {
  validate(triplet);
  if (target < 1) throw InvalidArgument("target must be positive");
  if (search_cap < 0) throw InvalidArgument("search_cap must be non-negative");
  const auto [L, D, R] = triplet;
  const Count gap = target - start;
  // With z = N - x - y the constraint is linear in y for fixed (N, x):
  //   (D + R) y = gap + R N - (L + R) x
  // so each (N, x) has at most one candidate y.
  for (std::int64_t N = 0; N <= search_cap; ++N) {
    for (std::int64_t x = 0; x <= N; ++x) {
      const std::int64_t rhs = gap + R * N - (L + R) * x;
      if (rhs < 0 || rhs % (D + R) != 0) continue;
      const std::int64_t y = rhs / (D + R);
      if (x + y > N) continue;
      const std::int64_t z = N - x - y;
      SolveResult r;
      r.n_min = N;
      r.decomposition = {x, y, z};
      r.witness.insert(r.witness.end(), static_cast<std::size_t>(x), MoveKind::SingleLeft);
      r.witness.insert(r.witness.end(), static_cast<std::size_t>(y), MoveKind::DoubleLeft);
      r.witness.insert(r.witness.end(), static_cast<std::size_t>(z), MoveKind::SingleRight);
      r.order_feasible =
          bounds.contains(start) && replay(triplet, bounds, start, r.witness) == target;
      return r;
    }
  }
  return std::nullopt;
}

DistanceToTarget::DistanceToTarget(const ClickTriplet& triplet, const BoardBounds& bounds,
                                   Count target)
    : bounds_(bounds), target_(target) {
  validate(triplet);
  validate(bounds);
  if (!bounds.contains(target)) throw InvalidArgument("target outside board bounds");
  const auto n = static_cast<std::size_t>(bounds.size());
  auto slot = [&](Count c) { return static_cast<std::size_t>(c - bounds.min_count); };

  std::vector<std::vector<Count>> preds(n);
  for (Count c = bounds.min_count; c <= bounds.max_count; ++c)
    for (MoveKind k : kAllMoves)
      if (is_legal(c, k, triplet, bounds)) preds[slot(apply_delta(c, k, triplet))].push_back(c);

  dist_.assign(n, kUnreachable);
  dist_[slot(target)] = 0;
  std::deque<Count> queue{target};
  while (!queue.empty()) {
    const Count c = queue.front();
    queue.pop_front();
    for (Count p : preds[slot(c)]) {
      if (dist_[slot(p)] != kUnreachable) continue;
      dist_[slot(p)] = dist_[slot(c)] + 1;
      queue.push_back(p);
    }
  }
}

std::int64_t DistanceToTarget::operator()(Count count) const {
  if (!bounds_.contains(count)) return kUnreachable;
  return dist_[static_cast<std::size_t>(count - bounds_.min_count)];
}

OptimalTable optimal_table(const LevelSpec& level) {
  validate(level);
  const ForwardTree tree = bfs_from(level.triplet, level.bounds, level.start_count);
  OptimalTable table{level, {}};
  for (Count t = level.targets.lo; t <= level.targets.hi; ++t) {
    auto r = tree.path_to(t);
    if (!r)
      throw SolverError("target " + std::to_string(t) + " unreachable on level " +
                        std::to_string(level.index));
    table.entries.emplace(t, std::move(*r));
  }
  return table;
}

}  // namespace bublz
