#include "bublz/analytics.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace bublz {

RegretProfile regret_profile(const TraceRecord& trace, const BoardBounds& bounds, Count start) {
  try {
    validate(trace.triplet);
    validate(bounds);
    if (!bounds.contains(trace.target)) throw InvalidTrace("target outside board bounds");
    return regret_profile(trace, DistanceToTarget(trace.triplet, bounds, trace.target), start);
  } catch (const InvalidArgument& e) {
    throw InvalidTrace(std::string("trace ") + trace.session + ": " + e.what());
  }
}

RegretProfile regret_profile(const TraceRecord& trace, const DistanceToTarget& dist,
                             Count start) {
  const auto fail = [&](const std::string& why) {
    throw InvalidTrace("trace " + trace.session + ": " + why);
  };
  if (dist.target() != trace.target) fail("distance table is for a different target");
  const BoardBounds& bounds = dist.bounds();
  if (!bounds.contains(start)) fail("start outside board bounds");

  const std::int64_t optimal = dist(start);
  if (optimal == kUnreachable) fail("target unreachable from start");
  if (trace.optimal != optimal)
    fail("recorded optimum " + std::to_string(trace.optimal) + " but the solver finds " +
         std::to_string(optimal));

  RegretProfile p;
  Count c = start;
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    const MoveRecord& m = trace.moves[i];
    if (c == trace.target) fail("moves continue after the target was reached");
    if (!is_legal(c, m.kind, trace.triplet, bounds))
      fail("move " + std::to_string(i + 1) + " (" + std::string(to_string(m.kind)) +
           ") is illegal at count " + std::to_string(c));
    const Count next = apply_delta(c, m.kind, trace.triplet);
    if (next != m.count)
      fail("move " + std::to_string(i + 1) + " records count " + std::to_string(m.count) +
           " but replay gives " + std::to_string(next));
    p.per_move_regret.push_back(1 + dist(next) - dist(c));
    c = next;
  }
  if (c != trace.target) fail("trace ends at " + std::to_string(c) + ", not on its target");

  p.total_regret = std::accumulate(p.per_move_regret.begin(), p.per_move_regret.end(),
                                   std::int64_t{0});
  p.efficiency = {optimal, static_cast<std::int64_t>(trace.moves.size())};
  return p;
}

namespace {

double mean(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());  // fixed summation order
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

Summary aggregate(const std::vector<TraceRecord>& traces, const BoardBounds& bounds,
                  Count start) {
  struct Acc {
    std::vector<double> efficiency, regret, moves, score, latency;
  };
  std::map<int, Acc> by_level;
  std::map<std::tuple<Count, Count, Count, Count>, DistanceToTarget> cache;

  for (const auto& t : traces) {
    const auto key = std::make_tuple(t.triplet.L, t.triplet.D, t.triplet.R, t.target);
    auto it = cache.find(key);
    if (it == cache.end()) {
      try {
        validate(t.triplet);
        if (!bounds.contains(t.target)) throw InvalidTrace("target outside board bounds");
        it = cache.emplace(key, DistanceToTarget(t.triplet, bounds, t.target)).first;
      } catch (const InvalidArgument& e) {
        throw InvalidTrace("trace " + t.session + ": " + e.what());
      }
    }
    const RegretProfile p = regret_profile(t, it->second, start);
    Acc& acc = by_level[t.level];
    acc.efficiency.push_back(p.efficiency.value());
    acc.regret.push_back(static_cast<double>(p.total_regret));
    acc.moves.push_back(static_cast<double>(t.moves.size()));
    acc.score.push_back(static_cast<double>(t.score));
    std::int64_t prev = 0;
    for (const auto& m : t.moves) {
      acc.latency.push_back(static_cast<double>(m.t_ms - prev));
      prev = m.t_ms;
    }
  }

  Summary s;
  for (const auto& [level, acc] : by_level) {
    s.levels.push_back({level, acc.efficiency.size(), mean(acc.efficiency),
                        median(acc.efficiency), mean(acc.regret), mean(acc.moves),
                        mean(acc.score), mean(acc.latency), median(acc.latency)});
  }
  return s;
}

}  // namespace bublz
