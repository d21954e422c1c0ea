#include "bublz/level_design.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "bublz/solver.hpp"

namespace bublz {

bool check_gcd_validity(const ClickTriplet& triplet) {
  validate(triplet);
  return std::gcd(std::gcd(triplet.L, triplet.D), triplet.R) == 1;
}

ValidityReport check_bounded_playability(const ClickTriplet& triplet,
                                         const BoardBounds& bounds, Count start,
                                         const TargetRange& targets) {
  validate(triplet);
  validate(bounds);
  if (!bounds.contains(start)) throw InvalidArgument("start outside board bounds");
  if (targets.lo > targets.hi || !bounds.contains(targets.lo) || !bounds.contains(targets.hi))
    throw InvalidArgument("target range must lie on the board");

  ValidityReport report;
  report.triplet = triplet;
  report.gcd_ok = check_gcd_validity(triplet);

  // Forward reachable set from the start.
  std::vector<Count> reachable;
  {
    std::vector<bool> seen(static_cast<std::size_t>(bounds.size()), false);
    std::vector<Count> stack{start};
    seen[static_cast<std::size_t>(start - bounds.min_count)] = true;
    while (!stack.empty()) {
      const Count c = stack.back();
      stack.pop_back();
      reachable.push_back(c);
      for (MoveKind k : kAllMoves) {
        if (!is_legal(c, k, triplet, bounds)) continue;
        const Count next = apply_delta(c, k, triplet);
        auto slot = static_cast<std::size_t>(next - bounds.min_count);
        if (!seen[slot]) {
          seen[slot] = true;
          stack.push_back(next);
        }
      }
    }
    std::sort(reachable.begin(), reachable.end());
  }

  for (Count c : reachable) {
    const bool any = std::any_of(kAllMoves.begin(), kAllMoves.end(),
                                 [&](MoveKind k) { return is_legal(c, k, triplet, bounds); });
    if (!any) report.dead_ends.push_back(c);
  }

  std::set<Count> traps;
  for (Count t = targets.lo; t <= targets.hi; ++t) {
    const DistanceToTarget dist(triplet, bounds, t);
    const std::int64_t n = dist(start);
    if (n == kUnreachable) {
      report.unreachable_targets.push_back(t);
    } else if (!report.hardest_target || n > report.hardest_target->second) {
      report.hardest_target = {t, n};
    }
    for (Count c : reachable)
      if (!dist.reachable_from(c)) traps.insert(c);
  }
  report.trap_states.assign(traps.begin(), traps.end());
  report.bounded_ok = report.unreachable_targets.empty();
  return report;
}

ValidityReport check_level(const LevelSpec& level) {
  return check_bounded_playability(level.triplet, level.bounds, level.start_count,
                                   level.targets);
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

TargetPicker::TargetPicker(std::uint64_t seed, TargetRange range)
    : range_(range), rng_(seed) {
  if (range.lo > range.hi) throw InvalidArgument("target range is empty");
}

Count TargetPicker::pick() { return uniform_int(rng_, range_.lo, range_.hi); }

Count pick_target(TargetPicker& picker) { return picker.pick(); }

const LevelSpec& Campaign::level(int index) const {
  for (const auto& l : levels)
    if (l.index == index) return l;
  throw std::out_of_range("no level " + std::to_string(index) + " in campaign");
}

Campaign generate_campaign(std::uint64_t seed, int n_levels, const BoardBounds& bounds,
                           const TargetRange& targets, const ScoringRule& scoring,
                           const CampaignOptions& options) {
  if (n_levels < 1) throw InvalidArgument("a campaign needs at least one level");
  validate(bounds);
  validate(targets, bounds);
  validate(scoring);
  if (options.band_lo < 3 || options.band_hi < options.band_lo || options.band_step < 1)
    throw InvalidArgument("magnitude bands must start at 3 or more and grow");

  std::mt19937_64 rng(seed);
  Campaign campaign{seed, {}};
  for (int i = 1; i <= n_levels; ++i) {
    const Count lo = options.band_lo + options.band_step * (i - 1);
    const Count hi = options.band_hi + options.band_step * (i - 1);
    bool found = false;
    for (int attempt = 0; attempt < options.max_rejections && !found; ++attempt) {
      // D is the largest component because D > L > R.
      ClickTriplet t;
      t.D = uniform_int(rng, lo, hi);
      t.L = uniform_int(rng, 2, t.D - 1);
      t.R = uniform_int(rng, 1, t.L - 1);
      if (!check_gcd_validity(t)) continue;
      if (t.D + bounds.min_count > bounds.max_count) continue;
      if (!check_bounded_playability(t, bounds, bounds.min_count, targets).playable()) continue;
      campaign.levels.push_back(make_level(i, t, bounds, targets, scoring, bounds.min_count));
      found = true;
    }
    if (!found)
      throw GenerationExhausted("no valid triplet found for level " + std::to_string(i) +
                                " in magnitude band [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  return campaign;
}

namespace {
Count magnitude(const ClickTriplet& t) { return std::max({t.L, t.D, t.R}); }
}  // namespace

std::vector<std::string> campaign_problems(const Campaign& campaign) {
  std::vector<std::string> problems;
  if (campaign.levels.empty()) problems.emplace_back("campaign has no levels");
  for (std::size_t i = 0; i < campaign.levels.size(); ++i) {
    const LevelSpec& level = campaign.levels[i];
    const std::string tag = "level " + std::to_string(level.index) + ": ";
    if (level.index != static_cast<int>(i) + 1)
      problems.push_back(tag + "levels must be numbered 1..n in order");
    try {
      validate(level);
    } catch (const InvalidArgument& e) {
      problems.push_back(tag + e.what());
      continue;
    }
    const ValidityReport r = check_level(level);
    if (!r.gcd_ok) problems.push_back(tag + "gcd(L, D, R) != 1");
    if (!r.bounded_ok)
      problems.push_back(tag + std::to_string(r.unreachable_targets.size()) +
                         " unreachable targets");
    if (!r.dead_ends.empty()) problems.push_back(tag + "reachable dead-end states");
    if (!r.trap_states.empty()) problems.push_back(tag + "reachable trap states");
    if (i > 0 && magnitude(level.triplet) < magnitude(campaign.levels[i - 1].triplet))
      problems.push_back(tag + "triplet magnitude decreases");
  }
  if (campaign.levels.size() >= 2 &&
      magnitude(campaign.levels.back().triplet) == magnitude(campaign.levels.front().triplet))
    problems.emplace_back("triplet magnitude never increases");
  return problems;
}

}  // namespace bublz
