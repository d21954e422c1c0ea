#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bublz/model.hpp"

namespace bublz {

/// gcd(L, D, R) == 1.
///
/// The set {Lx + Dy - Rz : x, y, z >= 0} is exactly the set of multiples of
/// g = gcd(L, D, R). Any such multiple is an integer combination of L, D, R by
/// Bezout; a negative coefficient on L (resp. D) is lifted by adding k*R to
/// it and k*L (resp. k*D) to z, and a negative z is lifted by adding R to x
/// and L to z. Neither step changes the value. The negative generator -R
/// thus removes the large-gap obstruction a plain numerical semigroup would
/// have, and every positive integer is generated iff g == 1.
bool check_gcd_validity(const ClickTriplet& triplet);

struct ValidityReport {
  ClickTriplet triplet;
  bool gcd_ok = false;
  bool bounded_ok = false;
  std::vector<Count> unreachable_targets;
  // (T, n_min) with maximal n_min over the reachable targets, smallest T on
  // ties. Absent when no target is reachable.
  std::optional<std::pair<Count, std::int64_t>> hardest_target;
  // Reachable counts with no legal move at all.
  std::vector<Count> dead_ends;
  // Reachable counts from which at least one target in range can no longer
  // be reached.
  std::vector<Count> trap_states;

  /// A player can finish every target from any state they can get into.
  bool playable() const { return bounded_ok && dead_ends.empty() && trap_states.empty(); }
};

ValidityReport check_bounded_playability(const ClickTriplet& triplet,
                                         const BoardBounds& bounds, Count start,
                                         const TargetRange& targets);

ValidityReport check_level(const LevelSpec& level);

/// Uniform integers in [lo, hi] from a seeded mt19937_64. Uses its own
/// rejection sampling so draws are identical across standard libraries.
class TargetPicker {
 public:
  TargetPicker(std::uint64_t seed, TargetRange range);

  Count pick();
  const TargetRange& range() const { return range_; }

 private:
  TargetRange range_;
  std::mt19937_64 rng_;
};

Count pick_target(TargetPicker& picker);

/// Uniform integer in [lo, hi]; lo <= hi.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

struct Campaign {
  std::uint64_t seed = 0;
  std::vector<LevelSpec> levels;

  /// Throws std::out_of_range for an unknown 1-based index.
  const LevelSpec& level(int index) const;
  friend bool operator==(const Campaign&, const Campaign&) = default;
};

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CampaignOptions {
  // Level i draws triplets whose largest component lies in
  // [band_lo + band_step*(i-1), band_hi + band_step*(i-1)].
  Count band_lo = 3;
  Count band_hi = 4;
  Count band_step = 2;
  int max_rejections = 10000;
};

/// Deterministic in (seed, parameters). Every level satisfies D > L > R,
/// gcd validity and full playability.
Campaign generate_campaign(std::uint64_t seed, int n_levels, const BoardBounds& bounds = {},
                           const TargetRange& targets = {}, const ScoringRule& scoring = {},
                           const CampaignOptions& options = {});

/// Structural checks plus playability of every level and the magnitude
/// progression. Returns human-readable problems; empty means valid.
std::vector<std::string> campaign_problems(const Campaign& campaign);

}  // namespace bublz
