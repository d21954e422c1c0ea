#pragma once

// Automated players used by `simulate` and the test suites.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bublz/engine.hpp"

namespace bublz {

enum class PolicyKind : std::uint8_t {
  Ideal,       // replays the solver witness
  Random,      // uniform over legal moves
  GreedyClose  // legal move minimizing |new count - T|, ties in kAllMoves order
};

std::string_view to_string(PolicyKind kind);  // "ideal" | "random" | "greedy"
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::Ideal;
  std::uint64_t seed = 0;
  std::int64_t step_cap = 10000;
};

class PolicyStalled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 of master + index; per-run seeds for reproducible cohorts.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Plays one session to completion. The i-th move is stamped t_ms = i, so
/// simulated traces carry no real timing.
/// Throws PolicyStalled when step_cap moves are made without finishing.
Session play(const LevelSpec& level, Count target, const PolicySpec& policy,
             std::string id = next_session_id());

}  // namespace bublz
