#include "bublz/policy.hpp"

#include <cstdlib>
#include <random>

namespace bublz {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Ideal:
      return "ideal";
    case PolicyKind::Random:
      return "random";
    case PolicyKind::GreedyClose:
      return "greedy";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (auto k : {PolicyKind::Ideal, PolicyKind::Random, PolicyKind::GreedyClose})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Session play(const LevelSpec& level, Count target, const PolicySpec& policy, std::string id) {
  Session s = new_session(level, target, std::move(id));
  s.started_at_ms = 0;

  std::vector<MoveKind> script;
  if (policy.kind == PolicyKind::Ideal) {
    auto r = solve_sequence(level.triplet, level.bounds, level.start_count, target);
    if (!r) throw PolicyStalled("no witness for target " + std::to_string(target));
    script = std::move(r->witness);
  }
  std::mt19937_64 rng(policy.seed);

  std::int64_t step = 0;
  while (!s.complete()) {
    if (step >= policy.step_cap)
      throw PolicyStalled(std::string(to_string(policy.kind)) + " policy hit the step cap of " +
                          std::to_string(policy.step_cap) + " moves");
    const auto legal = legal_moves(s);
    if (legal.empty()) throw PolicyStalled("no legal move at count " + std::to_string(s.state.count));

    MoveKind pick = legal.front();
    switch (policy.kind) {
      case PolicyKind::Ideal:
        pick = script.at(static_cast<std::size_t>(step));
        break;
      case PolicyKind::Random:
        pick = legal[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<std::int64_t>(legal.size()) - 1))];
        break;
      case PolicyKind::GreedyClose: {
        Count best = -1;
        for (MoveKind k : legal) {
          const Count gap = std::llabs(apply_delta(s.state.count, k, level.triplet) - target);
          if (best < 0 || gap < best) {
            best = gap;
            pick = k;
          }
        }
        break;
      }
    }
    if (auto g = check_move(s, pick))
      throw std::logic_error("policy chose an illegal move: " + g->message);
    commit_move(s, pick, step + 1);
    ++step;
  }
  return s;
}

}  // namespace bublz
