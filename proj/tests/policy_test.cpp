#include "doctest.h"

#include <algorithm>

#include "bublz/policy.hpp"

using namespace bublz;

TEST_CASE("ideal policy completes in the optimum") {
  const LevelSpec level = make_level(1, {3, 4, 1});
  for (Count t = 2; t <= 70; ++t) {
    const Session s = play(level, t, {PolicyKind::Ideal});
    CHECK(s.state.moves_made == s.optimal_for_target);
    CHECK(feedback(s).score == 1000);
    CHECK(history_consistent(s));
  }
  const Session s = play(level, 2, {PolicyKind::Ideal});
  CHECK(s.state.moves_made == 3);
}

TEST_CASE("random policy is reproducible and legal") {
  const LevelSpec level = make_level(1, {3, 4, 1});
  std::vector<std::vector<MoveRecord>> histories;
  int stalled = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    try {
      const Session a = play(level, 42, {PolicyKind::Random, seed}, "a");
      const Session b = play(level, 42, {PolicyKind::Random, seed}, "a");
      CHECK(a.history == b.history);
      CHECK(history_consistent(a));
      CHECK(a.complete());
      histories.push_back(a.history);
    } catch (const PolicyStalled&) {
      ++stalled;
      CHECK_THROWS_AS(play(level, 42, {PolicyKind::Random, seed}), PolicyStalled);
    }
  }
  REQUIRE(histories.size() >= 2);
  CHECK(std::any_of(histories.begin() + 1, histories.end(),
                    [&](const auto& h) { return h != histories.front(); }));
  // Uniform play has an upward drift, so a sizable share of runs get stuck
  // near the top of the board.
  CHECK(stalled > 0);
}

TEST_CASE("greedy completes every target on the example triplets") {
  for (ClickTriplet t : {ClickTriplet{3, 4, 1}, ClickTriplet{5, 7, 4}}) {
    const LevelSpec level = make_level(1, t);
    for (Count target = 2; target <= 70; ++target) {
      const Session s = play(level, target, {PolicyKind::GreedyClose});
      CHECK(s.complete());
      CHECK(s.state.moves_made >= s.optimal_for_target);
    }
  }
}

TEST_CASE("greedy policy") {
  const LevelSpec level = make_level(1, {3, 4, 1});
  // 1 -> 5 by the double click; at 5 both 8 and 4 are two away and the
  // single left click wins the tie; then 8 -> 7 -> 6.
  const Session s = play(level, 6, {PolicyKind::GreedyClose});
  std::vector<MoveKind> kinds;
  for (const auto& m : s.history) kinds.push_back(m.kind);
  CHECK(kinds == std::vector{MoveKind::DoubleLeft, MoveKind::SingleLeft, MoveKind::SingleRight,
                             MoveKind::SingleRight});
}

TEST_CASE("step cap stalls") {
  const LevelSpec level = make_level(1, {3, 4, 1});
  CHECK_THROWS_AS(play(level, 70, {PolicyKind::Ideal, 0, 5}), PolicyStalled);
  CHECK_THROWS_AS(play(level, 70, {PolicyKind::Random, 1, 3}), PolicyStalled);
}

TEST_CASE("policy names and seeds") {
  for (auto k : {PolicyKind::Ideal, PolicyKind::Random, PolicyKind::GreedyClose})
    CHECK(parse_policy_kind(to_string(k)) == k);
  CHECK_FALSE(parse_policy_kind("smart").has_value());
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
