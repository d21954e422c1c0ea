#include "doctest.h"

#include "bublz/model.hpp"

using namespace bublz;

TEST_CASE("apply_delta adds L or D and removes R") {
  CHECK(apply_delta(1, MoveKind::SingleLeft, {3, 4, 1}) == 4);
  CHECK(apply_delta(1, MoveKind::DoubleLeft, {3, 4, 1}) == 5);
  CHECK(apply_delta(5, MoveKind::SingleRight, {5, 7, 4}) == 1);
}

TEST_CASE("is_legal guards") {
  const ClickTriplet t{3, 4, 1};
  const BoardBounds b{};
  CHECK_FALSE(is_legal(1, MoveKind::SingleRight, t, b));
  CHECK_FALSE(is_legal(148, MoveKind::SingleLeft, t, b));
  CHECK(is_legal(147, MoveKind::SingleLeft, t, b));
  CHECK(is_legal(146, MoveKind::DoubleLeft, t, b));
  CHECK_FALSE(is_legal(147, MoveKind::DoubleLeft, t, b));

  SUBCASE("right-click is blocked exactly when count <= R") {
    for (ClickTriplet tr : {ClickTriplet{3, 4, 1}, ClickTriplet{5, 7, 4}, ClickTriplet{2, 9, 7}}) {
      for (Count c = b.min_count; c <= b.max_count; ++c)
        CHECK(is_legal(c, MoveKind::SingleRight, tr, b) == (c > tr.R));
    }
  }
}

TEST_CASE("legal moves keep the count on the board") {
  const BoardBounds b{};
  for (Count L = 1; L <= 6; ++L)
    for (Count D = 1; D <= 6; ++D)
      for (Count R = 1; R <= 6; ++R)
        for (Count c = b.min_count; c <= b.max_count; ++c)
          for (MoveKind k : kAllMoves)
            if (is_legal(c, k, {L, D, R}, b)) CHECK(b.contains(apply_delta(c, k, {L, D, R})));
}

TEST_CASE("score") {
  CHECK(score(5, 5) == 1000);
  CHECK(score(8, 5) == 970);
  CHECK(score(200, 5) == 0);
  CHECK(score(105, 5) == 0);
  CHECK(score(104, 5) == 10);
  CHECK_THROWS_AS(score(4, 5), std::logic_error);

  SUBCASE("non-increasing and never negative") {
    std::int64_t prev = score(7, 7);
    for (std::int64_t m = 8; m < 300; ++m) {
      const auto s = score(m, 7);
      CHECK(s <= prev);
      CHECK(s >= 0);
      prev = s;
    }
  }
  SUBCASE("custom floor") { CHECK(score(1000, 0, {1000, 10, 50}) == 50); }
}

TEST_CASE("move kind names") {
  for (MoveKind k : kAllMoves) CHECK(parse_move_kind(to_string(k)) == k);
  CHECK(to_string(MoveKind::SingleLeft) == "single_left");
  CHECK(to_string(MoveKind::DoubleLeft) == "double_left");
  CHECK(to_string(MoveKind::SingleRight) == "single_right");
  CHECK_FALSE(parse_move_kind("left").has_value());
}

TEST_CASE("level validation") {
  CHECK_NOTHROW(make_level(1, {3, 4, 1}));
  CHECK_THROWS_AS(make_level(1, {4, 4, 1}), InvalidArgument);  // D > L
  CHECK_THROWS_AS(make_level(1, {4, 3, 1}), InvalidArgument);
  CHECK_THROWS_AS(make_level(1, {0, 3, 1}), InvalidArgument);
  CHECK_THROWS_AS(make_level(1, {3, 4, 1}, {1, 150}, {1, 70}), InvalidArgument);
  CHECK_THROWS_AS(make_level(1, {3, 4, 1}, {1, 150}, {2, 151}), InvalidArgument);
  CHECK_THROWS_AS(make_level(1, {3, 4, 1}, {1, 150}, {2, 70}, {1000, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(make_level(1, {3, 4, 1}, {1, 150}, {2, 70}, {}, 151), InvalidArgument);
  CHECK_THROWS_AS(make_level(0, {3, 4, 1}), InvalidArgument);
  CHECK_THROWS_AS(validate(BoardBounds{5, 5}), InvalidArgument);
}
