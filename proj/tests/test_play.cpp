#include <algorithm>
#include <functional>
#include <vector>

#include "cutkit/engine.hpp"
#include "cutkit/play.hpp"
#include "cutkit/ruleset.hpp"
#include "doctest.h"

using namespace cutkit;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::OutOfRange;
}

// The position after applying a move: the chosen heap is replaced by its parts.
Position apply(const Position& position, const Move& move) {
  std::vector<int> heaps;
  for (std::size_t i = 0; i < position.heaps.size(); ++i) {
    if (static_cast<int>(i) != move.heap_index) heaps.push_back(position.heaps[i]);
  }
  heaps.insert(heaps.end(), move.parts.begin(), move.parts.end());
  return Position::of(std::move(heaps));
}

void check_move_legal(const Position& position, const Move& move, const RulesetSpec& spec) {
  REQUIRE(move.heap_index >= 0);
  REQUIRE(static_cast<std::size_t>(move.heap_index) < position.heaps.size());
  const int heap = position.heaps[static_cast<std::size_t>(move.heap_index)];
  REQUIRE(spec.contains(move.cut));
  REQUIRE(static_cast<int>(move.parts.size()) == move.cut + 1);
  int sum = 0;
  for (int part : move.parts) {
    REQUIRE(part >= 1);
    sum += part;
  }
  REQUIRE(sum == heap);
  REQUIRE(std::is_sorted(move.parts.begin(), move.parts.end()));
}

// All positions with `count` heaps of size <= max_heap, nondecreasing.
void for_each_position(int count, int max_heap, std::vector<int>& heaps,
                       const std::function<void(const std::vector<int>&)>& fn) {
  if (count == 0) {
    fn(heaps);
    return;
  }
  const int lo = heaps.empty() ? 1 : heaps.back();
  for (int h = lo; h <= max_heap; ++h) {
    heaps.push_back(h);
    for_each_position(count - 1, max_heap, heaps, fn);
    heaps.pop_back();
  }
}

}  // namespace

TEST_CASE("positions sort and validate") {
  const auto pos = Position::of({7, 4, 7});
  CHECK(pos.heaps == std::vector<int>{4, 7, 7});
  CHECK(Position::of({}).heaps.empty());
  CHECK(code_of([] { Position::of({3, 0}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { Position::of({-1}); }) == ErrorCode::OutOfRange);
}

TEST_CASE("position values are nim-sums") {
  const auto table = compute_table(RulesetSpec::parse("1,2"), 20);
  CHECK(position_value(Position::of({}), table) == 0);
  CHECK(position_value(Position::of({2, 2}), table) == 0);
  CHECK(position_value(Position::of({3, 5}), table) == 3);
  CHECK(position_value(Position::of({4}), table) == 3);

  CHECK(position_value(Position::of({3, 5}), table) ==
        position_value(Position::of({5, 3}), table));

  CHECK(code_of([&] { position_value(Position::of({21}), table); }) ==
        ErrorCode::HeapBeyondTable);
}

TEST_CASE("outcomes follow the zero test") {
  const auto table = compute_table(RulesetSpec::parse("1,2"), 20);
  CHECK(outcome(Position::of({1}), table) == Outcome::PreviousPlayerWins);
  CHECK(outcome(Position::of({2, 2}), table) == Outcome::PreviousPlayerWins);
  CHECK(outcome(Position::of({4}), table) == Outcome::FirstPlayerWins);
  CHECK(outcome(Position::of({}), table) == Outcome::PreviousPlayerWins);
}

TEST_CASE("best move from a single heap") {
  const auto spec = RulesetSpec::parse("1,2");
  const auto table = compute_table(spec, 20);

  const auto move = best_move(Position::of({4}), table);
  REQUIRE(move.has_value());
  CHECK(*move == Move{0, 1, {2, 2}});

  CHECK(!best_move(Position::of({1}), table).has_value());
  CHECK(!best_move(Position::of({2, 2}), table).has_value());
}

TEST_CASE("best move from a sum") {
  const auto spec = RulesetSpec::parse("1,2");
  const auto table = compute_table(spec, 20);
  const auto pos = Position::of({2, 3});
  REQUIRE(position_value(pos, table) == 3);

  const auto move = best_move(pos, table);
  REQUIRE(move.has_value());
  check_move_legal(pos, *move, spec);
  CHECK(position_value(apply(pos, *move), table) == 0);
}

TEST_CASE("winning moves exist exactly at nonzero values") {
  for (const char* text : {"1,2", "2", "1,4"}) {
    const auto spec = RulesetSpec::parse(text);
    const auto table = compute_table(spec, 12);
    std::vector<int> heaps;
    for (int count = 1; count <= 2; ++count) {
      for_each_position(count, 12, heaps, [&](const std::vector<int>& hs) {
        const auto pos = Position::of(std::vector<int>(hs));
        const auto value = position_value(pos, table);
        const auto move = best_move(pos, table);
        CAPTURE(text);
        CAPTURE(pos.heaps);
        if (value == 0) {
          CHECK(!move.has_value());
        } else {
          REQUIRE(move.has_value());
          check_move_legal(pos, *move, spec);
          CHECK(position_value(apply(pos, *move), table) == 0);
        }
      });
    }
  }
}

TEST_CASE("every move from a zero position leaves a nonzero value") {
  const auto spec = RulesetSpec::parse("1,2");
  const auto table = compute_table(spec, 10);
  std::vector<int> heaps;
  for_each_position(2, 10, heaps, [&](const std::vector<int>& hs) {
    const auto pos = Position::of(std::vector<int>(hs));
    if (position_value(pos, table) != 0) return;
    for (std::size_t i = 0; i < pos.heaps.size(); ++i) {
      for_each_option(spec, pos.heaps[i], [&](int c, std::span<const int> parts) {
        Move move{static_cast<int>(i), c, {parts.begin(), parts.end()}};
        CHECK(position_value(apply(pos, move), table) != 0);
      });
    }
  });
}
