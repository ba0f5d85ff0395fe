#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "cutkit/engine.hpp"
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

std::vector<GrundyValue> values_of(const GrundyTable& table) {
  const auto span = table.values();
  return {span.begin(), span.end()};
}

// G(1..99) of {1,2}.
constexpr std::array<GrundyValue, 99> kOneTwoPrefix = {
    0,  1,  2,  3,  1,  4,  3,  2,  4,  5,  6,  7,  8,  9,  7,  6,  9,  8,  11, 10,
    12, 13, 10, 11, 13, 12, 15, 14, 16, 17, 5,  15, 17, 16, 19, 18, 20, 21, 18, 19,
    21, 20, 23, 22, 25, 24, 22, 23, 24, 25, 26, 27, 29, 28, 27, 26, 28, 29, 30, 31,
    14, 32, 31, 30, 32, 33, 34, 35, 37, 36, 35, 34, 36, 37, 38, 39, 40, 41, 39, 38,
    41, 40, 43, 42, 44, 45, 42, 43, 45, 44, 47, 46, 48, 49, 46, 47, 49, 48, 51};

}  // namespace

TEST_CASE("nim_sum folds with XOR") {
  CHECK(nim_sum({}) == 0);
  const std::vector<GrundyValue> same = {7, 7};
  CHECK(nim_sum(same) == 0);
  const std::vector<GrundyValue> disjoint = {1, 2};
  CHECK(nim_sum(disjoint) == 3);
  const std::vector<GrundyValue> mixed = {5, 3};
  CHECK(nim_sum(mixed) == 6);
}

TEST_CASE("ValueSet basics") {
  ValueSet s;
  CHECK(s.empty());
  CHECK(s.mex() == 0);
  CHECK(s.size() == 0);

  s.insert(0);
  s.insert(1);
  s.insert(3);
  CHECK(s.contains(0));
  CHECK(s.contains(3));
  CHECK(!s.contains(2));
  CHECK(!s.contains(64));
  CHECK(s.mex() == 2);
  CHECK(s.size() == 3);
  CHECK(s.to_vector() == std::vector<GrundyValue>{0, 1, 3});

  ValueSet t;
  t.insert(1);
  t.insert(2);
  CHECK(t.mex() == 0);

  s.unite(t);
  CHECK(s.mex() == 4);
  CHECK(s.to_vector() == std::vector<GrundyValue>{0, 1, 2, 3});
}

TEST_CASE("ValueSet ignores trailing zero words and survives growth") {
  const ValueSet a(std::vector<std::uint64_t>{0b1011});
  const ValueSet b(std::vector<std::uint64_t>{0b1011, 0, 0});
  CHECK(a == b);
  CHECK(b.words().size() == 1);

  // The cached mex scan position only ever moves up; inserting later values
  // must keep mex() exact.
  ValueSet s;
  s.insert(0);
  CHECK(s.mex() == 1);
  s.insert(1);
  s.insert(130);
  CHECK(s.mex() == 2);
  CHECK(s.contains(130));
  s.insert(2);
  CHECK(s.mex() == 3);
}

TEST_CASE("single-heap values match the published prefixes") {
  CHECK(values_of(compute_table(RulesetSpec::parse("1,2"), 10)) ==
        std::vector<GrundyValue>{0, 1, 2, 3, 1, 4, 3, 2, 4, 5});
  CHECK(values_of(compute_table(RulesetSpec::parse("2"), 6)) ==
        std::vector<GrundyValue>{0, 0, 1, 1, 2, 2});
  CHECK(values_of(compute_table(RulesetSpec::parse("1,2,3"), 5)) ==
        std::vector<GrundyValue>{0, 1, 2, 3, 4});
  CHECK(values_of(compute_table(RulesetSpec::parse("1,odd>=3"), 6)) ==
        std::vector<GrundyValue>{0, 1, 0, 1, 0, 1});
}

TEST_CASE("the first 99 values of {1,2}") {
  const auto table = compute_table(RulesetSpec::parse("1,2"), 99);
  for (int n = 1; n <= 99; ++n) {
    CAPTURE(n);
    CHECK(table.value(n) == kOneTwoPrefix[static_cast<std::size_t>(n) - 1]);
  }
  CHECK(table.value(31) == 5);
  CHECK(table.value(61) == 14);
}

TEST_CASE("table accessors") {
  const auto table = compute_table(RulesetSpec::parse("1,2,3"), 40);
  CHECK(table.size() == 40);
  CHECK(table.ruleset() == RulesetSpec::parse("1,2,3"));
  CHECK(table.values().size() == 40);
  CHECK(table.values()[0] == 0);
  CHECK(table.max_value() == 39);
  CHECK(code_of([&] { (void)table.value(0); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { (void)table.value(41); }) == ErrorCode::OutOfRange);
}

TEST_CASE("engine equals the oracle for finite bases") {
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<int> base;
    for (int c = 1; c <= 3; ++c) {
      if (mask & (1u << (c - 1))) base.push_back(c);
    }
    const auto spec = RulesetSpec::from_cuts(base);
    CAPTURE(spec.text());
    const auto table = compute_table(spec, 30);
    CHECK(values_of(table) == brute_grundy(spec, 30));
  }
}

TEST_CASE("engine equals the oracle for tails") {
  const struct {
    std::vector<int> base;
    TailKind kind;
    int from;
  } cases[] = {
      {{1}, TailKind::OddFrom, 3},     {{}, TailKind::AllFrom, 4},
      {{1}, TailKind::AllFrom, 2},     {{2}, TailKind::AllFrom, 5},
      {{}, TailKind::OddFrom, 1},      {{}, TailKind::AllFrom, 1},
      {{1, 4}, TailKind::OddFrom, 7},  {{2, 3}, TailKind::AllFrom, 6},
      {{}, TailKind::OddFrom, 2},      {{1}, TailKind::OddFrom, 5},
      {{4}, TailKind::OddFrom, 5},     {{1, 2}, TailKind::AllFrom, 4},
  };
  for (const auto& c : cases) {
    const auto spec = RulesetSpec::from_cuts(c.base, c.kind, c.from);
    CAPTURE(spec.text());
    const auto table = compute_table(spec, 32);
    CHECK(values_of(table) == brute_grundy(spec, 32));
  }
}

TEST_CASE("brute oracle spot values") {
  CHECK(brute_grundy(RulesetSpec::parse("1,2"), 5) ==
        std::vector<GrundyValue>{0, 1, 2, 3, 1});
  CHECK(brute_grundy(RulesetSpec::parse("4"), 4) == std::vector<GrundyValue>{0, 0, 0, 0});
  CHECK(brute_grundy(RulesetSpec::parse("1,4"), 8) ==
        std::vector<GrundyValue>{0, 1, 0, 1, 2, 3, 2, 3});
}

TEST_CASE("for_each_option enumerates canonical partitions") {
  const auto spec = RulesetSpec::parse("1,2");
  std::vector<std::pair<int, std::vector<int>>> seen;
  for_each_option(spec, 4, [&](int c, std::span<const int> parts) {
    seen.emplace_back(c, std::vector<int>(parts.begin(), parts.end()));
  });
  const std::vector<std::pair<int, std::vector<int>>> expected = {
      {1, {1, 3}}, {1, {2, 2}}, {2, {1, 1, 2}}};
  CHECK(seen == expected);

  for_each_option(spec, 1, [&](int, std::span<const int>) { FAIL("heap 1 is terminal"); });

  CHECK(code_of([&] { for_each_option(spec, 65, [](int, std::span<const int>) {}); }) ==
        ErrorCode::OracleScaleExceeded);
  CHECK(code_of([&] { brute_grundy(spec, 65); }) == ErrorCode::OracleScaleExceeded);
}

TEST_CASE("options respect the parity and bound laws") {
  for (const char* text : {"1,2", "1,3,4", "2,5"}) {
    const auto spec = RulesetSpec::parse(text);
    const auto table = compute_table(spec, 20);
    for (int n = 2; n <= 20; ++n) {
      for_each_option(spec, n, [&](int, std::span<const int> parts) {
        GrundyValue nim = 0;
        std::uint64_t sum = 0;
        for (int part : parts) {
          nim ^= table.value(part);
          sum += table.value(part);
        }
        CHECK(nim % 2 == sum % 2);
        CHECK(nim <= sum);
      });
    }
  }
}

TEST_CASE("heaps too small to cut are worth zero") {
  for (const char* text : {"1", "2", "3", "4", "all>=5"}) {
    const auto spec = RulesetSpec::parse(text);
    const auto table = compute_table(spec, 12);
    for (int n = 1; n <= 12; ++n) {
      if (n - 1 < spec.min_cut()) {
        CHECK(table.value(n) == 0);
      }
    }
    CHECK(table.value(spec.min_cut() + 1) == 1);
  }
}

TEST_CASE("reachable rows") {
  const auto table = compute_table(RulesetSpec::parse("1,2"), 10);
  CHECK(table.reachable(4, 1).to_vector() == std::vector<GrundyValue>{0, 2});
  CHECK(table.reachable(2, 1).to_vector() == std::vector<GrundyValue>{0});
  CHECK(table.reachable(3, 3).empty());
  CHECK(table.reachable(10, 9).to_vector() == std::vector<GrundyValue>{0});
  CHECK(code_of([&] { (void)table.reachable(11, 1); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { (void)table.reachable(4, 0); }) == ErrorCode::OutOfRange);

  CHECK(table.reach2plus(6).to_vector() == std::vector<GrundyValue>{1, 3});
}

TEST_CASE("reachable agrees with direct enumeration, including on-demand rows") {
  const auto spec = RulesetSpec::parse("1,all>=3");
  const auto table = compute_table(spec, 16);
  for (int n = 2; n <= 16; ++n) {
    std::vector<ValueSet> direct(static_cast<std::size_t>(n));  // [c]
    for_each_option(spec, n, [&](int c, std::span<const int> parts) {
      GrundyValue nim = 0;
      for (int part : parts) nim ^= table.value(part);
      direct[static_cast<std::size_t>(c)].insert(nim);
    });
    for (int c : spec.cuts_for(n)) {
      CAPTURE(n);
      CAPTURE(c);
      CHECK(table.reachable(n, c) == direct[static_cast<std::size_t>(c)]);
    }
  }
}

TEST_CASE("reach2plus unions every cut of size at least two") {
  const auto spec = RulesetSpec::parse("2,3,all>=6");
  const auto table = compute_table(spec, 14);
  for (int n = 1; n <= 14; ++n) {
    ValueSet expected;
    for (int c : spec.cuts_for(n)) {
      if (c >= 2) expected.unite(table.reachable(n, c));
    }
    CAPTURE(n);
    CHECK(table.reach2plus(n) == expected);
  }
}

TEST_CASE("thread count never changes the result") {
  const auto spec = RulesetSpec::parse("1,2");
  const auto t1 = compute_table(spec, 600, 1);
  const auto t2 = compute_table(spec, 600, 2);
  const auto t4 = compute_table(spec, 600, 4);
  CHECK(values_of(t1) == values_of(t2));
  CHECK(values_of(t1) == values_of(t4));
  CHECK(t1.max_value() == t4.max_value());
  for (int n = 1; n <= 600; ++n) {
    REQUIRE(t1.reach2plus(n) == t4.reach2plus(n));
  }
}

TEST_CASE("reach2plus retention is configurable") {
  const auto spec = RulesetSpec::parse("1,2");
  const auto full = compute_table(spec, 50);
  const auto slim = compute_table(spec, 50, EngineOptions{.threads = 1, .reach2plus_limit = 10});
  CHECK(values_of(full) == values_of(slim));
  CHECK(full.has_reach2plus(50));
  CHECK(slim.has_reach2plus(10));
  CHECK(!slim.has_reach2plus(11));
  CHECK(slim.reach2plus(10) == full.reach2plus(10));
  CHECK(code_of([&] { (void)slim.reach2plus(11); }) == ErrorCode::OutOfRange);
}

TEST_CASE("table size limits") {
  CHECK(code_of([] { compute_table(RulesetSpec::parse("1"), 0); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { compute_table(RulesetSpec::parse("1"), kTableCapacity + 1); }) ==
        ErrorCode::CapacityExceeded);
}

TEST_CASE("residue distinctness along the smallest even cut") {
  const auto even = compute_table(RulesetSpec::parse("2"), 100);
  const auto report = residue_distinctness(even);
  CHECK(report.step == 2);
  CHECK(report.checked_n == 100);
  CHECK(report.violations.empty());

  const auto mixed = residue_distinctness(compute_table(RulesetSpec::parse("1,2"), 200));
  CHECK(mixed.step == 2);
  CHECK(mixed.violations.empty());

  CHECK(residue_distinctness(compute_table(RulesetSpec::parse("1,3,4"), 60)).step == 4);
  CHECK(residue_distinctness(compute_table(RulesetSpec::parse("2,odd>=5"), 60)).step == 2);
  CHECK(residue_distinctness(compute_table(RulesetSpec::parse("1,all>=4"), 60)).step == 4);

  CHECK(code_of([] {
          residue_distinctness(compute_table(RulesetSpec::parse("1,3"), 30));
        }) == ErrorCode::NotApplicable);
  CHECK(code_of([] {
          residue_distinctness(compute_table(RulesetSpec::parse("1,odd>=3"), 30));
        }) == ErrorCode::NotApplicable);
}
