#include "cutkit/play.hpp"

#include <algorithm>

namespace cutkit {

Position Position::of(std::vector<int> heaps) {
  for (int h : heaps) {
    if (h < 1) throw Error(ErrorCode::OutOfRange, "heap sizes must be at least 1");
  }
  std::sort(heaps.begin(), heaps.end());
  Position p;
  p.heaps = std::move(heaps);
  return p;
}

GrundyValue position_value(const Position& position, const GrundyTable& table) {
  GrundyValue x = 0;
  for (int h : position.heaps) {
    if (h > table.size()) {
      throw Error(ErrorCode::HeapBeyondTable, "heap of size " + std::to_string(h) +
                                                  " exceeds the table length " +
                                                  std::to_string(table.size()));
    }
    x ^= table.value(h);
  }
  return x;
}

Outcome outcome(const Position& position, const GrundyTable& table) {
  return position_value(position, table) == 0 ? Outcome::PreviousPlayerWins
                                              : Outcome::FirstPlayerWins;
}

namespace {

// Can a heap of size m split into exactly k nonempty parts whose values
// XOR to target?  For k == 1 the "split" is the heap itself.
bool parts_can_reach(const GrundyTable& table, int m, int k, GrundyValue target) {
  if (k == 1) return table.value(m) == target;
  if (m < k) return false;
  return table.reachable(m, k - 1).contains(target);
}

// Lexicographically smallest nondecreasing part list of n with k parts and
// XOR value target; caller guarantees one exists.
std::vector<int> reconstruct_parts(const GrundyTable& table, int n, int k, GrundyValue target) {
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(k));
  int m = n;
  int min_part = 1;
  while (k > 1) {
    for (int a = min_part; a <= m - (k - 1); ++a) {
      const GrundyValue rest = target ^ table.value(a);
      if (parts_can_reach(table, m - a, k - 1, rest)) {
        parts.push_back(a);
        m -= a;
        target = rest;
        min_part = a;
        --k;
        break;
      }
    }
  }
  parts.push_back(m);
  return parts;
}

}  // namespace

std::optional<Move> best_move(const Position& position, const GrundyTable& table) {
  const GrundyValue v = position_value(position, table);
  if (v == 0) return std::nullopt;
  const RulesetSpec& spec = table.ruleset();
  for (std::size_t i = 0; i < position.heaps.size(); ++i) {
    const int n = position.heaps[i];
    const GrundyValue rest = v ^ table.value(n);
    for (int c : spec.cuts_for(n)) {
      if (!parts_can_reach(table, n, c + 1, rest)) continue;
      Move move;
      move.heap_index = static_cast<int>(i);
      move.cut = c;
      move.parts = reconstruct_parts(table, n, c + 1, rest);
      return move;
    }
  }
  return std::nullopt;  // unreachable for a correct table
}

}  // namespace cutkit
