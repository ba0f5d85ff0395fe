#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cutkit/engine.hpp"

namespace cutkit {

// Multiset of heap sizes, kept sorted ascending.
struct Position {
  std::vector<int> heaps;

  static Position of(std::vector<int> heaps);  // validates sizes >= 1, sorts
};

struct Move {
  int heap_index = 0;       // index into the sorted heap list
  int cut = 0;              // cut-number applied
  std::vector<int> parts;   // cut+1 nondecreasing parts replacing the heap

  friend bool operator==(const Move&, const Move&) = default;
};

// Nim-sum of the per-heap values.  HeapBeyondTable when a heap exceeds the
// table length.
GrundyValue position_value(const Position& position, const GrundyTable& table);

enum class Outcome : std::uint8_t { FirstPlayerWins, PreviousPlayerWins };

Outcome outcome(const Position& position, const GrundyTable& table);

// A move to a zero position when one exists (exactly when the position value
// is nonzero).  Deterministic choice: lowest heap index, then smallest
// cut-number, then lexicographically smallest part list under the
// first-part-ascending reconstruction.
std::optional<Move> best_move(const Position& position, const GrundyTable& table);

}  // namespace cutkit
