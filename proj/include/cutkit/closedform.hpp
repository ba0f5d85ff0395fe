#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "cutkit/engine.hpp"
#include "cutkit/ruleset.hpp"

namespace cutkit {

// n = p*q + r with 0 < r <= p (q may be zero).  The remainder convention is
// shifted so r indexes a 1-based period prefix.
struct Decomposition {
  std::int64_t quotient = 0;
  int remainder = 0;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

Decomposition decompose(std::int64_t n, int p);  // OutOfRange: n < 1 or p < 1

// Exact single-heap value for the solved families; nullopt when the family
// has no closed form (General, OneEvenC).
//   AllOddWithOne:      0 for n odd, 1 for n even
//   MinAtLeastTwo(c1):  floor((n-1)/c1)
//   ContainsOneTwoThree: n-1
//   OneThreeTwoK(k):    2q + 1 - (r mod 2) with n = 2k*q + r, 0 < r <= 2k
std::optional<GrundyValue> closed_form(const FamilyClass& family, std::int64_t n);

// Arithmetic-periodic extension: G(n) = saltus*q + prefix[r-1] with
// (q, r) = decompose(n, p).  PrefixTooShort when prefix has fewer than p
// values.
GrundyValue extend(std::span<const GrundyValue> prefix, int p, GrundyValue saltus,
                   std::int64_t n);

}  // namespace cutkit
