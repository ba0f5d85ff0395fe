#include "cutkit/closedform.hpp"

#include <limits>

namespace cutkit {

Decomposition decompose(std::int64_t n, int p) {
  if (n < 1 || p < 1) {
    throw Error(ErrorCode::OutOfRange, "decompose needs n >= 1 and p >= 1");
  }
  const std::int64_t q = (n - 1) / p;
  return {q, static_cast<int>(n - q * p)};
}

std::optional<GrundyValue> closed_form(const FamilyClass& family, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "heap size must be at least 1");
  switch (family.tag) {
    case FamilyClass::Tag::AllOddWithOne:
      return n % 2 == 1 ? 0u : 1u;
    case FamilyClass::Tag::MinAtLeastTwo: {
      const std::int64_t g = (n - 1) / family.param;
      if (g > std::numeric_limits<GrundyValue>::max()) {
        throw Error(ErrorCode::CapacityExceeded, "value does not fit 32 bits");
      }
      return static_cast<GrundyValue>(g);
    }
    case FamilyClass::Tag::ContainsOneTwoThree: {
      if (n - 1 > std::numeric_limits<GrundyValue>::max()) {
        throw Error(ErrorCode::CapacityExceeded, "value does not fit 32 bits");
      }
      return static_cast<GrundyValue>(n - 1);
    }
    case FamilyClass::Tag::OneThreeTwoK: {
      const auto [q, r] = decompose(n, 2 * family.param);
      const std::int64_t g = 2 * q + 1 - (r % 2);
      if (g > std::numeric_limits<GrundyValue>::max()) {
        throw Error(ErrorCode::CapacityExceeded, "value does not fit 32 bits");
      }
      return static_cast<GrundyValue>(g);
    }
    case FamilyClass::Tag::OneEvenC:
    case FamilyClass::Tag::General:
      return std::nullopt;
  }
  return std::nullopt;
}

GrundyValue extend(std::span<const GrundyValue> prefix, int p, GrundyValue saltus,
                   std::int64_t n) {
  if (p < 1) throw Error(ErrorCode::OutOfRange, "period must be at least 1");
  if (prefix.size() < static_cast<std::size_t>(p)) {
    throw Error(ErrorCode::PrefixTooShort, "need at least " + std::to_string(p) +
                                               " prefix values, have " +
                                               std::to_string(prefix.size()));
  }
  const auto [q, r] = decompose(n, p);
  const std::uint64_t g =
      static_cast<std::uint64_t>(q) * saltus + prefix[static_cast<std::size_t>(r) - 1];
  if (g > std::numeric_limits<GrundyValue>::max()) {
    throw Error(ErrorCode::CapacityExceeded, "value does not fit 32 bits");
  }
  return static_cast<GrundyValue>(g);
}

}  // namespace cutkit
