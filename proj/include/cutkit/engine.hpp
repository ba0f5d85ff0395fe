#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cutkit/ruleset.hpp"

namespace cutkit {

using GrundyValue = std::uint32_t;

// Largest computable table size; compute_table reports CapacityExceeded beyond.
inline constexpr int kTableCapacity = 200'000;

// Oracle-scale bound for brute-force partition enumeration.
inline constexpr int kOracleScale = 64;

GrundyValue nim_sum(std::span<const GrundyValue> values);

// Dense bit-indexed set of Grundy values with a cached mex scan position.
class ValueSet {
 public:
  ValueSet() = default;
  explicit ValueSet(std::vector<std::uint64_t> words);

  void insert(GrundyValue v);
  bool contains(GrundyValue v) const noexcept;
  void unite(const ValueSet& other);
  void or_words(std::span<const std::uint64_t> words);

  GrundyValue mex() const noexcept;
  bool empty() const noexcept;
  std::size_t size() const noexcept;  // element count

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::vector<GrundyValue> to_vector() const;

  // Set equality; trailing zero words are ignored.
  bool operator==(const ValueSet& other) const noexcept;

 private:
  std::vector<std::uint64_t> words_;
  mutable GrundyValue mex_floor_ = 0;  // values below this are known present
};

struct EngineOptions {
  int threads = 1;
  // Keep reach2plus rows for n <= this bound; negative keeps every row.
  // The AP test reads rows up to 4p, so the default keeps them all.
  int reach2plus_limit = -1;
};

// Grundy values G(1..N) for single heaps under one ruleset, plus the
// reachable-value rows needed by the regularity analysis and by move
// reconstruction.  Cheap to copy (shared immutable state).
class GrundyTable {
 public:
  const RulesetSpec& ruleset() const noexcept;
  int size() const noexcept;  // N
  GrundyValue value(int n) const;  // 1 <= n <= N, OutOfRange otherwise
  std::span<const GrundyValue> values() const noexcept;  // [0] is G(1)
  GrundyValue max_value() const noexcept;

  // R_c(n): Grundy values of the positions reachable from a heap of size n
  // by one c-cut (empty when c > n-1).  Rows for cut-numbers up to the
  // largest base cut are precomputed; other rows are rebuilt on demand,
  // which costs O(c * n^2) set work.
  ValueSet reachable(int n, int c) const;

  // Union of R_c(n) over cut-numbers c >= 2 of the ruleset.
  bool has_reach2plus(int n) const;
  const ValueSet& reach2plus(int n) const;  // OutOfRange when not retained

  struct Impl;

 private:
  friend GrundyTable compute_table(const RulesetSpec&, int, const EngineOptions&);
  explicit GrundyTable(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Bottom-up table computation.  The result is identical for every thread
// count; threads only split the per-row set unions.
GrundyTable compute_table(const RulesetSpec& spec, int n_max, const EngineOptions& opts = {});
inline GrundyTable compute_table(const RulesetSpec& spec, int n_max, int threads) {
  return compute_table(spec, n_max, EngineOptions{.threads = threads});
}

// Independent oracle: direct partition enumeration, usable for n_max <= 64
// (OracleScaleExceeded beyond).  Returned vector is indexed like
// GrundyTable::values(): [0] is G(1).
std::vector<GrundyValue> brute_grundy(const RulesetSpec& spec, int n_max);

// Enumerates every option of a heap of size n in canonical form
// (cut-number plus nondecreasing part list).  Oracle scale only.
void for_each_option(const RulesetSpec& spec, int n,
                     const std::function<void(int c, std::span<const int> parts)>& fn);

// Distinctness along arithmetic progressions with the smallest even
// cut-number as step: no Grundy value may repeat within a residue class.
struct ResidueViolation {
  int n1 = 0, n2 = 0;  // n1 < n2, n1 == n2 (mod step), G(n1) == G(n2)
};

struct ResidueReport {
  int step = 0;  // smallest even cut-number
  int checked_n = 0;
  std::vector<ResidueViolation> violations;  // expected empty
};

// NotApplicable when the ruleset has no even cut-number.
ResidueReport residue_distinctness(const GrundyTable& table);

}  // namespace cutkit
