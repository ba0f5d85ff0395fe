#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "cutkit/engine.hpp"
#include "cutkit/ruleset.hpp"

namespace cutkit {

enum class HypothesisSource : std::uint8_t { Detected, ClosedForm, Certified };

// G(n + p) = G(n) + saltus for all n > n0 (as far as checked or proven).
// saltus 0 is plain periodicity.
struct RegularityHypothesis {
  int n0 = 0;
  int p = 0;
  GrundyValue saltus = 0;
  HypothesisSource source = HypothesisSource::Detected;

  friend bool operator==(const RegularityHypothesis&, const RegularityHypothesis&) = default;
};

// Empirical scan: smallest p (then smallest n0) such that G(n+p) - G(n) is a
// constant s >= 0 on the whole computed range n0 < n <= N-p, with at least
// three full periods of support beyond n0.  TableTooShort when N < 4*max_p.
std::optional<RegularityHypothesis> detect(const GrundyTable& table, int max_p, int max_n0);

// Default bounds: max_p = N/8, max_n0 = N/4.
std::optional<RegularityHypothesis> detect(const GrundyTable& table);

enum class Ap3Method : std::uint8_t { None, Direct, ParityPair, OneEvenPair };
enum class ApVerdict : std::uint8_t { Proven, Failed };
enum class ApFailReason : std::uint8_t { None, NoCandidatePeriod, MaxCutBeyond4P };

struct APReport {
  std::string ruleset;
  int p = 0;
  int t = 0;  // saltus exponent, s = 2^t
  GrundyValue s = 0;
  bool ap1 = false;           // G(n+p) = G(n)+s for n <= 3p
  bool ap2 = false;           // {G(1..p)} = {0..s-1}
  bool ap3 = false;           // every g < s reachable by a >=2-cut for n in (3p, 4p]
  Ap3Method ap3_method = Ap3Method::None;
  bool thm_condition = false;  // max cut-number <= 4p
  ApVerdict verdict = ApVerdict::Failed;
  ApFailReason fail_reason = ApFailReason::None;
  int checked_n = 0;

  std::string verdict_text() const;  // "Proven" / "Failed(NoCandidatePeriod)" / ...
  std::string to_json() const;       // certificate object
};

// Searches p ascending (bounded by N/4; the saltus is forced to
// s = G(1+p) - G(1) and must be a power of two in [1, p]) for the smallest p
// satisfying all three test conditions.  AP3 is checked directly against
// reach2plus rows when retained, falling back to the parity-pair /
// one-even-pair sufficient conditions otherwise.  Proven additionally
// requires max cut <= 4p.  InfiniteRuleset for tails; TableTooShort when
// N < 4.
APReport ap_test(const RulesetSpec& spec, const GrundyTable& table);

// Sufficient condition for AP3: two cut-numbers of opposite parity, both in
// [2, 2p+1].
bool ap3_via_parities(const RulesetSpec& spec, int p);

// Sufficient condition for AP3 for rulesets of the exact form {1, c} with c
// even, 4 <= c <= p (NotApplicableRuleset otherwise): immediate for
// p >= 4c+3, else requires two heap sizes x1 != x2 <= p/2 of opposite parity
// with equal Grundy values.
bool ap3_via_pair(const RulesetSpec& spec, const GrundyTable& table, int p);

// Proven AP test outcome turned into a certified hypothesis (n0 = 0); nothing
// when the test does not prove regularity.
std::optional<std::pair<RegularityHypothesis, APReport>> certify(const RulesetSpec& spec,
                                                                 const GrundyTable& table);

}  // namespace cutkit
