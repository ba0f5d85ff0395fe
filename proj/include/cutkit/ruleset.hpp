#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutkit/errors.hpp"

namespace cutkit {

// Largest cut-number accepted in explicit ruleset text.
inline constexpr int kMaxExplicitCut = 1'000'000;

enum class TailKind : std::uint8_t { None, AllFrom, OddFrom };

// A set of cut-numbers: a finite base, optionally extended by an infinite
// tail ("every integer >= t" or "every odd integer >= t").  A move with
// cut-number c splits one heap into exactly c+1 nonempty heaps, so a heap of
// size n admits cut c only when c <= n-1.
class RulesetSpec {
 public:
  // Text form: comma-separated cut-numbers, optionally ending in
  // "all>=T" or "odd>=T" (a tail may also stand alone, e.g. "all>=4").
  static RulesetSpec parse(std::string_view text);
  static RulesetSpec from_cuts(std::vector<int> base, TailKind tail = TailKind::None,
                               int tail_from = 0);

  const std::vector<int>& base() const noexcept { return base_; }
  TailKind tail() const noexcept { return tail_; }
  int tail_from() const noexcept { return tail_from_; }
  bool finite() const noexcept { return tail_ == TailKind::None; }

  bool contains(int c) const noexcept;
  int min_cut() const noexcept;
  int max_cut() const;  // throws InfiniteRuleset when a tail is present

  // All cut-numbers usable on a heap of size n, ascending.  Empty for n=1.
  std::vector<int> cuts_for(int n) const;

  std::string text() const;

  friend bool operator==(const RulesetSpec&, const RulesetSpec&) = default;

 private:
  RulesetSpec() = default;

  std::vector<int> base_;  // strictly increasing; all < tail_from_ when tail present
  TailKind tail_ = TailKind::None;
  int tail_from_ = 0;  // normalized odd for OddFrom
};

struct FamilyClass {
  enum class Tag : std::uint8_t {
    AllOddWithOne,        // 1 present, every cut odd
    MinAtLeastTwo,        // smallest cut >= 2 (param = smallest cut)
    ContainsOneTwoThree,  // {1,2,3} subset of the cut set
    OneThreeTwoK,         // exactly {1,3,2k} with k >= 2 (param = k)
    OneEvenC,             // exactly {1,c} with c even >= 4 (param = c)
    General,
  };

  Tag tag = Tag::General;
  int param = 0;

  friend bool operator==(const FamilyClass&, const FamilyClass&) = default;
};

// Most specific family first; a set matching several patterns gets the
// earliest applicable tag in the order AllOddWithOne, ContainsOneTwoThree,
// OneThreeTwoK, OneEvenC, MinAtLeastTwo, General.
FamilyClass classify(const RulesetSpec& spec);

// Code of the equivalent take-and-break game played on a heap one smaller:
// digit d_c = 2^(c+2)-1 when c is a cut-number, 0 otherwise.
struct TakeBreakCode {
  std::vector<std::uint64_t> digits;  // digits[i] is d_{i+1}

  std::string text() const;  // "0.7,15"
  // Compact form when every digit fits one hexadecimal digit, e.g. "0.7F".
  std::optional<std::string> hex_text() const;

  friend bool operator==(const TakeBreakCode&, const TakeBreakCode&) = default;
};

// Finite rulesets only (InfiniteRuleset otherwise).  Digits are stored as
// 64-bit integers, so the largest convertible cut-number is 62
// (CapacityExceeded beyond).
TakeBreakCode to_take_and_break(const RulesetSpec& spec);

}  // namespace cutkit
