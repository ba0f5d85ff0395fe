#include "cutkit/ruleset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cutkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view token, std::string_view what) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw Error(ErrorCode::CapacityExceeded, std::string(what) + " out of range: '" +
                                                 std::string(token) + "'");
  }
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::MalformedText,
                "expected an integer " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  if (value < 1) {
    throw Error(ErrorCode::NonPositiveCut,
                std::string(what) + " must be positive, got " + std::to_string(value));
  }
  if (value > kMaxExplicitCut) {
    throw Error(ErrorCode::CapacityExceeded, std::string(what) + " " + std::to_string(value) +
                                                 " exceeds the supported maximum " +
                                                 std::to_string(kMaxExplicitCut));
  }
  return static_cast<int>(value);
}

}  // namespace

RulesetSpec RulesetSpec::parse(std::string_view text) {
  std::vector<int> base;
  TailKind tail = TailKind::None;
  int tail_from = 0;

  std::string_view rest = trim(text);
  if (rest.empty()) throw Error(ErrorCode::EmptyRuleset, "ruleset text is empty");

  bool done = false;
  while (!done) {
    std::string_view token;
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos) {
      token = rest;
      done = true;
    } else {
      token = rest.substr(0, comma);
      rest.remove_prefix(comma + 1);
    }
    token = trim(token);
    if (token.empty()) throw Error(ErrorCode::MalformedText, "empty element in ruleset text");

    TailKind kind = TailKind::None;
    if (token.starts_with("all>=")) kind = TailKind::AllFrom;
    if (token.starts_with("odd>=")) kind = TailKind::OddFrom;
    if (kind != TailKind::None) {
      if (tail != TailKind::None) {
        throw Error(ErrorCode::MalformedText, "more than one tail in ruleset text");
      }
      if (!done) {
        throw Error(ErrorCode::MalformedText, "tail must be the last element");
      }
      tail = kind;
      tail_from = parse_int(token.substr(5), "tail threshold");
    } else {
      base.push_back(parse_int(token, "cut-number"));
    }
  }

  return from_cuts(std::move(base), tail, tail_from);
}

RulesetSpec RulesetSpec::from_cuts(std::vector<int> base, TailKind tail, int tail_from) {
  for (int c : base) {
    if (c < 1) {
      throw Error(ErrorCode::NonPositiveCut, "cut-number must be positive, got " +
                                                 std::to_string(c));
    }
    if (c > kMaxExplicitCut) {
      throw Error(ErrorCode::CapacityExceeded,
                  "cut-number " + std::to_string(c) + " exceeds the supported maximum");
    }
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());

  if (tail == TailKind::None) {
    tail_from = 0;
    if (base.empty()) throw Error(ErrorCode::EmptyRuleset, "no cut-numbers given");
  } else {
    if (tail_from < 1) {
      throw Error(ErrorCode::NonPositiveCut, "tail threshold must be positive");
    }
    if (tail == TailKind::OddFrom && tail_from % 2 == 0) tail_from += 1;
    if (!base.empty() && base.back() >= tail_from) {
      throw Error(ErrorCode::TailOverlap, "base cut " + std::to_string(base.back()) +
                                              " is not below the tail threshold " +
                                              std::to_string(tail_from));
    }
  }

  RulesetSpec spec;
  spec.base_ = std::move(base);
  spec.tail_ = tail;
  spec.tail_from_ = tail_from;
  return spec;
}

bool RulesetSpec::contains(int c) const noexcept {
  if (c < 1) return false;
  if (std::binary_search(base_.begin(), base_.end(), c)) return true;
  switch (tail_) {
    case TailKind::AllFrom: return c >= tail_from_;
    case TailKind::OddFrom: return c >= tail_from_ && c % 2 == 1;
    case TailKind::None: return false;
  }
  return false;
}

int RulesetSpec::min_cut() const noexcept {
  return base_.empty() ? tail_from_ : base_.front();
}

int RulesetSpec::max_cut() const {
  if (!finite()) throw Error(ErrorCode::InfiniteRuleset, "ruleset has no largest cut-number");
  return base_.back();
}

std::vector<int> RulesetSpec::cuts_for(int n) const {
  std::vector<int> out;
  for (int c : base_) {
    if (c > n - 1) break;
    out.push_back(c);
  }
  if (tail_ == TailKind::AllFrom) {
    for (int c = tail_from_; c <= n - 1; ++c) out.push_back(c);
  } else if (tail_ == TailKind::OddFrom) {
    for (int c = tail_from_; c <= n - 1; c += 2) out.push_back(c);
  }
  return out;
}

std::string RulesetSpec::text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (i) os << ',';
    os << base_[i];
  }
  if (tail_ != TailKind::None) {
    if (!base_.empty()) os << ',';
    os << (tail_ == TailKind::AllFrom ? "all>=" : "odd>=") << tail_from_;
  }
  return os.str();
}

FamilyClass classify(const RulesetSpec& spec) {
  const auto& base = spec.base();

  const bool base_all_odd =
      std::all_of(base.begin(), base.end(), [](int c) { return c % 2 == 1; });
  const bool all_odd = base_all_odd && spec.tail() != TailKind::AllFrom;
  if (spec.contains(1) && all_odd) return {FamilyClass::Tag::AllOddWithOne, 0};

  if (spec.contains(1) && spec.contains(2) && spec.contains(3)) {
    return {FamilyClass::Tag::ContainsOneTwoThree, 0};
  }

  if (spec.finite() && base.size() == 3 && base[0] == 1 && base[1] == 3 && base[2] % 2 == 0) {
    return {FamilyClass::Tag::OneThreeTwoK, base[2] / 2};
  }

  if (spec.finite() && base.size() == 2 && base[0] == 1 && base[1] >= 4 && base[1] % 2 == 0) {
    return {FamilyClass::Tag::OneEvenC, base[1]};
  }

  if (spec.min_cut() >= 2) return {FamilyClass::Tag::MinAtLeastTwo, spec.min_cut()};

  return {FamilyClass::Tag::General, 0};
}

std::string TakeBreakCode::text() const {
  std::ostringstream os;
  os << "0.";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) os << ',';
    os << digits[i];
  }
  return os.str();
}

std::optional<std::string> TakeBreakCode::hex_text() const {
  std::string out = "0.";
  for (std::uint64_t d : digits) {
    if (d > 15) return std::nullopt;
    out += "0123456789ABCDEF"[d];
  }
  return out;
}

TakeBreakCode to_take_and_break(const RulesetSpec& spec) {
  const int max = spec.max_cut();  // throws InfiniteRuleset for tails
  if (max > 62) {
    throw Error(ErrorCode::CapacityExceeded,
                "digit for cut-number " + std::to_string(max) + " does not fit 64 bits");
  }
  TakeBreakCode code;
  code.digits.assign(static_cast<std::size_t>(max), 0);
  for (int c : spec.base()) {
    // Bits 0..c+1: removing c beans may leave any number of heaps up to c+1.
    // c = 62 needs all 64 bits, where the plain shift would overflow.
    code.digits[static_cast<std::size_t>(c) - 1] =
        c + 2 >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (c + 2)) - 1;
  }
  return code;
}

}  // namespace cutkit
