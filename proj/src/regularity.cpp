#include "cutkit/regularity.hpp"

#include <algorithm>
#include <bit>

#include "json.hpp"

namespace cutkit {

std::optional<RegularityHypothesis> detect(const GrundyTable& table, int max_p, int max_n0) {
  const int n_max = table.size();
  if (max_p < 1 || n_max < 4 * max_p) {
    throw Error(ErrorCode::TableTooShort, "need a table of length at least 4*max_p");
  }
  if (max_n0 < 0) max_n0 = 0;
  const auto g = table.values();  // g[i] = G(i+1)
  auto diff = [&](int n, int p) {
    return static_cast<std::int64_t>(g[static_cast<std::size_t>(n - 1 + p)]) -
           static_cast<std::int64_t>(g[static_cast<std::size_t>(n - 1)]);
  };
  for (int p = 1; p <= max_p; ++p) {
    const int top = n_max - p;
    const std::int64_t s = diff(top, p);
    if (s < 0) continue;
    int n0 = top - 1;
    while (n0 >= 1 && diff(n0, p) == s) --n0;
    if (n0 > max_n0) continue;
    if (top - n0 < 3 * p) continue;
    return RegularityHypothesis{n0, p, static_cast<GrundyValue>(s),
                                HypothesisSource::Detected};
  }
  return std::nullopt;
}

std::optional<RegularityHypothesis> detect(const GrundyTable& table) {
  return detect(table, table.size() / 8, table.size() / 4);
}

namespace {

bool contains_all_below(const ValueSet& set, GrundyValue bound) {
  const auto w = set.words();
  const std::size_t full = bound / 64;
  if (w.size() * 64 < bound) return false;
  for (std::size_t k = 0; k < full; ++k) {
    if (w[k] != ~std::uint64_t{0}) return false;
  }
  if (const unsigned rest = bound % 64; rest != 0) {
    if (~w[full] & ((std::uint64_t{1} << rest) - 1)) return false;
  }
  return true;
}

bool ap3_direct(const GrundyTable& table, int p, GrundyValue s) {
  for (int n = 3 * p + 1; n <= 4 * p; ++n) {
    if (!contains_all_below(table.reach2plus(n), s)) return false;
  }
  return true;
}

bool check_ap3(const RulesetSpec& spec, const GrundyTable& table, int p, GrundyValue s,
               Ap3Method& method) {
  if (table.has_reach2plus(4 * p)) {
    if (ap3_direct(table, p, s)) {
      method = Ap3Method::Direct;
      return true;
    }
    return false;
  }
  if (ap3_via_parities(spec, p)) {
    method = Ap3Method::ParityPair;
    return true;
  }
  try {
    if (ap3_via_pair(spec, table, p)) {
      method = Ap3Method::OneEvenPair;
      return true;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotApplicableRuleset) throw;
  }
  return false;
}

}  // namespace

bool ap3_via_parities(const RulesetSpec& spec, int p) {
  if (p < 1) throw Error(ErrorCode::OutOfRange, "period must be at least 1");
  bool even = false, odd = false;
  for (int c = 2; c <= 2 * p + 1 && !(even && odd); ++c) {
    if (!spec.contains(c)) continue;
    (c % 2 == 0 ? even : odd) = true;
  }
  return even && odd;
}

bool ap3_via_pair(const RulesetSpec& spec, const GrundyTable& table, int p) {
  const auto& base = spec.base();
  const bool shaped =
      spec.finite() && base.size() == 2 && base[0] == 1 && base[1] % 2 == 0 && base[1] >= 4;
  if (!shaped || base[1] > p) {
    throw Error(ErrorCode::NotApplicableRuleset,
                "applies only to {1, c} with c even, 4 <= c <= p");
  }
  const int c = base[1];
  if (p >= 4 * c + 3) return true;
  const int half = std::min(p / 2, table.size());
  for (int x1 = 1; x1 <= half; ++x1) {
    for (int x2 = x1 + 1; x2 <= half; ++x2) {
      if ((x1 + x2) % 2 == 1 && table.value(x1) == table.value(x2)) return true;
    }
  }
  return false;
}

std::string APReport::verdict_text() const {
  if (verdict == ApVerdict::Proven) return "Proven";
  switch (fail_reason) {
    case ApFailReason::NoCandidatePeriod:
      return "Failed(NoCandidatePeriod)";
    case ApFailReason::MaxCutBeyond4P:
      return "Failed(MaxCutBeyond4P)";
    case ApFailReason::None:
      break;
  }
  return "Failed";
}

std::string APReport::to_json() const {
  nlohmann::ordered_json j;
  j["ruleset"] = ruleset;
  j["p"] = p;
  j["t"] = t;
  j["s"] = s;
  j["ap1"] = ap1;
  j["ap2"] = ap2;
  j["ap3"] = ap3;
  switch (ap3_method) {
    case Ap3Method::None: j["ap3_method"] = "none"; break;
    case Ap3Method::Direct: j["ap3_method"] = "direct"; break;
    case Ap3Method::ParityPair: j["ap3_method"] = "parity_pair"; break;
    case Ap3Method::OneEvenPair: j["ap3_method"] = "one_even_pair"; break;
  }
  j["thm_condition"] = thm_condition;
  j["verdict"] = verdict_text();
  j["checked_N"] = checked_n;
  return j.dump();
}

APReport ap_test(const RulesetSpec& spec, const GrundyTable& table) {
  if (!spec.finite()) {
    throw Error(ErrorCode::InfiniteRuleset, "the test needs a largest cut-number");
  }
  const int n_max = table.size();
  if (n_max < 4) throw Error(ErrorCode::TableTooShort, "need a table of length at least 4");

  APReport report;
  report.ruleset = spec.text();
  report.checked_n = n_max;
  const auto g = table.values();

  for (int p = 1; p <= n_max / 4; ++p) {
    // The saltus is forced: s = G(1+p) - G(1), a power of two in [1, p].
    const std::int64_t s64 = static_cast<std::int64_t>(g[static_cast<std::size_t>(p)]) - g[0];
    if (s64 < 1 || s64 > p) continue;
    const auto s = static_cast<GrundyValue>(s64);
    if (!std::has_single_bit(s)) continue;

    bool ap1 = true;
    for (int n = 1; n <= 3 * p; ++n) {
      if (g[static_cast<std::size_t>(n - 1 + p)] != g[static_cast<std::size_t>(n - 1)] + s) {
        ap1 = false;
        break;
      }
    }
    if (!ap1) continue;

    ValueSet seen;
    bool ap2 = true;
    for (int n = 1; n <= p && ap2; ++n) {
      if (g[static_cast<std::size_t>(n - 1)] >= s) ap2 = false;
      seen.insert(g[static_cast<std::size_t>(n - 1)]);
    }
    if (!ap2 || seen.size() != s) continue;

    Ap3Method method = Ap3Method::None;
    if (!check_ap3(spec, table, p, s, method)) continue;

    report.p = p;
    report.t = std::countr_zero(s);
    report.s = s;
    report.ap1 = report.ap2 = report.ap3 = true;
    report.ap3_method = method;
    report.thm_condition = spec.max_cut() <= 4 * p;
    if (report.thm_condition) {
      report.verdict = ApVerdict::Proven;
      report.fail_reason = ApFailReason::None;
    } else {
      report.verdict = ApVerdict::Failed;
      report.fail_reason = ApFailReason::MaxCutBeyond4P;
    }
    return report;
  }

  report.verdict = ApVerdict::Failed;
  report.fail_reason = ApFailReason::NoCandidatePeriod;
  return report;
}

std::optional<std::pair<RegularityHypothesis, APReport>> certify(const RulesetSpec& spec,
                                                                 const GrundyTable& table) {
  APReport report = ap_test(spec, table);
  if (report.verdict != ApVerdict::Proven) return std::nullopt;
  RegularityHypothesis hyp{0, report.p, report.s, HypothesisSource::Certified};
  return std::make_pair(hyp, std::move(report));
}

}  // namespace cutkit
