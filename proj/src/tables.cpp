#include "cutkit/tables.hpp"

#include <algorithm>
#include <sstream>

#include "cutkit/closedform.hpp"
#include "cutkit/regularity.hpp"

namespace cutkit::tables {

namespace {

void rep_pair(std::vector<GrundyValue>& v, GrundyValue a, GrundyValue b, int times) {
  for (int i = 0; i < times; ++i) {
    v.push_back(a);
    v.push_back(b);
  }
}

std::vector<GrundyValue> alt01(int k) {
  std::vector<GrundyValue> v;
  rep_pair(v, 0, 1, k);
  return v;
}

// One-period prefix shared by the {1, 2m} family (period 12m).
std::vector<GrundyValue> one_even_prefix(int m) {
  std::vector<GrundyValue> v;
  rep_pair(v, 0, 1, m);
  rep_pair(v, 2, 3, m);
  v.push_back(1);
  v.push_back(4);
  rep_pair(v, 5, 4, m - 1);
  rep_pair(v, 3, 2, m);
  rep_pair(v, 4, 5, m);
  rep_pair(v, 6, 7, m);
  return v;
}

std::string cuts_text(std::vector<int> cuts) {
  std::sort(cuts.begin(), cuts.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (i) os << ',';
    os << cuts[i];
  }
  return os.str();
}

// Appends one row for core + each admissible subset of extras.  A subset is
// admissible when it intersects `required` (empty `required` admits every
// subset).
void add_family(std::vector<ApRow>& rows, const std::vector<int>& core,
                const std::vector<int>& extras, const std::vector<int>& required, int p,
                GrundyValue s, const std::vector<GrundyValue>& prefix) {
  const unsigned k = static_cast<unsigned>(extras.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> cuts = core;
    bool hit = required.empty();
    for (unsigned i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      cuts.push_back(extras[i]);
      if (!hit && std::find(required.begin(), required.end(), extras[i]) != required.end()) {
        hit = true;
      }
    }
    if (!hit) continue;
    rows.push_back({cuts_text(std::move(cuts)), p, s, prefix});
  }
}

std::vector<ApRow> build_ap_rows() {
  std::vector<ApRow> rows;
  const std::vector<int> none;

  add_family(rows, {1, 4}, {6, 8, 10}, none, 24, 8, one_even_prefix(2));
  add_family(rows, {1, 6}, {8, 10}, none, 36, 8, one_even_prefix(3));
  rows.push_back({"1,8", 48, 8, one_even_prefix(4)});
  rows.push_back({"1,10", 60, 8, one_even_prefix(5)});

  add_family(rows, {1, 4}, {3, 5, 6, 7, 8}, {3, 5, 7}, 4, 2, alt01(2));
  add_family(rows, {1, 6}, {3, 5, 7, 8}, {3, 5, 7}, 6, 2, alt01(3));
  add_family(rows, {1, 8}, {3, 5, 7}, {3, 5, 7}, 8, 2, alt01(4));

  const std::vector<GrundyValue> p124 = {0, 1, 2, 3, 1, 4, 3, 2, 4, 5, 6, 7};
  const std::vector<GrundyValue> p125 = {0, 1, 2, 3, 1, 4, 3, 6, 4, 5, 6, 7};
  add_family(rows, {1, 2, 4}, {6, 7, 8}, none, 12, 8, p124);
  add_family(rows, {1, 2, 6}, {7, 8}, none, 12, 8, p124);
  add_family(rows, {1, 2, 5}, {4, 6, 7, 8}, none, 12, 8, p125);

  rows.push_back({"1,2,7", 28, 16,
                  {0, 1, 2,  3,  1, 4,  3,  2,  4,  5,  6,  7,  8,  9,
                   7, 6, 9,  8,  11, 10, 12, 13, 10, 11, 13, 12, 15, 14}});
  rows.push_back({"1,4,9", 40, 16,
                  {0, 1, 0,  1,  2,  3,  2,  3,  1,  4,  5,  4,  3,  6,
                   7, 6, 4,  5,  8,  9,  6,  7,  10, 11, 9,  8,  9,  12,
                   11, 10, 11, 14, 12, 13, 12, 13, 14, 15, 14, 15}});
  return rows;
}

const char* family_name(FamilyClass::Tag tag) {
  switch (tag) {
    case FamilyClass::Tag::AllOddWithOne: return "AllOddWithOne";
    case FamilyClass::Tag::MinAtLeastTwo: return "MinAtLeastTwo";
    case FamilyClass::Tag::ContainsOneTwoThree: return "ContainsOneTwoThree";
    case FamilyClass::Tag::OneThreeTwoK: return "OneThreeTwoK";
    case FamilyClass::Tag::OneEvenC: return "OneEvenC";
    case FamilyClass::Tag::General: return "General";
  }
  return "?";
}

std::vector<GrundyValue> zeros(int k) { return std::vector<GrundyValue>(static_cast<std::size_t>(k), 0); }

std::vector<SolvedRow> build_solved_rows() {
  std::vector<SolvedRow> rows;
  rows.push_back({"1", alt01(1), 0});
  rows.push_back({"1,3", alt01(1), 0});
  rows.push_back({"1,5,9", alt01(1), 0});
  rows.push_back({"1,odd>=3", alt01(1), 0});
  rows.push_back({"2", zeros(2), 1});
  rows.push_back({"3", zeros(3), 1});
  rows.push_back({"2,7", zeros(2), 1});
  rows.push_back({"all>=4", zeros(4), 1});
  rows.push_back({"1,2,3", zeros(1), 1});
  rows.push_back({"1,2,3,6", zeros(1), 1});
  for (int k = 1; k <= 6; ++k) {
    rows.push_back({cuts_text({1, 3, 2 * k}), alt01(k), 2});
  }
  return rows;
}

}  // namespace

const std::vector<ApRow>& ap_rows() {
  static const std::vector<ApRow> rows = build_ap_rows();
  return rows;
}

const std::vector<SolvedRow>& solved_rows() {
  static const std::vector<SolvedRow> rows = build_solved_rows();
  return rows;
}

std::vector<RowResult> run_ap_rows(int threads) {
  std::vector<RowResult> results;
  results.reserve(ap_rows().size());
  for (const ApRow& row : ap_rows()) {
    RowResult res;
    res.cuts = row.cuts;
    const RulesetSpec spec = RulesetSpec::parse(row.cuts);
    const int n_max = 8 * row.p;
    const GrundyTable table = compute_table(spec, n_max, threads);
    const auto g = table.values();
    std::ostringstream detail;

    const auto cert = certify(spec, table);
    if (!cert) {
      res.detail = "certification failed: " + ap_test(spec, table).verdict_text();
      results.push_back(std::move(res));
      continue;
    }
    const auto& [hyp, report] = *cert;
    if (hyp.p != row.p || hyp.saltus != row.s) {
      detail << "expected p=" << row.p << " s=" << row.s << ", proved p=" << hyp.p
             << " s=" << hyp.saltus;
      res.detail = detail.str();
      results.push_back(std::move(res));
      continue;
    }
    bool prefix_ok = true;
    for (int n = 1; n <= row.p; ++n) {
      if (g[static_cast<std::size_t>(n - 1)] != row.prefix[static_cast<std::size_t>(n - 1)]) {
        prefix_ok = false;
        detail << "prefix mismatch at n=" << n;
        break;
      }
    }
    bool shift_ok = true;
    for (int n = 1; prefix_ok && n <= n_max - row.p; ++n) {
      if (g[static_cast<std::size_t>(n - 1 + row.p)] !=
          g[static_cast<std::size_t>(n - 1)] + row.s) {
        shift_ok = false;
        detail << "shift law broken at n=" << n;
        break;
      }
    }
    res.pass = prefix_ok && shift_ok;
    if (res.pass) {
      detail << "p=" << row.p << " s=" << row.s << " proven, prefix and shift law hold to N="
             << n_max;
    }
    res.detail = detail.str();
    results.push_back(std::move(res));
  }
  return results;
}

std::vector<RowResult> run_solved_rows(int n_check, int threads) {
  std::vector<RowResult> results;
  results.reserve(solved_rows().size());
  for (const SolvedRow& row : solved_rows()) {
    RowResult res;
    res.cuts = row.cuts;
    const RulesetSpec spec = RulesetSpec::parse(row.cuts);
    const FamilyClass family = classify(spec);
    const GrundyTable table = compute_table(spec, n_check, threads);
    const int p = static_cast<int>(row.prefix.size());
    std::ostringstream detail;

    bool ok = true;
    for (int n = 1; n <= n_check && ok; ++n) {
      const GrundyValue want = extend(row.prefix, p, row.saltus, n);
      if (table.value(n) != want) {
        detail << "value mismatch at n=" << n << ": table " << table.value(n) << ", formula "
               << want;
        ok = false;
      }
      if (ok) {
        if (const auto cf = closed_form(family, n); cf && *cf != want) {
          detail << "closed form disagrees at n=" << n;
          ok = false;
        }
      }
    }
    if (ok) {
      const auto hyp = detect(table);
      if (!hyp || hyp->n0 != 0 ||
          static_cast<std::int64_t>(row.saltus) * hyp->p !=
              static_cast<std::int64_t>(hyp->saltus) * p) {
        detail << "detector disagrees";
        ok = false;
      } else {
        detail << "family=" << family_name(family.tag) << ", detected p=" << hyp->p
               << " s=" << hyp->saltus << ", checked to N=" << n_check;
      }
    }
    res.pass = ok;
    res.detail = detail.str();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace cutkit::tables
