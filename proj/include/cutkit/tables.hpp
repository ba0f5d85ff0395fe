#pragma once

#include <string>
#include <vector>

#include "cutkit/engine.hpp"

namespace cutkit::tables {

// Rulesets with a proven purely arithmetic-periodic value sequence, with the
// expected period, saltus, and full one-period prefix.
struct ApRow {
  std::string cuts;
  int p = 0;
  GrundyValue s = 0;
  std::vector<GrundyValue> prefix;
};

const std::vector<ApRow>& ap_rows();

// Families solved in closed form, with the expected repeating prefix and
// saltus describing the whole sequence: G(n) = saltus*q + prefix[r-1].
struct SolvedRow {
  std::string cuts;
  std::vector<GrundyValue> prefix;
  GrundyValue saltus = 0;
};

const std::vector<SolvedRow>& solved_rows();

struct RowResult {
  std::string cuts;
  bool pass = false;
  std::string detail;  // human-readable summary or failure reason
};

// Certifies each ApRow at table length 8p and checks period, saltus, prefix,
// and the shift law over the whole table.
std::vector<RowResult> run_ap_rows(int threads);

// Checks each SolvedRow against a computed table of the given length, and
// cross-checks that the empirical detector finds a hypothesis describing the
// same sequence.
std::vector<RowResult> run_solved_rows(int n_check, int threads);

}  // namespace cutkit::tables
