#include "cutkit/cli.hpp"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cutkit/closedform.hpp"
#include "cutkit/engine.hpp"
#include "cutkit/play.hpp"
#include "cutkit/regularity.hpp"
#include "cutkit/ruleset.hpp"
#include "cutkit/tables.hpp"

namespace cutkit {

namespace {

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CUTKIT_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

const char* ap3_method_text(Ap3Method method) {
  switch (method) {
    case Ap3Method::None: return "none";
    case Ap3Method::Direct: return "direct";
    case Ap3Method::ParityPair: return "parity-pair";
    case Ap3Method::OneEvenPair: return "one-even-pair";
  }
  return "?";
}

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

std::string prefix_text(const std::vector<GrundyValue>& prefix) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) os << ',';
    os << prefix[i];
  }
  os << ')';
  return os.str();
}

void emit_values(std::ostream& out, const RulesetSpec& spec, std::span<const GrundyValue> g,
                 const std::string& format) {
  if (format == "csv") {
    out << "n,grundy\n";
    for (std::size_t i = 0; i < g.size(); ++i) out << i + 1 << ',' << g[i] << '\n';
  } else if (format == "json") {
    nlohmann::ordered_json j;
    j["ruleset"] = spec.text();
    j["values"] = std::vector<GrundyValue>(g.begin(), g.end());
    out << j.dump() << '\n';
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) out << ' ';
      out << g[i];
    }
    out << '\n';
  }
}

int cmd_seq(std::ostream& out, const std::string& cuts, int n, const std::string& format,
            int threads) {
  const RulesetSpec spec = RulesetSpec::parse(cuts);
  const GrundyTable table =
      compute_table(spec, n, EngineOptions{.threads = threads, .reach2plus_limit = 0});
  emit_values(out, spec, table.values(), format);
  return 0;
}

int cmd_detect(std::ostream& out, const std::string& cuts, int n, int max_p, int max_n0,
               const std::string& format, int threads) {
  const RulesetSpec spec = RulesetSpec::parse(cuts);
  const GrundyTable table =
      compute_table(spec, n, EngineOptions{.threads = threads, .reach2plus_limit = 0});
  if (max_p <= 0) max_p = n / 8;
  if (max_n0 < 0) max_n0 = n / 4;
  const auto hyp = detect(table, max_p, max_n0);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["ruleset"] = spec.text();
    j["found"] = hyp.has_value();
    if (hyp) {
      j["n0"] = hyp->n0;
      j["p"] = hyp->p;
      j["saltus"] = hyp->saltus;
    }
    j["checked_N"] = n;
    out << j.dump() << '\n';
    return 0;
  }
  if (format == "csv") {
    out << "n0,p,saltus\n";
    if (hyp) out << hyp->n0 << ',' << hyp->p << ',' << hyp->saltus << '\n';
    return 0;
  }
  if (!hyp) {
    out << "no regularity found within bounds (max_p=" << max_p << ", max_n0=" << max_n0
        << ", N=" << n << ")\n";
    return 0;
  }
  const char* kind = hyp->saltus > 0 ? "arithmetic-periodic" : "periodic";
  if (hyp->n0 == 0) {
    out << "purely " << kind << ": p=" << hyp->p;
  } else {
    out << "ultimately " << kind << ": n0=" << hyp->n0 << " p=" << hyp->p;
  }
  if (hyp->saltus > 0) out << " saltus=" << hyp->saltus;
  out << " (checked to N=" << n << ")\n";
  return 0;
}

int cmd_aptest(std::ostream& out, const std::string& cuts, int n, const std::string& format,
               int threads) {
  const RulesetSpec spec = RulesetSpec::parse(cuts);
  const GrundyTable table = compute_table(spec, n, EngineOptions{.threads = threads});
  const APReport report = ap_test(spec, table);
  if (format == "json") {
    out << report.to_json() << '\n';
    return 0;
  }
  if (format == "csv") {
    out << "p,t,s,ap1,ap2,ap3,thm,verdict\n"
        << report.p << ',' << report.t << ',' << report.s << ',' << report.ap1 << ','
        << report.ap2 << ',' << report.ap3 << ',' << report.thm_condition << ','
        << report.verdict_text() << '\n';
    return 0;
  }
  out << report.ruleset << ": " << report.verdict_text() << '\n';
  if (report.p > 0) {
    out << "  p=" << report.p << " saltus=" << report.s << " (2^" << report.t << ")"
        << " ap1=" << pass_fail(report.ap1) << " ap2=" << pass_fail(report.ap2)
        << " ap3=" << pass_fail(report.ap3);
    if (report.ap3) out << " via " << ap3_method_text(report.ap3_method);
    out << " max-cut<=4p=" << pass_fail(report.thm_condition)
        << " checked-N=" << report.checked_n << '\n';
  } else {
    out << "  no period up to N/4 passes all three conditions (checked-N=" << report.checked_n
        << ")\n";
  }
  return 0;
}

int cmd_convert(std::ostream& out, const std::string& cuts, const std::string& format) {
  const RulesetSpec spec = RulesetSpec::parse(cuts);
  const TakeBreakCode code = to_take_and_break(spec);
  const auto hex = code.hex_text();
  if (format == "json") {
    nlohmann::ordered_json j;
    j["ruleset"] = spec.text();
    j["code"] = code.text();
    if (hex) j["hex"] = *hex;
    out << j.dump() << '\n';
    return 0;
  }
  out << code.text();
  if (hex && *hex != code.text()) out << " (hexadecimal " << *hex << ")";
  out << '\n';
  return 0;
}

int cmd_solve(std::ostream& out, const std::string& cuts, const std::vector<int>& heaps,
              const std::string& format, int threads) {
  const RulesetSpec spec = RulesetSpec::parse(cuts);
  const Position position = Position::of(heaps);
  const int n_auto = position.heaps.back();
  const GrundyTable table =
      compute_table(spec, n_auto, EngineOptions{.threads = threads, .reach2plus_limit = 0});
  const GrundyValue value = position_value(position, table);
  const auto move = best_move(position, table);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["ruleset"] = spec.text();
    j["position"] = position.heaps;
    j["value"] = value;
    j["outcome"] = value == 0 ? "previous" : "first";
    if (move) {
      nlohmann::ordered_json m;
      m["heap"] = position.heaps[static_cast<std::size_t>(move->heap_index)];
      m["cut"] = move->cut;
      m["parts"] = move->parts;
      j["move"] = m;
    }
    out << j.dump() << '\n';
    return 0;
  }
  if (value == 0 || !move) {
    out << "previous player wins\n";
    return 0;
  }
  out << "first player wins: split " << position.heaps[static_cast<std::size_t>(move->heap_index)]
      << " -> ";
  for (std::size_t i = 0; i < move->parts.size(); ++i) {
    if (i) out << '+';
    out << move->parts[i];
  }
  out << '\n';
  return 0;
}

int cmd_table(std::ostream& out, const std::string& which, const std::string& format,
              int threads) {
  std::vector<tables::RowResult> results;
  std::vector<std::string> expected;
  if (which == "ap") {
    results = tables::run_ap_rows(threads);
    for (const auto& row : tables::ap_rows()) {
      expected.push_back("p=" + std::to_string(row.p) + " saltus=" + std::to_string(row.s));
    }
  } else {
    results = tables::run_solved_rows(2000, threads);
    for (const auto& row : tables::solved_rows()) {
      expected.push_back(prefix_text(row.prefix) + " (+" + std::to_string(row.saltus) + ")");
    }
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass;
  const bool all_pass = passed == results.size();

  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      nlohmann::ordered_json j;
      j["cuts"] = results[i].cuts;
      j["expected"] = expected[i];
      j["pass"] = results[i].pass;
      j["detail"] = results[i].detail;
      arr.push_back(std::move(j));
    }
    out << arr.dump() << '\n';
    return all_pass ? 0 : 1;
  }
  if (format == "csv") {
    out << "cuts,expected,pass\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      out << '"' << results[i].cuts << "\",\"" << expected[i] << "\","
          << (results[i].pass ? "PASS" : "FAIL") << '\n';
    }
    return all_pass ? 0 : 1;
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << '{' << results[i].cuts << "}  expected " << expected[i] << "  ["
        << (results[i].pass ? "PASS" : "FAIL") << "]  " << results[i].detail << '\n';
  }
  out << passed << '/' << results.size() << " rows pass\n";
  return all_pass ? 0 : 1;
}

int cmd_plot(std::ostream& out, const std::string& cuts, int n, int window, int threads) {
  const RulesetSpec spec = RulesetSpec::parse(cuts);
  const GrundyTable table =
      compute_table(spec, n, EngineOptions{.threads = threads, .reach2plus_limit = 0});
  const auto g = table.values();
  out << "n,grundy\n";
  for (std::size_t i = 0; i < g.size(); ++i) out << i + 1 << ',' << g[i] << '\n';
  if (window > 0) {
    GrundyValue running_max = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i > 0 && running_max > static_cast<GrundyValue>(window) &&
          g[i] < running_max - static_cast<GrundyValue>(window)) {
        out << "# dropout n=" << i + 1 << " grundy=" << g[i] << " running-max=" << running_max
            << '\n';
      }
      running_max = std::max(running_max, g[i]);
    }
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CUT partition games: value tables, regularity analysis, conversions, play"};
  app.name("cutkit");
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"plain", "csv", "json"});

  std::string cuts, format = "plain", which;
  int n = 0, threads = 0, max_p = 0, max_n0 = -1, window = 0;
  std::vector<int> heaps;

  auto add_cuts = [&](CLI::App* sub) {
    sub->add_option("-c,--cuts", cuts, "ruleset: comma-separated cut-numbers, optional trailing all>=T or odd>=T")
        ->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(format_check);
    sub->add_option("--threads", threads, "worker threads (or env CUTKIT_THREADS; default 1)");
  };

  CLI::App* seq = app.add_subcommand("seq", "print G(1..n)");
  add_cuts(seq);
  seq->add_option("-n,--max-heap", n, "largest heap size")->required();
  add_common(seq);

  CLI::App* det = app.add_subcommand("detect", "scan for (ultimate) arithmetic periodicity");
  add_cuts(det);
  det->add_option("-n,--max-heap", n, "table length to scan")->required();
  det->add_option("--max-p", max_p, "largest period tried (default n/8)");
  det->add_option("--max-n0", max_n0, "largest preperiod accepted (default n/4)");
  add_common(det);

  CLI::App* ap = app.add_subcommand("aptest", "run the three-condition arithmetic-periodicity test");
  add_cuts(ap);
  ap->add_option("-n,--max-heap", n, "table length to test on")->required();
  add_common(ap);

  CLI::App* conv = app.add_subcommand("convert", "print the equivalent take-and-break code");
  add_cuts(conv);
  conv->add_option("--format", format, "output format")->check(format_check);

  CLI::App* solve = app.add_subcommand("solve", "outcome and a winning move for a position");
  add_cuts(solve);
  solve->add_option("-p,--position", heaps, "heap sizes")->required()->delimiter(',');
  solve->add_option("--format", format, "output format")->check(format_check);
  solve->add_option("--threads", threads, "worker threads (or env CUTKIT_THREADS; default 1)");

  CLI::App* tab = app.add_subcommand("table", "recompute and verify the bundled result tables");
  tab->add_option("which", which, "solved | ap")->required()->check(CLI::IsMember({"solved", "ap"}));
  add_common(tab);

  CLI::App* plot = app.add_subcommand("plot", "CSV scatter data for the value sequence");
  add_cuts(plot);
  plot->add_option("-n,--max-heap", n, "largest heap size")->required();
  plot->add_flag("--dropouts{10}", window,
                 "mark values below the running maximum minus a window (default 10)");
  plot->add_option("--threads", threads, "worker threads (or env CUTKIT_THREADS; default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const int t = resolve_threads(threads);
    if (*seq) return cmd_seq(out, cuts, n, format, t);
    if (*det) return cmd_detect(out, cuts, n, max_p, max_n0, format, t);
    if (*ap) return cmd_aptest(out, cuts, n, format, t);
    if (*conv) return cmd_convert(out, cuts, format);
    if (*solve) return cmd_solve(out, cuts, heaps, format, t);
    if (*tab) return cmd_table(out, which, format, t);
    if (*plot) return cmd_plot(out, cuts, n, window, t);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cutkit
