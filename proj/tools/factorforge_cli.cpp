#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ff/catalog.hpp"
#include "ff/errors.hpp"
#include "ff/recognize.hpp"
#include "ff/report.hpp"

namespace {

using ff::BigCount;
using ff::CaseRecord;
using ff::CaseResult;
using ff::CaseStatus;
using ff::Registry;
using ff::SuiteReport;
using ff::ValidationError;

void write_or_print(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + out_file);
  out << text;
}

std::string verdict_line(const CaseResult& c) {
  std::string line = c.row ? "row " + std::to_string(*c.row) : std::string("case");
  line += " [" + c.l_name + " = " + c.h_name + " * " + c.k_name + "]: ";
  line += ff::to_string(c.status);
  if (c.status == CaseStatus::pass || c.status == CaseStatus::fail) {
    line += " (holds=" + std::string(c.holds ? "yes" : "no") +
            ", index=" + ff::to_decimal(c.index) +
            ", intersection=" + ff::to_decimal(c.intersection_order) + ")";
  }
  if (!c.message.empty()) line += " - " + c.message;
  return line;
}

SuiteReport wrap_single(const CaseResult& c) {
  SuiteReport rep;
  rep.tool = std::string(ff::kToolName) + " " + ff::kToolVersion;
  rep.toolchain = ff::toolchain_stamp();
  rep.cases.push_back(c);
  switch (c.status) {
    case CaseStatus::pass: rep.passed = 1; break;
    case CaseStatus::fail: rep.failed = 1; break;
    case CaseStatus::indeterminate: rep.indeterminate = 1; break;
    case CaseStatus::error: rep.errors = 1; break;
  }
  if (c.searched) rep.rng_seeds.push_back(c.search_seed);
  rep.wall_seconds = c.wall_seconds;
  return rep;
}

void emit_report(const SuiteReport& rep, const std::string& format, const std::string& out_file) {
  if (format.empty()) return;
  std::string text = format == "md" ? ff::report_to_markdown(rep) : ff::report_to_json(rep);
  write_or_print(text, out_file);
}

int cmd_verify(const std::string& data_dir, const std::string& case_file,
               const std::string& format, const std::string& out_file, uint64_t budget_cap) {
  Registry reg(data_dir);
  CaseRecord rec = ff::load_case_record(case_file);
  CaseResult result = ff::run_case(reg, rec, budget_cap);
  std::cerr << verdict_line(result) << "\n";
  SuiteReport rep = wrap_single(result);
  emit_report(rep, format, out_file);
  return ff::exit_code_for(rep);
}

int cmd_table1(const std::string& data_dir, const std::string& rows_spec,
               const std::string& format, const std::string& out_file, unsigned threads,
               uint64_t budget_cap) {
  Registry reg(data_dir);
  std::set<int> rows = ff::parse_rows_spec(rows_spec);
  std::vector<CaseRecord> selected;
  for (CaseRecord& rec : reg.load_cases())
    if (rec.row && rows.count(*rec.row)) selected.push_back(std::move(rec));
  SuiteReport rep = ff::run_cases(reg, selected, threads, budget_cap);
  for (const CaseResult& c : rep.cases) std::cerr << verdict_line(c) << "\n";
  std::cerr << "suite: " << rep.cases.size() << " cases, " << rep.passed << " passed, "
            << rep.failed << " failed, " << rep.errors << " errors, " << rep.indeterminate
            << " indeterminate\n";
  emit_report(rep, format.empty() ? "json" : format, out_file);
  return ff::exit_code_for(rep);
}

int cmd_search(const std::string& data_dir, const std::string& l_name, const std::string& k_name,
               size_t n, uint32_t attempts, uint64_t seed, const std::string& out_file,
               const std::string& out_group) {
  Registry reg(data_dir);
  const ff::GroupHandle& l = reg.group(l_name);
  const ff::GroupHandle& k = reg.group(k_name);
  ff::SearchOutcome out =
      ff::search_factor_subgroup(l.chain, k.chain.generators(), n, attempts, seed);

  nlohmann::ordered_json transcript;
  transcript["L"] = l_name;
  transcript["K"] = k_name;
  transcript["n"] = n;
  transcript["attempts"] = attempts;
  transcript["seed"] = seed;
  transcript["found"] = out.found;
  if (out.found) {
    transcript["attempt"] = out.attempt;
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const ff::Perm& g : out.h_gens) gens.push_back(g.to_cycles());
    transcript["h_generators"] = std::move(gens);
  } else {
    transcript["attempt"] = nullptr;
    transcript["h_generators"] = nullptr;
  }
  write_or_print(transcript.dump(2) + "\n", out_file);

  if (!out.found) {
    std::cerr << "search exhausted after " << out.attempts_tried << " attempts\n";
    return 4;
  }
  std::cerr << "found on attempt " << out.attempt << "\n";

  if (!out_group.empty()) {
    ff::StabChain h = ff::StabChain::build(l.chain.degree(), out.h_gens);
    ff::GroupRecord rec;
    rec.name = std::filesystem::path(out_group).stem().string();
    rec.kind = "perm-asset";
    rec.degree = l.chain.degree();
    rec.expected_order = h.order();
    for (const ff::Perm& g : out.h_gens) rec.cycle_generators.push_back(g.to_cycles());
    rec.provenance = "seeded search inside " + l_name + " against " + k_name +
                     ": n=" + std::to_string(n) + ", seed=" + std::to_string(seed) +
                     ", attempt=" + std::to_string(out.attempt);
    ff::save_group_record(rec, out_group);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifies group factorizations against stored case files"};
  app.set_version_flag("--version", std::string(ff::kToolVersion));
  app.require_subcommand(1);

  std::string data_dir, case_file, format, out_file, rows_spec = "1-28";
  std::string l_name, k_name, out_group;
  unsigned threads = 0;
  uint64_t budget_cap = 0, seed = 1;
  uint32_t attempts = 1000;
  size_t n = 5;

  CLI::App* verify = app.add_subcommand("verify", "verify one case file");
  verify->add_option("case", case_file, "case JSON file")->required();
  verify->add_option("--format", format, "also emit a report: json or md")
      ->check(CLI::IsMember({"json", "md"}));
  verify->add_option("--out", out_file, "write the report to a file instead of stdout");
  verify->add_option("--budget-cap", budget_cap, "coset walk cap (default: twice the index)");
  verify->add_option("--data", data_dir, "data directory (else $FACTORFORGE_DATA, else ./data)");

  CLI::App* table1 = app.add_subcommand("table1", "run the stored factorization suite");
  table1->add_option("--rows", rows_spec, "row selection, e.g. 1,4,5-8 (default 1-28)");
  table1->add_option("--format", format, "report format: json (default) or md")
      ->check(CLI::IsMember({"json", "md"}));
  table1->add_option("--out", out_file, "write the report to a file instead of stdout");
  table1->add_option("--threads", threads, "case-level parallelism (default: hardware)");
  table1->add_option("--budget-cap", budget_cap, "coset walk cap (default: twice the index)");
  table1->add_option("--data", data_dir, "data directory (else $FACTORFORGE_DATA, else ./data)");

  CLI::App* search = app.add_subcommand("search", "hunt for an alternating factor subgroup");
  search->add_option("L", l_name, "ambient group asset name")->required();
  search->add_option("K", k_name, "cofactor group asset name")->required();
  search->add_option("n", n, "alternating degree of the wanted factor")->required();
  search->add_option("--attempts", attempts, "random pair budget (default 1000)");
  search->add_option("--seed", seed, "rng seed (default 1)");
  search->add_option("--out", out_file, "write the transcript to a file instead of stdout");
  search->add_option("--out-group", out_group, "on success, write a loadable group record here");
  search->add_option("--data", data_dir, "data directory (else $FACTORFORGE_DATA, else ./data)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(data_dir, case_file, format, out_file, budget_cap);
    if (table1->parsed())
      return cmd_table1(data_dir, rows_spec, format, out_file, threads, budget_cap);
    return cmd_search(data_dir, l_name, k_name, n, attempts, seed, out_file, out_group);
  } catch (const ff::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 2;
  }
}
