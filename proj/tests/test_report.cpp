#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "ff/catalog.hpp"
#include "ff/errors.hpp"
#include "ff/report.hpp"

using namespace ff;
namespace fs = std::filesystem;

namespace {

struct TempData {
  fs::path path;
  TempData() {
    path = fs::temp_directory_path() /
           ("ff_report_test_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::remove_all(path);
    fs::create_directories(path / "groups");
    fs::create_directories(path / "cases");

    GroupRecord a6;
    a6.name = "a6";
    a6.kind = "perm-asset";
    a6.degree = 6;
    a6.expected_order = 360;
    a6.cycle_generators = {"(1,2,3)", "(2,3,4,5,6)"};
    a6.provenance = "natural action";
    save_group_record(a6, path / "groups" / "a6.json");

    GroupRecord a5p;
    a5p.name = "a5_point";
    a5p.kind = "perm-asset";
    a5p.degree = 6;
    a5p.expected_order = 60;
    a5p.cycle_generators = {"(2,3,4)", "(2,3,4,5,6)"};
    a5p.provenance = "stabilizer of the first point";
    save_group_record(a5p, path / "groups" / "a5_point.json");

    // A transitive alternating group of degree five on six points: the other
    // conjugacy class, realized through the projective line construction.
    GroupHandle psl = build_psl2(5);
    GroupRecord a5t;
    a5t.name = "a5_trans";
    a5t.kind = "perm-asset";
    a5t.degree = 6;
    a5t.expected_order = 60;
    for (const Perm& g : psl.chain.generators()) a5t.cycle_generators.push_back(g.to_cycles());
    a5t.provenance = "projective line of the field with five elements";
    save_group_record(a5t, path / "groups" / "a5_trans.json");
  }
  ~TempData() { fs::remove_all(path); }
};

CaseRecord make_case(std::optional<int> row, std::string h, bool expect,
                     std::optional<BigCount> expected_intersection) {
  CaseRecord c;
  c.row = row;
  c.l_name = "a6";
  c.h_name = std::move(h);
  c.k_name = "a5_point";
  c.expect_holds = expect;
  c.expected_intersection_order = std::move(expected_intersection);
  c.source_file = "inline";
  return c;
}

CaseRecord make_search_case(uint64_t seed) {
  CaseRecord c;
  c.row = 1;
  c.l_name = "a6";
  c.h_search = SearchDirective{seed, 500, 5};
  c.k_name = "a5_point";
  c.expect_holds = true;
  c.expected_intersection_order = BigCount(10);
  c.source_file = "inline-search";
  return c;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(FF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = ::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int rc = ::pclose(p);
  CliResult r;
  r.out = out;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

} // namespace

TEST_CASE("run_case covers the full status taxonomy") {
  TempData data;
  Registry reg(data.path.string());

  // A true factorization with the expected intersection order.
  CaseResult pass = run_case(reg, make_case(1, "a5_trans", true, BigCount(10)));
  CHECK(pass.status == CaseStatus::pass);
  CHECK(pass.holds);
  CHECK(pass.index == 6);
  CHECK(pass.intersection_order == 10);
  CHECK(pass.exact_arithmetic);
  CHECK(pass.message.empty());
  CHECK(pass.intersection_matched);

  // A correct negative expectation also passes.
  CaseResult neg = run_case(reg, make_case(2, "a5_point", false, BigCount(60)));
  CHECK(neg.status == CaseStatus::pass);
  CHECK_FALSE(neg.holds);
  CHECK(neg.intersection_order == 60);

  // Verdict mismatch.
  CaseResult fail = run_case(reg, make_case(3, "a5_trans", false, std::nullopt));
  CHECK(fail.status == CaseStatus::fail);
  CHECK_FALSE(fail.message.empty());

  // Intersection mismatch.
  CaseResult bad_int = run_case(reg, make_case(4, "a5_trans", true, BigCount(5)));
  CHECK(bad_int.status == CaseStatus::fail);
  CHECK_FALSE(bad_int.intersection_matched);

  // Unresolvable asset.
  CaseResult err = run_case(reg, make_case(5, "missing_group", true, std::nullopt));
  CHECK(err.status == CaseStatus::error);
  CHECK_FALSE(err.message.empty());

  // Budget starvation is indeterminate, not false.
  CaseResult tight = run_case(reg, make_case(6, "a5_trans", true, std::nullopt), 3);
  CHECK(tight.status == CaseStatus::indeterminate);
}

TEST_CASE("run_case drives a seeded search and records the transcript") {
  TempData data;
  Registry reg(data.path.string());
  CaseResult r = run_case(reg, make_search_case(0xfeedULL));
  CHECK(r.status == CaseStatus::pass);
  CHECK(r.searched);
  CHECK(r.search_seed == 0xfeedULL);
  CHECK(r.search_attempt >= 1);
  CHECK(r.intersection_order == 10);

  CaseResult again = run_case(reg, make_search_case(0xfeedULL));
  CHECK(again.search_attempt == r.search_attempt);
}

TEST_CASE("suite totals, exit codes, and the reporting round trip") {
  TempData data;
  Registry reg(data.path.string());
  std::vector<CaseRecord> cases = {
      make_case(1, "a5_trans", true, BigCount(10)),
      make_case(2, "a5_point", false, std::nullopt),
      make_case(3, "a5_trans", false, std::nullopt), // fail
      make_case(4, "missing_group", true, std::nullopt), // error
      make_search_case(7),
  };
  SuiteReport rep = run_cases(reg, cases, 4);
  CHECK(rep.cases.size() == 5);
  CHECK(rep.passed == 3);
  CHECK(rep.failed == 1);
  CHECK(rep.errors == 1);
  CHECK(rep.indeterminate == 0);
  CHECK(rep.rng_seeds == std::vector<uint64_t>{7});
  CHECK(exit_code_for(rep) == 2); // errors dominate

  SuiteReport parsed = parse_report_json(report_to_json(rep));
  CHECK(parsed.tool == rep.tool);
  CHECK(parsed.toolchain == rep.toolchain);
  CHECK(parsed.rng_seeds == rep.rng_seeds);
  CHECK(parsed.passed == rep.passed);
  CHECK(parsed.failed == rep.failed);
  CHECK(parsed.errors == rep.errors);
  REQUIRE(parsed.cases.size() == rep.cases.size());
  for (size_t i = 0; i < rep.cases.size(); ++i) {
    CHECK(parsed.cases[i].status == rep.cases[i].status);
    CHECK(parsed.cases[i].l_name == rep.cases[i].l_name);
    CHECK(parsed.cases[i].h_name == rep.cases[i].h_name);
    CHECK(parsed.cases[i].k_name == rep.cases[i].k_name);
    CHECK(parsed.cases[i].index == rep.cases[i].index);
    CHECK(parsed.cases[i].intersection_order == rep.cases[i].intersection_order);
    CHECK(parsed.cases[i].holds == rep.cases[i].holds);
    CHECK(parsed.cases[i].searched == rep.cases[i].searched);
    CHECK(parsed.cases[i].search_attempt == rep.cases[i].search_attempt);
  }

  // Exit-code precedence without errors.
  SuiteReport just_fail = run_cases(reg, {cases[0], cases[2]}, 1);
  CHECK(exit_code_for(just_fail) == 1);
  SuiteReport all_pass = run_cases(reg, {cases[0], cases[1]}, 1);
  CHECK(exit_code_for(all_pass) == 0);
  SuiteReport starved = run_cases(reg, {cases[0]}, 1, 3);
  CHECK(exit_code_for(starved) == 3);
  SuiteReport empty = run_cases(reg, {}, 4);
  CHECK(exit_code_for(empty) == 0);
  CHECK(empty.cases.empty());
}

TEST_CASE("markdown and JSON verdict columns agree") {
  TempData data;
  Registry reg(data.path.string());
  std::vector<CaseRecord> cases = {
      make_case(1, "a5_trans", true, BigCount(10)),
      make_case(2, "a5_trans", false, std::nullopt),
      make_case(3, "missing_group", true, std::nullopt),
  };
  SuiteReport rep = run_cases(reg, cases, 1);
  std::string md = report_to_markdown(rep);

  // Pull the status column out of the table body.
  std::vector<std::string> md_statuses;
  size_t pos = 0;
  while ((pos = md.find("\n| ", pos)) != std::string::npos) {
    size_t eol = md.find('\n', pos + 1);
    std::string line = md.substr(pos + 1, eol - pos - 1);
    pos = eol;
    if (line.find("|---") != std::string::npos || line.find("| row |") == 0) continue;
    std::vector<std::string> cells;
    size_t c = 1;
    while (c < line.size()) {
      size_t next = line.find('|', c);
      if (next == std::string::npos) break;
      std::string cell = line.substr(c, next - c);
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      while (!cell.empty() && cell.back() == ' ') cell.pop_back();
      cells.push_back(cell);
      c = next + 1;
    }
    if (cells.size() >= 6) md_statuses.push_back(cells[5]);
  }
  REQUIRE(md_statuses.size() == rep.cases.size());
  for (size_t i = 0; i < rep.cases.size(); ++i)
    CHECK(md_statuses[i] == to_string(rep.cases[i].status));
}

TEST_CASE("suite results are deterministic across thread counts") {
  TempData data;
  std::vector<CaseRecord> cases = {
      make_case(1, "a5_trans", true, BigCount(10)),
      make_case(2, "a5_point", false, std::nullopt),
      make_search_case(99),
  };
  Registry reg_a(data.path.string());
  Registry reg_b(data.path.string());
  SuiteReport serial = run_cases(reg_a, cases, 1);
  SuiteReport parallel = run_cases(reg_b, cases, 3);
  REQUIRE(serial.cases.size() == parallel.cases.size());
  for (size_t i = 0; i < serial.cases.size(); ++i) {
    CHECK(serial.cases[i].status == parallel.cases[i].status);
    CHECK(serial.cases[i].holds == parallel.cases[i].holds);
    CHECK(serial.cases[i].index == parallel.cases[i].index);
    CHECK(serial.cases[i].intersection_order == parallel.cases[i].intersection_order);
    CHECK(serial.cases[i].search_attempt == parallel.cases[i].search_attempt);
  }
}

TEST_CASE("row selection grammar") {
  CHECK(parse_rows_spec("1,4,5-8") == std::set<int>{1, 4, 5, 6, 7, 8});
  CHECK(parse_rows_spec("") == std::set<int>{});
  CHECK(parse_rows_spec("28") == std::set<int>{28});
  CHECK(parse_rows_spec(" 3 , 7 ") == std::set<int>{3, 7});
  CHECK(parse_rows_spec("1-28").size() == 28);
  CHECK_THROWS_AS(parse_rows_spec("0"), ValidationError);
  CHECK_THROWS_AS(parse_rows_spec("29"), ValidationError);
  CHECK_THROWS_AS(parse_rows_spec("8-5"), ValidationError);
  CHECK_THROWS_AS(parse_rows_spec("1,,2"), ValidationError);
  CHECK_THROWS_AS(parse_rows_spec("1,"), ValidationError);
  CHECK_THROWS_AS(parse_rows_spec("x"), ValidationError);
}

TEST_CASE("command line drives the whole pipeline with the spelled exit codes") {
  TempData data;
  std::string dd = " --data " + data.path.string();

  CaseRecord pass_case = make_case(1, "a5_trans", true, BigCount(10));
  save_case_record(pass_case, data.path / "cases" / "table1_row01.json");
  CaseRecord neg_case = make_case(2, "a5_point", false, BigCount(60));
  save_case_record(neg_case, data.path / "cases" / "table1_row02.json");
  CaseRecord fail_case = make_case(3, "a5_trans", false, std::nullopt);
  save_case_record(fail_case, data.path / "cases" / "table1_row03.json");
  CaseRecord err_case = make_case(4, "missing_group", true, std::nullopt);
  save_case_record(err_case, data.path / "cases" / "table1_row04.json");

  std::string row01 = (data.path / "cases" / "table1_row01.json").string();

  // verify: pass with a machine-readable report on stdout.
  CliResult v = run_cli("verify " + row01 + " --format json" + dd);
  CHECK(v.code == 0);
  SuiteReport vr = parse_report_json(v.out);
  REQUIRE(vr.cases.size() == 1);
  CHECK(vr.cases[0].status == CaseStatus::pass);
  CHECK(vr.cases[0].index == 6);

  // verify: verdict mismatch, input error, missing file, starved budget.
  CHECK(run_cli("verify " + (data.path / "cases" / "table1_row03.json").string() + dd).code == 1);
  CHECK(run_cli("verify " + (data.path / "cases" / "table1_row04.json").string() + dd).code == 2);
  CHECK(run_cli("verify " + (data.path / "nonexistent.json").string() + dd).code == 2);
  CHECK(run_cli("verify " + row01 + " --budget-cap 3" + dd).code == 3);

  // table1: all stored rows; the error row dominates the exit code.
  CliResult t = run_cli("table1 --rows 1-4 --format json --threads 2" + dd);
  CHECK(t.code == 2);
  SuiteReport tr = parse_report_json(t.out);
  CHECK(tr.cases.size() == 4);
  CHECK(tr.passed == 2);
  CHECK(tr.failed == 1);
  CHECK(tr.errors == 1);

  // table1: selection narrows the suite; empty selection is a clean no-op.
  CliResult t12 = run_cli("table1 --rows 1,2 --format json" + dd);
  CHECK(t12.code == 0);
  CHECK(parse_report_json(t12.out).cases.size() == 2);
  CliResult t0 = run_cli("table1 --rows= --format json" + dd);
  CHECK(t0.code == 0);
  CHECK(parse_report_json(t0.out).cases.empty());
  CHECK(run_cli("table1 --rows 0-99" + dd).code == 2);

  // markdown output lands in a file.
  std::string md_file = (data.path / "suite.md").string();
  CliResult tm = run_cli("table1 --rows 1,2 --format md --out " + md_file + dd);
  CHECK(tm.code == 0);
  std::ifstream md_in(md_file);
  std::string md_text((std::istreambuf_iterator<char>(md_in)), std::istreambuf_iterator<char>());
  CHECK(md_text.find("| pass |") != std::string::npos);

  // search: transcript plus a loadable discovered-group record.
  std::string found = (data.path / "groups" / "found_a5.json").string();
  CliResult s = run_cli("search a6 a5_point 5 --attempts 500 --seed 11 --out-group " + found + dd);
  CHECK(s.code == 0);
  auto transcript = nlohmann::json::parse(s.out);
  CHECK(transcript.at("found").get<bool>());
  CHECK(transcript.at("h_generators").size() == 2);
  Registry reg(data.path.string());
  const GroupHandle& h = reg.group("found_a5");
  CHECK(h.chain.order() == 60);

  // search: exhaustion is its own exit code.
  CHECK(run_cli("search a6 a5_point 7 --attempts 5 --seed 1" + dd).code == 4);
  // search: bad inputs are input errors.
  CHECK(run_cli("search nope a5_point 5" + dd).code == 2);
}
