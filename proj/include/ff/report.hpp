#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ff/bigint.hpp"
#include "ff/catalog.hpp"

namespace ff {

inline constexpr const char* kToolName = "factorforge";
inline constexpr const char* kToolVersion = "1.0.0";

// Compiler and platform stamp embedded in reports.
std::string toolchain_stamp();

// Outcome classes for one case. `pass`/`fail` compare the computed verdict
// (and, when given, the intersection order) against the case's expectation;
// `indeterminate` means a budget ran out before anything was decided;
// `error` means inputs failed validation (missing asset, bad record, order
// gate). The distinction drives the exit-code contract.
enum class CaseStatus { pass, fail, indeterminate, error };

const char* to_string(CaseStatus s);

struct CaseResult {
  std::optional<int> row;
  std::string source_file;
  std::string l_name, h_name, k_name;
  CaseStatus status = CaseStatus::error;
  bool holds = false;
  bool expect_holds = true;
  BigCount index = 0;
  BigCount intersection_order = 0;
  std::optional<BigCount> expected_intersection_order;
  bool intersection_matched = true;
  bool exact_arithmetic = true;
  std::string message; // failure or error explanation, empty on pass
  double wall_seconds = 0;
  // Filled when H came from a seeded search.
  bool searched = false;
  uint64_t search_seed = 0;
  uint32_t search_attempt = 0;
  size_t search_n = 0;
};

struct SuiteReport {
  std::string tool;      // name + version
  std::string toolchain; // compiler/platform stamp
  std::vector<uint64_t> rng_seeds; // search seeds, in case order
  std::vector<CaseResult> cases;
  size_t passed = 0, failed = 0, errors = 0, indeterminate = 0;
  double wall_seconds = 0;
};

// Runs one case end to end: resolve L and K, obtain H (named group or seeded
// search), verify the factorization, compare against the expectations.
// budget_cap = 0 means the default cap of twice the index; any throw is
// converted into the status taxonomy, never propagated.
CaseResult run_case(Registry& reg, const CaseRecord& rec, uint64_t budget_cap = 0);

// Runs the cases with a case-level thread pool (threads = 0 picks hardware
// parallelism; each case is internally single-threaded) and assembles the
// totals. Case order in the report follows the input order.
SuiteReport run_cases(Registry& reg, const std::vector<CaseRecord>& cases, unsigned threads = 0,
                      uint64_t budget_cap = 0);

// Exit-code contract: 0 all pass; 1 some verdict mismatch; 2 some input or
// validation error; 3 some budget-indeterminate case. Errors dominate
// failures, failures dominate indeterminates.
int exit_code_for(const SuiteReport& report);

std::string report_to_json(const SuiteReport& report);
std::string report_to_markdown(const SuiteReport& report);

// Re-parses a JSON report (the shipped reports must round-trip).
SuiteReport parse_report_json(const std::string& text);

// Row selection grammar for the table suite: comma-separated integers or
// a-b ranges within 1..28; the empty string selects nothing.
std::set<int> parse_rows_spec(const std::string& spec);

} // namespace ff
