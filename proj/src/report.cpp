#include "ff/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "json.hpp"

#include "ff/errors.hpp"
#include "ff/factorize.hpp"
#include "ff/recognize.hpp"

namespace ff {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

CaseStatus status_from_string(const std::string& s) {
  if (s == "pass") return CaseStatus::pass;
  if (s == "fail") return CaseStatus::fail;
  if (s == "indeterminate") return CaseStatus::indeterminate;
  if (s == "error") return CaseStatus::error;
  throw ValidationError("unknown case status '" + s + "'");
}

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("report is missing field '") + key + "'");
  return *it;
}

std::string md_cell(std::string s) {
  for (char& c : s)
    if (c == '|' || c == '\n' || c == '\r') c = ' ';
  return s;
}

} // namespace

std::string toolchain_stamp() {
#if defined(__clang__)
  std::string compiler = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  std::string compiler = std::string("gcc ") + __VERSION__;
#else
  std::string compiler = "unknown-compiler";
#endif
#if defined(__linux__)
  const char* os = "linux";
#elif defined(__APPLE__)
  const char* os = "darwin";
#elif defined(_WIN32)
  const char* os = "windows";
#else
  const char* os = "unknown-os";
#endif
#if defined(__x86_64__) || defined(_M_X64)
  const char* arch = "x86_64";
#elif defined(__aarch64__)
  const char* arch = "aarch64";
#else
  const char* arch = "unknown-arch";
#endif
  return compiler + " " + os + "-" + arch;
}

const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::indeterminate: return "indeterminate";
    case CaseStatus::error: return "error";
  }
  return "error";
}

CaseResult run_case(Registry& reg, const CaseRecord& rec, uint64_t budget_cap) {
  CaseResult r;
  r.row = rec.row;
  r.source_file = rec.source_file;
  r.l_name = rec.l_name;
  r.k_name = rec.k_name;
  r.expect_holds = rec.expect_holds;
  r.expected_intersection_order = rec.expected_intersection_order;
  if (rec.h_search) {
    r.searched = true;
    r.search_seed = rec.h_search->seed;
    r.search_n = rec.h_search->n;
    r.h_name = "search(A" + std::to_string(rec.h_search->n) +
               ", seed=" + std::to_string(rec.h_search->seed) + ")";
  } else {
    r.h_name = rec.h_name;
  }

  Clock::time_point t0 = Clock::now();
  auto finish = [&](CaseStatus s, std::string message = "") {
    r.status = s;
    r.message = std::move(message);
    r.wall_seconds = seconds_since(t0);
    return r;
  };

  try {
    const GroupHandle& l = reg.group(rec.l_name);
    const GroupHandle& k = reg.group(rec.k_name);

    std::optional<StabChain> searched_h;
    const StabChain* h = nullptr;
    if (rec.h_search) {
      SearchOutcome out = search_factor_subgroup(l.chain, k.chain.generators(), rec.h_search->n,
                                                 rec.h_search->attempts, rec.h_search->seed);
      if (!out.found)
        return finish(CaseStatus::indeterminate,
                      "search exhausted after " + std::to_string(out.attempts_tried) + " attempts");
      r.search_attempt = out.attempt;
      searched_h.emplace(StabChain::build(l.chain.degree(), out.h_gens));
      h = &*searched_h;
    } else {
      h = &reg.group(rec.h_name).chain;
    }

    uint64_t budget = budget_cap;
    if (budget == 0) {
      BigCount idx2 = 2 * (l.chain.order() / k.chain.order());
      if (!fits_u64(idx2)) return finish(CaseStatus::indeterminate, "index exceeds the walkable range");
      budget = to_u64(idx2);
    }

    FactorizationReport rep = verify_factorization(l.chain, *h, k.chain, budget);
    r.holds = rep.holds;
    r.index = rep.index;
    r.intersection_order = rep.intersection_order;
    r.exact_arithmetic = rep.exact_arithmetic;
    r.intersection_matched = !r.expected_intersection_order ||
                             *r.expected_intersection_order == rep.intersection_order;

    if (r.holds != r.expect_holds)
      return finish(CaseStatus::fail, std::string("verdict ") + (r.holds ? "holds" : "fails") +
                                          ", expected " + (r.expect_holds ? "holds" : "fails"));
    if (!r.intersection_matched)
      return finish(CaseStatus::fail,
                    "intersection order " + to_decimal(rep.intersection_order) + ", expected " +
                        to_decimal(*r.expected_intersection_order));
    return finish(CaseStatus::pass);
  } catch (const BudgetExceeded& e) {
    return finish(CaseStatus::indeterminate, e.what());
  } catch (const ValidationError& e) {
    return finish(CaseStatus::error, e.what());
  } catch (const std::exception& e) {
    return finish(CaseStatus::error, std::string("internal: ") + e.what());
  }
}

SuiteReport run_cases(Registry& reg, const std::vector<CaseRecord>& cases, unsigned threads,
                      uint64_t budget_cap) {
  SuiteReport rep;
  rep.tool = std::string(kToolName) + " " + kToolVersion;
  rep.toolchain = toolchain_stamp();
  rep.cases.resize(cases.size());

  Clock::time_point t0 = Clock::now();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (!cases.empty()) threads = std::min<unsigned>(threads, static_cast<unsigned>(cases.size()));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < cases.size();)
      rep.cases[i] = run_case(reg, cases[i], budget_cap);
  };
  if (threads <= 1 || cases.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  rep.wall_seconds = seconds_since(t0);

  for (const CaseResult& c : rep.cases) {
    switch (c.status) {
      case CaseStatus::pass: ++rep.passed; break;
      case CaseStatus::fail: ++rep.failed; break;
      case CaseStatus::indeterminate: ++rep.indeterminate; break;
      case CaseStatus::error: ++rep.errors; break;
    }
    if (c.searched) rep.rng_seeds.push_back(c.search_seed);
  }
  return rep;
}

int exit_code_for(const SuiteReport& report) {
  if (report.errors > 0) return 2;
  if (report.failed > 0) return 1;
  if (report.indeterminate > 0) return 3;
  return 0;
}

std::string report_to_json(const SuiteReport& report) {
  json j;
  j["tool"] = report.tool;
  j["toolchain"] = report.toolchain;
  j["rng_seeds"] = report.rng_seeds;
  j["totals"] = {{"cases", report.cases.size()},
                 {"passed", report.passed},
                 {"failed", report.failed},
                 {"errors", report.errors},
                 {"indeterminate", report.indeterminate},
                 {"wall_seconds", report.wall_seconds}};
  j["cases"] = json::array();
  for (const CaseResult& c : report.cases) {
    json e;
    if (c.row) e["row"] = *c.row;
    else e["row"] = nullptr;
    e["file"] = c.source_file;
    e["L"] = c.l_name;
    e["H"] = c.h_name;
    e["K"] = c.k_name;
    e["status"] = to_string(c.status);
    e["holds"] = c.holds;
    e["expect_holds"] = c.expect_holds;
    e["index"] = to_decimal(c.index);
    e["intersection_order"] = to_decimal(c.intersection_order);
    if (c.expected_intersection_order)
      e["expected_intersection_order"] = to_decimal(*c.expected_intersection_order);
    else
      e["expected_intersection_order"] = nullptr;
    e["intersection_matched"] = c.intersection_matched;
    e["exact_arithmetic"] = c.exact_arithmetic;
    e["message"] = c.message;
    e["wall_seconds"] = c.wall_seconds;
    if (c.searched)
      e["search"] = {{"seed", c.search_seed}, {"attempt", c.search_attempt}, {"n", c.search_n}};
    else
      e["search"] = nullptr;
    j["cases"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

SuiteReport parse_report_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ValidationError("malformed report JSON");
  SuiteReport rep;
  rep.tool = need(j, "tool").get<std::string>();
  rep.toolchain = need(j, "toolchain").get<std::string>();
  for (const auto& s : need(j, "rng_seeds")) rep.rng_seeds.push_back(s.get<uint64_t>());
  const json& totals = need(j, "totals");
  rep.passed = need(totals, "passed").get<size_t>();
  rep.failed = need(totals, "failed").get<size_t>();
  rep.errors = need(totals, "errors").get<size_t>();
  rep.indeterminate = need(totals, "indeterminate").get<size_t>();
  rep.wall_seconds = need(totals, "wall_seconds").get<double>();
  for (const auto& e : need(j, "cases")) {
    CaseResult c;
    if (!need(e, "row").is_null()) c.row = need(e, "row").get<int>();
    c.source_file = need(e, "file").get<std::string>();
    c.l_name = need(e, "L").get<std::string>();
    c.h_name = need(e, "H").get<std::string>();
    c.k_name = need(e, "K").get<std::string>();
    c.status = status_from_string(need(e, "status").get<std::string>());
    c.holds = need(e, "holds").get<bool>();
    c.expect_holds = need(e, "expect_holds").get<bool>();
    c.index = parse_decimal(need(e, "index").get<std::string>());
    c.intersection_order = parse_decimal(need(e, "intersection_order").get<std::string>());
    if (!need(e, "expected_intersection_order").is_null())
      c.expected_intersection_order =
          parse_decimal(need(e, "expected_intersection_order").get<std::string>());
    c.intersection_matched = need(e, "intersection_matched").get<bool>();
    c.exact_arithmetic = need(e, "exact_arithmetic").get<bool>();
    c.message = need(e, "message").get<std::string>();
    c.wall_seconds = need(e, "wall_seconds").get<double>();
    if (!need(e, "search").is_null()) {
      c.searched = true;
      c.search_seed = need(need(e, "search"), "seed").get<uint64_t>();
      c.search_attempt = need(need(e, "search"), "attempt").get<uint32_t>();
      c.search_n = need(need(e, "search"), "n").get<size_t>();
    }
    rep.cases.push_back(std::move(c));
  }
  if (rep.passed + rep.failed + rep.errors + rep.indeterminate != rep.cases.size())
    throw ValidationError("report totals do not add up");
  return rep;
}

std::string report_to_markdown(const SuiteReport& report) {
  std::string out;
  out += "# " + report.tool + " suite report\n\n";
  out += "- toolchain: " + report.toolchain + "\n";
  out += "- cases: " + std::to_string(report.cases.size()) + " (passed " +
         std::to_string(report.passed) + ", failed " + std::to_string(report.failed) +
         ", errors " + std::to_string(report.errors) + ", indeterminate " +
         std::to_string(report.indeterminate) + ")\n";
  out += "- wall seconds: " + fixed3(report.wall_seconds) + "\n";
  out += "- rng seeds: ";
  if (report.rng_seeds.empty()) {
    out += "none";
  } else {
    for (size_t i = 0; i < report.rng_seeds.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(report.rng_seeds[i]);
    }
  }
  out += "\n\n";
  out += "| row | file | L | H | K | status | index | intersection | exact | seconds |\n";
  out += "|---:|:--|:--|:--|:--|:--|---:|---:|:--|---:|\n";
  for (const CaseResult& c : report.cases) {
    out += "| " + (c.row ? std::to_string(*c.row) : std::string("-"));
    out += " | " + md_cell(c.source_file);
    out += " | " + md_cell(c.l_name);
    out += " | " + md_cell(c.h_name);
    out += " | " + md_cell(c.k_name);
    out += " | " + std::string(to_string(c.status));
    out += " | " + to_decimal(c.index);
    out += " | " + to_decimal(c.intersection_order);
    out += " | " + std::string(c.exact_arithmetic ? "yes" : "no");
    out += " | " + fixed3(c.wall_seconds) + " |\n";
  }
  bool any_notes = false;
  for (const CaseResult& c : report.cases) {
    if (c.status == CaseStatus::pass || c.message.empty()) continue;
    if (!any_notes) {
      out += "\n## Notes\n\n";
      any_notes = true;
    }
    out += "- " + (c.row ? "row " + std::to_string(*c.row) : std::string("case")) + " (" +
           md_cell(c.source_file) + "): " + md_cell(c.message) + "\n";
  }
  return out;
}

std::set<int> parse_rows_spec(const std::string& spec) {
  std::set<int> rows;
  size_t i = 0;
  auto skip_spaces = [&] {
    while (i < spec.size() && spec[i] == ' ') ++i;
  };
  auto read_int = [&]() -> int {
    skip_spaces();
    size_t start = i;
    while (i < spec.size() && spec[i] >= '0' && spec[i] <= '9') ++i;
    if (i == start) throw ValidationError("bad row selection '" + spec + "'");
    int v = std::stoi(spec.substr(start, i - start));
    if (v < 1 || v > 28) throw ValidationError("row numbers run 1..28, got " + std::to_string(v));
    return v;
  };
  skip_spaces();
  while (i < spec.size()) {
    int a = read_int();
    skip_spaces();
    if (i < spec.size() && spec[i] == '-') {
      ++i;
      int b = read_int();
      if (b < a) throw ValidationError("descending range in row selection '" + spec + "'");
      for (int v = a; v <= b; ++v) rows.insert(v);
    } else {
      rows.insert(a);
    }
    skip_spaces();
    if (i < spec.size()) {
      if (spec[i] != ',') throw ValidationError("bad row selection '" + spec + "'");
      ++i;
      skip_spaces();
      if (i == spec.size()) throw ValidationError("trailing comma in row selection '" + spec + "'");
    }
  }
  return rows;
}

} // namespace ff
