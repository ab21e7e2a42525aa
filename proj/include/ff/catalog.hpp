#pragma once

#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ff/bigint.hpp"
#include "ff/gf_matrix.hpp"
#include "ff/stab_chain.hpp"

namespace ff {

// --- on-disk records -------------------------------------------------------

struct MatrixGenerators {
  int p = 0, k = 0;
  VectorMode mode = VectorMode::vectors;
  std::vector<std::vector<std::vector<int>>> matrices;
};

// One stored group: either explicit cycle-form generators (kind
// "perm-asset") or matrix generators with a vector-action recipe (kind
// "matrix-asset"). expected_order is a decimal string in the file and is
// treated as a claim to verify, not a fact.
struct GroupRecord {
  std::string name;
  std::string kind;
  size_t degree = 0;
  BigCount expected_order = 0;
  std::vector<std::string> cycle_generators;
  MatrixGenerators matrix_generators;
  std::string provenance;
};

GroupRecord parse_group_record(const std::string& json_text);
std::string serialize_group_record(const GroupRecord& rec);
GroupRecord load_group_record(const std::filesystem::path& file);
void save_group_record(const GroupRecord& rec, const std::filesystem::path& file);

// The record's generators as permutations of its declared degree.
std::vector<Perm> record_generators(const GroupRecord& rec);

// --- verified groups -------------------------------------------------------

struct GroupHandle {
  std::string name;
  StabChain chain;
};

// Chain construction with the full deterministic finish, gated on the
// record's claimed order: a mismatch throws ValidationError. This gate is
// the trust boundary for everything loaded from disk.
GroupHandle realize_group(const GroupRecord& rec);

// --- built-in constructions (no files involved) ----------------------------

enum class NaturalKind { alternating, symmetric };

// Alternating or symmetric group in its natural action on n points.
GroupHandle build_natural(size_t n, NaturalKind kind);

// Projective special linear group of dimension two over the field of order
// q, on the q+1 points of the projective line. Supported q: 4, 5, 9, 11,
// 19, 29, 59 (prime fields directly, q = 4 and 9 through matrix actions).
GroupHandle build_psl2(int q);

// Diagonal-type group on the elements of t (at most 500): left and right
// translations, the supplied automorphism maps (each spot-checked to be an
// automorphism) and inversion. Returns the whole group plus the two regular
// translation copies; t_elements fixes the domain labelling.
struct DiagonalGroup {
  GroupHandle whole;
  GroupHandle left;
  GroupHandle right;
  std::vector<Perm> t_elements;
};
DiagonalGroup build_holomorph_diagonal(const StabChain& t, const std::vector<Perm>& aut_maps);

// Wreath square of r in product action: degree d^2 for r of degree d <= 12,
// order |r|^2 * 2. Coordinates are numbered x*d + y.
GroupHandle build_product_action_wreath(const GroupHandle& r);

// --- case records -----------------------------------------------------------

struct SearchDirective {
  uint64_t seed = 0;
  uint32_t attempts = 0;
  size_t n = 0; // targeted alternating degree
};

struct CaseRecord {
  std::optional<int> row;
  std::string l_name;
  std::string h_name; // empty iff h_search is set
  std::optional<SearchDirective> h_search;
  std::string k_name;
  bool expect_holds = true;
  std::optional<BigCount> expected_intersection_order;
  std::string source_file; // filled by the directory loader
};

CaseRecord parse_case_record(const std::string& json_text);
std::string serialize_case_record(const CaseRecord& rec);
CaseRecord load_case_record(const std::filesystem::path& file);
void save_case_record(const CaseRecord& rec, const std::filesystem::path& file);

// --- registry ---------------------------------------------------------------

// Resolves group names to verified chains, loading records from
// <data_dir>/groups/<name>.json and caching the result. The directory is the
// constructor argument when nonempty, else $FACTORFORGE_DATA, else ./data.
class Registry {
public:
  explicit Registry(std::string data_dir = "");

  const std::filesystem::path& data_dir() const { return dir_; }

  // Loads, verifies and caches; the record's name must match the file stem.
  // Thread-safe: concurrent callers asking for the same name share one load,
  // and loads of different names proceed in parallel.
  const GroupHandle& group(const std::string& name);

  // All case records under <data_dir>/cases, sorted by file name.
  std::vector<CaseRecord> load_cases() const;

private:
  std::filesystem::path dir_;
  std::map<std::string, std::shared_future<GroupHandle>> cache_;
  std::mutex mu_;
};

} // namespace ff
