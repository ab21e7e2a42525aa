#pragma once

#include <cstdint>
#include <vector>

#include "ff/bigint.hpp"
#include "ff/stab_chain.hpp"

namespace ff {

// Unique minimal representative of the right coset K*x: the element whose
// image tuple along the chain's base is lexicographically smallest. Distinct
// elements of one coset differ by a nontrivial member of K, which must move
// some base point, so the minimum is unique. When the chain's base is also a
// base of an ambient group containing x, the representative's base images
// identify the coset among all cosets inside that ambient group.
Perm canonical_coset_rep(const StabChain& k_chain, const Perm& x);

// Base images of a representative: the hash key for its coset.
std::vector<Point> coset_key(const StabChain& k_chain, const Perm& rep);

struct CosetOrbitResult {
  bool completed = false; // false: budget exhausted, nothing decided
  uint64_t size = 0;      // cosets reached (valid only when completed)
  std::vector<Perm> stabilizer_gens;
  BigCount stabilizer_order = 0; // order of the start-coset stabilizer in h
};

// Orbit of the coset K*1 under right multiplication by the generators of h,
// walking at most `budget` cosets. The chain k MUST be based along a base of
// a group containing h and k (rebuild with base_hint when in doubt); the
// caller gets internal-consistency errors otherwise. On completion the
// stabilizer of the start coset - the intersection of h and k - is
// reconstructed from Schreier generators at the closing edges, each verified
// to lie in k, and its order is proven equal to |h| / size.
CosetOrbitResult coset_orbit(const StabChain& h, const StabChain& k, uint64_t budget);

struct FactorizationReport {
  bool holds = false;
  BigCount index = 0;              // [l : k]
  BigCount cosets_reached = 0;     // orbit size, equals index iff holds
  BigCount intersection_order = 0; // |h intersect k|
  std::vector<Perm> intersection_gens;
  bool exact_arithmetic = true; // all counts computed in exact integers
};

// Verdict for l = h*k. The orbit criterion (h transitive on the cosets of k)
// decides; the order identity |h| * |k| = |l| * |h intersect k| is evaluated
// independently and must agree, otherwise the global inconsistency counter
// is bumped and a logic error is thrown. budget_cosets caps the orbit walk;
// 0 means exactly the index, and exceeding the cap throws BudgetExceeded
// (the verdict is then indeterminate, never false).
// Both h and k must be subgroups of l (ValidationError otherwise).
FactorizationReport verify_factorization(const StabChain& l, const StabChain& h,
                                         const StabChain& k, uint64_t budget_cosets = 0);

// Internal cross-check failures observed so far in this process; stays 0
// unless a broken invariant was detected (every bump also threw).
uint64_t consistency_failure_count();

// Factorization carried into a normal subgroup: for n normal in l with
// h inside n and l = h*k, the group n factors as h * (k intersect n).
// Verifies the hypotheses, computes k intersect n, and returns the report
// for that inner factorization.
FactorizationReport descent_check(const StabChain& l, const StabChain& h, const StabChain& k,
                                  const StabChain& n);

} // namespace ff
