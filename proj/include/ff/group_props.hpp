#pragma once

#include <vector>

#include "ff/stab_chain.hpp"

namespace ff {

// All orbits of the generator set on the domain, each sorted ascending,
// ordered by smallest member. The trivial group yields singletons.
std::vector<std::vector<Point>> orbits_of(const std::vector<Perm>& gens, size_t degree);

bool is_transitive(const StabChain& chain);

// Transitive and of order equal to the degree, i.e. sharply transitive.
bool is_regular(const StabChain& chain);

enum class TransitivityMode {
  transitive, // largest k with the group k-transitive on ordered k-tuples
  homogeneous // largest k with a single orbit on k-element subsets
};

// Degree of multiple transitivity, capped at max_k. Returns 0 for an
// intransitive group. The transitive mode reads successive fundamental
// orbit sizes off a chain rebuilt along the forced base 0,1,2,...; the
// homogeneous mode runs an explicit orbit walk on k-subsets and skips any k
// whose subset count exceeds an internal budget.
int transitivity_degree(const StabChain& chain, TransitivityMode mode, int max_k = 8);

struct BlockSystem {
  bool primitive = false;
  size_t block_size = 0;
  size_t block_count = 0;
  std::vector<std::vector<Point>> blocks; // witness partition; empty when primitive
};

// Primitivity test for a transitive group (ValidationError otherwise):
// for every pair {0, b} the finest block system gluing the pair is computed;
// primitive iff all of them are the full domain. Otherwise the nontrivial
// witness with the smallest block size is returned.
BlockSystem minimal_blocks(const StabChain& chain);

// Chain of the smallest normal subgroup of g containing the seeds, which
// must be members of g (ValidationError otherwise). Reaching the full order
// of g is proven by the transversal-product count, so closures that fill the
// group finish fast; proper closures get the full deterministic treatment.
StabChain normal_closure(const StabChain& g, const std::vector<Perm>& seeds);

// Normal closure of all generator commutators.
StabChain derived_subgroup(const StabChain& g);

// Every element, enumerated as transversal products down the chain.
// Throws BudgetExceeded when the order exceeds cap.
std::vector<Perm> all_elements(const StabChain& chain, size_t cap);

} // namespace ff
