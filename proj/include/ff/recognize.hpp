#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ff/rng.hpp"
#include "ff/stab_chain.hpp"

namespace ff {

enum class SpectrumMode { exhaustive, sampled };

// Set of element orders. Exhaustive mode walks every transversal product of
// the chain (allowed only for order <= 10^6 and exact); sampled mode draws
// sample_size random elements and reports the orders seen, which is a subset
// of the true spectrum, never a proof of absence.
std::set<uint64_t> order_spectrum(const StabChain& chain, SpectrumMode mode,
                                  size_t sample_size = 0, uint64_t seed = 0x5bec7125ULL);

// One-sided Monte-Carlo simplicity. A returned witness is a proof: the
// normal closure of some nonidentity element came out proper and nontrivial.
// passed = true only means no witness surfaced within the trial budget.
struct SimplicityVerdict {
  bool passed = false;
  int trials = 0;
  std::vector<Perm> witness_gens; // empty when passed
  BigCount witness_order = 0;
};
SimplicityVerdict is_simple_mc(const StabChain& chain, int trials = 32,
                               uint64_t seed = 0x51713cfULL);

// Alternating-group recognition by order, Monte-Carlo simplicity, and (at
// the one ambiguous order, 20160) the element-order-15 spectrum gate.
struct RecognitionVerdict {
  enum class Overall { accepted, rejected, indeterminate };
  size_t n = 0;
  bool order_matched = false;
  bool simplicity_passed = false;
  int simplicity_trials = 0;
  bool spectrum_required = false;
  bool spectrum_passed = false;
  Overall overall = Overall::rejected;
};
RecognitionVerdict recognize_alternating(const StabChain& chain, size_t n,
                                         int trials = 32, uint64_t seed = 0xa17e04a7ULL);

// Exact element-order set of the alternating group of degree n, computed
// from cycle types (partitions with the right parity). Used to prune
// generator candidates: every element of such a subgroup has one of these
// orders.
std::set<uint64_t> alternating_order_set(size_t n);

// The random stream used by attempt number `attempt` (1-based) of a search
// with the given seed. Exposed so a recorded (seed, attempt) transcript can
// be replayed exactly.
Rng search_attempt_stream(uint64_t seed, uint32_t attempt);

// Randomized hunt for a factor subgroup: draw random pairs of g, keep a pair
// when it generates a group of order n!/2 that recognize_alternating
// accepts and that factorizes g against k. The outcome records the seed and
// the 1-based attempt index so the discovery replays deterministically.
struct SearchOutcome {
  bool found = false;
  uint64_t seed = 0;
  uint32_t attempt = 0;        // attempt that succeeded, 1-based
  uint32_t attempts_tried = 0;
  std::vector<Perm> h_gens;    // the successful pair, empty otherwise
};
SearchOutcome search_factor_subgroup(const StabChain& g, const std::vector<Perm>& k_gens,
                                     size_t n, uint32_t attempts, uint64_t seed);

// Exhaustive variant for tiny groups: scans every unordered pair of elements
// whose orders occur in the alternating target (any generating pair of such
// a subgroup is of this kind, and these groups are 2-generated), so a
// negative outcome is a proof of nonexistence, not a sampling statement.
// Throws BudgetExceeded when the group has more than element_cap elements.
struct ExhaustiveSearchOutcome {
  bool found = false;
  std::vector<Perm> h_gens;
  uint64_t pairs_scanned = 0;
};
ExhaustiveSearchOutcome search_factor_subgroup_exhaustive(const StabChain& g,
                                                          const std::vector<Perm>& k_gens,
                                                          size_t n,
                                                          size_t element_cap = 5000);

} // namespace ff
