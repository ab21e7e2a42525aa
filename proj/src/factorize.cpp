#include "ff/factorize.hpp"

#include <atomic>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "ff/errors.hpp"

namespace ff {

namespace {

std::atomic<uint64_t> g_inconsistencies{0};

[[noreturn]] void inconsistency(const char* what) {
  g_inconsistencies.fetch_add(1, std::memory_order_relaxed);
  throw std::logic_error(what);
}

struct KeyHash {
  size_t operator()(const std::vector<Point>& v) const {
    uint64_t h = 1469598103934665603ULL;
    for (Point p : v) {
      h ^= uint64_t(p) + 1;
      h *= 1099511628211ULL;
    }
    return size_t(h);
  }
};

// Word of the breadth-first coset tree: the product of generator labels
// along root -> target. Plain generator products, no canonicalization.
Perm coset_word(const std::vector<int32_t>& parent, const std::vector<int32_t>& via,
                const std::vector<Perm>& gens, size_t target, size_t degree) {
  std::vector<int32_t> labels;
  for (size_t i = target; parent[i] >= 0; i = size_t(parent[i])) labels.push_back(via[i]);
  Perm w = Perm::identity(degree);
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) w = compose(w, gens[size_t(*it)]);
  return w;
}

} // namespace

Perm canonical_coset_rep(const StabChain& k_chain, const Perm& x) {
  if (x.degree() != k_chain.degree()) throw ValidationError("degree mismatch");
  Perm y = x;
  for (size_t lvl = 0; lvl < k_chain.num_levels(); ++lvl) {
    const OrbitTree& tree = k_chain.level_orbit(lvl);
    if (tree.size() == 1) continue;
    Point best = tree.points[0];
    Point best_img = y[best];
    for (size_t i = 1; i < tree.size(); ++i) {
      Point img = y[tree.points[i]];
      if (img < best_img) {
        best_img = img;
        best = tree.points[i];
      }
    }
    if (best != tree.root) y = compose(k_chain.transversal(lvl, best), y);
  }
  return y;
}

std::vector<Point> coset_key(const StabChain& k_chain, const Perm& rep) {
  std::vector<Point> key;
  key.reserve(k_chain.num_levels());
  for (Point b : k_chain.base()) key.push_back(rep[b]);
  return key;
}

CosetOrbitResult coset_orbit(const StabChain& h, const StabChain& k, uint64_t budget) {
  if (h.degree() != k.degree()) throw ValidationError("degree mismatch");
  if (budget == 0) throw ValidationError("coset budget must be positive");
  const size_t degree = h.degree();
  const std::vector<Perm>& hgens = h.generators();

  CosetOrbitResult out;
  std::unordered_map<std::vector<Point>, int32_t, KeyHash> index_of;
  std::vector<int32_t> parent{-1}, via{-1};
  std::vector<std::pair<int32_t, int32_t>> closing; // (coset, generator)

  index_of.emplace(coset_key(k, canonical_coset_rep(k, Perm::identity(degree))), 0);

  size_t processed = 0;
  size_t count = 1;
  while (processed < count) {
    Perm w = coset_word(parent, via, hgens, processed, degree);
    for (size_t gi = 0; gi < hgens.size(); ++gi) {
      Perm moved = compose(w, hgens[gi]);
      std::vector<Point> key = coset_key(k, canonical_coset_rep(k, moved));
      auto [it, fresh] = index_of.emplace(std::move(key), int32_t(count));
      if (fresh) {
        parent.push_back(int32_t(processed));
        via.push_back(int32_t(gi));
        ++count;
        if (count > budget) return out; // completed stays false
      } else {
        closing.emplace_back(int32_t(processed), int32_t(gi));
      }
    }
    ++processed;
  }

  out.completed = true;
  out.size = count;

  // The start-coset stabilizer from Schreier generators at closing edges.
  // Orbit-stabilizer pins its order exactly, so the chain build can stop
  // with a proof the moment the transversal product reaches it.
  BigCount target = h.order() / BigCount(count);
  if (target * BigCount(count) != h.order())
    inconsistency("coset orbit size does not divide the group order");
  out.stabilizer_order = target;
  if (target == 1) return out;

  StabChain stab = StabChain::build(degree, {});
  for (const auto& [ci, gi] : closing) {
    Perm wi = coset_word(parent, via, hgens, size_t(ci), degree);
    Perm edge = compose(wi, hgens[size_t(gi)]);
    std::vector<Point> key = coset_key(k, canonical_coset_rep(k, edge));
    auto it = index_of.find(key);
    if (it == index_of.end()) inconsistency("closing edge lost its target coset");
    Perm wj = coset_word(parent, via, hgens, size_t(it->second), degree);
    Perm s = compose(edge, wj.inverse());
    if (s.is_identity() || stab.contains(s)) continue;
    if (!k.contains(s))
      inconsistency("stabilizer generator escaped the right factor");
    out.stabilizer_gens.push_back(std::move(s));
    StabChain::Options o;
    o.target_order = target;
    o.trusted_target = true;
    stab = StabChain::build(degree, out.stabilizer_gens, std::move(o));
    if (stab.order() == target) return out;
  }
  inconsistency("Schreier generators exhausted below the stabilizer order");
}

uint64_t consistency_failure_count() { return g_inconsistencies.load(std::memory_order_relaxed); }

namespace {

void require_subgroup(const StabChain& big, const StabChain& small, const char* what) {
  if (big.degree() != small.degree()) throw ValidationError("degree mismatch");
  for (const Perm& g : small.generators())
    if (!big.contains(g)) throw ValidationError(what);
}

} // namespace

FactorizationReport verify_factorization(const StabChain& l, const StabChain& h,
                                         const StabChain& k, uint64_t budget_cosets) {
  require_subgroup(l, h, "left factor is not a subgroup of the ambient group");
  require_subgroup(l, k, "right factor is not a subgroup of the ambient group");

  FactorizationReport rep;
  rep.index = l.order() / k.order();
  if (rep.index * k.order() != l.order())
    inconsistency("subgroup order fails Lagrange divisibility");

  uint64_t budget;
  if (budget_cosets != 0) {
    budget = budget_cosets;
  } else if (fits_u64(rep.index)) {
    budget = to_u64(rep.index);
  } else {
    throw BudgetExceeded("coset index exceeds the walkable range");
  }

  // The walk needs coset labels that identify cosets inside l, so the right
  // factor is re-based along a base of l (cheap: its order is already known).
  StabChain::Options o;
  o.base_hint = l.base();
  o.target_order = k.order();
  o.trusted_target = true;
  StabChain k_based = StabChain::build(k.degree(), k.generators(), std::move(o));
  if (k_based.order() != k.order()) inconsistency("re-based chain changed its order");

  CosetOrbitResult orbit = coset_orbit(h, k_based, budget);
  if (!orbit.completed) throw BudgetExceeded("coset orbit budget exhausted");

  rep.cosets_reached = BigCount(orbit.size);
  rep.holds = rep.cosets_reached == rep.index;
  rep.intersection_order = orbit.stabilizer_order;
  rep.intersection_gens = std::move(orbit.stabilizer_gens);

  // Independent criterion: |h| * |k| = |l| * |h intersect k| iff l = h*k.
  bool by_orders = h.order() * k.order() == l.order() * rep.intersection_order;
  if (by_orders != rep.holds)
    inconsistency("coset-orbit verdict disagrees with the order identity");
  return rep;
}

FactorizationReport descent_check(const StabChain& l, const StabChain& h, const StabChain& k,
                                  const StabChain& n) {
  require_subgroup(l, n, "normal subgroup candidate is not a subgroup");
  require_subgroup(n, h, "left factor does not lie in the normal subgroup");
  for (const Perm& g : n.generators())
    for (const Perm& c : l.generators())
      if (!n.contains(g.conjugated_by(c)))
        throw ValidationError("subgroup is not normal in the ambient group");

  FactorizationReport top = verify_factorization(l, h, k);
  if (!top.holds) throw ValidationError("outer factorization does not hold");

  // k intersect n = stabilizer of the coset n*1 under right multiplication
  // by k: the same orbit machinery with the roles shifted.
  StabChain::Options o;
  o.base_hint = l.base();
  o.target_order = n.order();
  o.trusted_target = true;
  StabChain n_based = StabChain::build(n.degree(), n.generators(), std::move(o));
  BigCount outer_index = l.order() / n.order();
  if (!fits_u64(outer_index)) throw BudgetExceeded("normal subgroup index too large");
  CosetOrbitResult kn = coset_orbit(k, n_based, to_u64(outer_index));
  if (!kn.completed) throw BudgetExceeded("coset orbit budget exhausted");

  StabChain::Options kno;
  kno.target_order = kn.stabilizer_order;
  kno.trusted_target = true;
  StabChain kn_chain = StabChain::build(l.degree(), kn.stabilizer_gens, std::move(kno));
  if (kn_chain.order() != kn.stabilizer_order)
    inconsistency("intersection chain missed its proven order");
  return verify_factorization(n, h, kn_chain);
}

} // namespace ff
