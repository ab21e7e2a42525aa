#include "ff/group_props.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "ff/errors.hpp"

namespace ff {

namespace {

struct SubsetHash {
  size_t operator()(const std::vector<Point>& v) const {
    uint64_t h = 1469598103934665603ULL;
    for (Point p : v) {
      h ^= uint64_t(p) + 1;
      h *= 1099511628211ULL;
    }
    return size_t(h);
  }
};

BigCount binomial(size_t n, size_t k) {
  BigCount r = 1;
  for (size_t i = 0; i < k; ++i) {
    r *= BigCount(n - i);
    r /= BigCount(i + 1);
  }
  return r;
}

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Point(0)); }
  Point find(Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Finest partition in which a and b share a block and blocks map to blocks.
std::vector<Point> glue_pair(const std::vector<Perm>& gens, size_t degree, Point a, Point b) {
  UnionFind uf(degree);
  std::vector<std::pair<Point, Point>> work;
  uf.unite(a, b);
  work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (const Perm& g : gens) {
      Point u = uf.find(g[x]);
      Point v = uf.find(g[y]);
      if (uf.unite(u, v)) work.emplace_back(u, v);
    }
  }
  std::vector<Point> cls(degree);
  for (size_t p = 0; p < degree; ++p) cls[p] = uf.find(Point(p));
  return cls;
}

} // namespace

std::vector<std::vector<Point>> orbits_of(const std::vector<Perm>& gens, size_t degree) {
  for (const Perm& g : gens)
    if (g.degree() != degree) throw ValidationError("generator degree mismatch");
  std::vector<char> seen(degree, 0);
  std::vector<std::vector<Point>> out;
  for (size_t p = 0; p < degree; ++p) {
    if (seen[p]) continue;
    std::vector<Point> orbit{Point(p)};
    seen[p] = 1;
    for (size_t qi = 0; qi < orbit.size(); ++qi) {
      for (const Perm& g : gens) {
        Point y = g[orbit[qi]];
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const StabChain& chain) {
  if (chain.degree() == 0) return true;
  return orbit_of(chain.generators(), 0, chain.degree()).size() == chain.degree();
}

bool is_regular(const StabChain& chain) {
  return is_transitive(chain) && chain.order() == BigCount(chain.degree());
}

int transitivity_degree(const StabChain& chain, TransitivityMode mode, int max_k) {
  if (max_k < 1) throw ValidationError("transitivity bound must be positive");
  const size_t d = chain.degree();
  if (d == 0 || !is_transitive(chain)) return 0;
  const size_t kcap = std::min(size_t(max_k), d);

  if (mode == TransitivityMode::transitive) {
    StabChain::Options o;
    for (size_t i = 0; i < kcap; ++i) o.base_hint.push_back(Point(i));
    o.target_order = chain.order();
    o.trusted_target = true;
    StabChain forced = StabChain::build(d, chain.generators(), std::move(o));
    int k = 0;
    for (size_t i = 0; i < kcap; ++i) {
      if (forced.base_point(i) == Point(i) && forced.orbit_size(i) == d - i)
        ++k;
      else
        break;
    }
    return k;
  }

  // Single-orbit test on k-subsets, k = 1..kcap.
  constexpr size_t kSubsetBudget = 2'000'000;
  const std::vector<Perm>& gens = chain.generators();
  int best = 0;
  for (size_t k = 1; k <= kcap; ++k) {
    BigCount total = binomial(d, k);
    if (total > BigCount(kSubsetBudget)) break;
    std::vector<Point> start(k);
    std::iota(start.begin(), start.end(), Point(0));
    std::unordered_set<std::vector<Point>, SubsetHash> seen;
    std::vector<std::vector<Point>> queue{start};
    seen.insert(start);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      std::vector<Point> cur = queue[qi];
      for (const Perm& g : gens) {
        std::vector<Point> img(k);
        for (size_t t = 0; t < k; ++t) img[t] = g[cur[t]];
        std::sort(img.begin(), img.end());
        if (seen.insert(img).second) queue.push_back(std::move(img));
      }
    }
    if (BigCount(seen.size()) == total) best = int(k);
  }
  return best;
}

BlockSystem minimal_blocks(const StabChain& chain) {
  if (!is_transitive(chain)) throw ValidationError("block systems require a transitive group");
  const size_t d = chain.degree();
  BlockSystem out;
  out.primitive = true;
  out.block_size = 1;
  out.block_count = d;
  if (d <= 2) return out;

  const std::vector<Perm>& gens = chain.generators();
  for (size_t b = 1; b < d; ++b) {
    std::vector<Point> cls = glue_pair(gens, d, 0, Point(b));
    std::vector<size_t> count(d, 0);
    for (size_t p = 0; p < d; ++p) count[cls[p]] += 1;
    size_t size0 = count[cls[0]];
    if (size0 == d) continue; // this pair glues everything
    if (out.primitive || size0 < out.block_size) {
      out.primitive = false;
      out.block_size = size0;
      out.block_count = d / size0;
      out.blocks.assign(d, {});
      for (size_t p = 0; p < d; ++p) out.blocks[cls[p]].push_back(Point(p));
      std::erase_if(out.blocks, [](const std::vector<Point>& blk) { return blk.empty(); });
      std::sort(out.blocks.begin(), out.blocks.end());
    }
  }
  if (out.primitive) out.blocks.clear();
  return out;
}

StabChain normal_closure(const StabChain& g, const std::vector<Perm>& seeds) {
  const size_t d = g.degree();
  std::vector<Perm> closure;
  for (const Perm& s : seeds) {
    if (!g.contains(s)) throw ValidationError("normal closure seed outside the group");
    if (!s.is_identity()) closure.push_back(s);
  }
  uint64_t round = 0;
  while (true) {
    StabChain::Options o;
    o.target_order = g.order();
    o.trusted_target = true;
    o.seed = 0x9e3779b97f4a7c15ULL + round++;
    StabChain chain = StabChain::build(d, closure, std::move(o));
    if (chain.order() == g.order()) return chain;
    std::vector<Perm> fresh;
    for (const Perm& c : closure) {
      for (const Perm& gg : g.generators()) {
        Perm conj = c.conjugated_by(gg);
        if (!chain.contains(conj)) {
          bool dup = false;
          for (const Perm& f : fresh)
            if (f == conj) {
              dup = true;
              break;
            }
          if (!dup) fresh.push_back(std::move(conj));
        }
      }
    }
    if (fresh.empty()) return chain;
    for (Perm& f : fresh) closure.push_back(std::move(f));
  }
}

StabChain derived_subgroup(const StabChain& g) {
  const std::vector<Perm>& gens = g.generators();
  std::vector<Perm> seeds;
  for (size_t i = 0; i < gens.size(); ++i) {
    for (size_t j = i + 1; j < gens.size(); ++j) {
      Perm comm = compose(compose(gens[i].inverse(), gens[j].inverse()),
                          compose(gens[i], gens[j]));
      if (!comm.is_identity()) seeds.push_back(std::move(comm));
    }
  }
  return normal_closure(g, seeds);
}

std::vector<Perm> all_elements(const StabChain& chain, size_t cap) {
  if (chain.order() > BigCount(cap)) throw BudgetExceeded("element enumeration exceeds the cap");
  std::vector<Perm> elements{Perm::identity(chain.degree())};
  for (size_t i = chain.num_levels(); i-- > 0;) {
    const OrbitTree& tree = chain.level_orbit(i);
    std::vector<Perm> utab;
    utab.reserve(tree.size());
    for (Point pt : tree.points) utab.push_back(chain.transversal(i, pt));
    std::vector<Perm> next;
    next.reserve(elements.size() * tree.size());
    for (const Perm& e : elements) {
      next.push_back(e);
      for (size_t t = 1; t < utab.size(); ++t) next.push_back(compose(e, utab[t]));
    }
    elements = std::move(next);
  }
  return elements;
}

} // namespace ff
