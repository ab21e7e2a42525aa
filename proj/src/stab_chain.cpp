#include "ff/stab_chain.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "ff/errors.hpp"

namespace ff {

namespace {

std::vector<Perm> make_labels(const std::vector<Perm>& gens) {
  std::vector<Perm> labels;
  labels.reserve(gens.size() * 2);
  for (const Perm& g : gens) {
    labels.push_back(g);
    labels.push_back(g.inverse());
  }
  return labels;
}

void bfs_fill(OrbitTree& t, const std::vector<Perm>& labels, size_t degree) {
  t.parent.assign(degree, -1);
  t.via.assign(degree, -1);
  t.pos.assign(degree, -1);
  t.points.clear();
  t.points.push_back(t.root);
  t.pos[t.root] = 0;
  for (size_t qi = 0; qi < t.points.size(); ++qi) {
    Point x = t.points[qi];
    for (size_t l = 0; l < labels.size(); ++l) {
      Point y = labels[l][x];
      if (y != x && t.pos[y] < 0) {
        t.pos[y] = static_cast<int32_t>(t.points.size());
        t.parent[y] = static_cast<int32_t>(x);
        t.via[y] = static_cast<int32_t>(l);
        t.points.push_back(y);
      }
    }
  }
}

void validate_gens(const std::vector<Perm>& gens, size_t degree) {
  if (degree > size_t(std::numeric_limits<Point>::max()) + 1)
    throw ValidationError("degree exceeds the supported point range");
  for (const Perm& g : gens)
    if (g.degree() != degree) throw ValidationError("generator degree mismatch");
}

} // namespace

OrbitTree orbit_of(const std::vector<Perm>& gens, Point root, size_t degree) {
  validate_gens(gens, degree);
  if (size_t(root) >= degree) throw ValidationError("orbit root outside the domain");
  OrbitTree t;
  t.root = root;
  bfs_fill(t, make_labels(gens), degree);
  return t;
}

Perm tree_word(const OrbitTree& tree, const std::vector<Perm>& gens, Point target) {
  if (!tree.contains(target)) throw ValidationError("target outside the orbit");
  std::vector<int32_t> idx;
  for (Point y = target; y != tree.root; y = Point(tree.parent[y])) idx.push_back(tree.via[y]);
  Perm u = Perm::identity(gens.empty() ? tree.pos.size() : gens[0].degree());
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
    const Perm& g = gens[size_t(*it) / 2];
    u = compose(u, (*it & 1) ? g.inverse() : g);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Construction.
//
// Strong generators live in one global list; the generator set of level k is
// the suffix view {g : placement(g) >= k}, where placement(g) is the first
// level whose base point g moves. Suffix views keep the per-level generator
// sets nested, which the completeness argument needs. Any addition dirties
// levels 0..placement; trees are rebuilt lazily.

struct ChainBuilder {
  size_t degree;
  StabChain::Options opts;
  std::vector<Perm> input;

  std::vector<Perm> strong;
  std::vector<size_t> place;
  std::vector<StabChain::Level> levels;
  std::vector<char> dirty;

  const BigCount* bound = nullptr;
  bool exceeded = false;
  bool proven = false;

  void ensure_fresh(size_t k) {
    if (!dirty[k]) return;
    StabChain::Level& L = levels[k];
    L.gens.clear();
    for (size_t gi = 0; gi < strong.size(); ++gi)
      if (place[gi] >= k) L.gens.push_back(strong[gi]);
    L.labels = make_labels(L.gens);
    L.tree.root = L.beta;
    bfs_fill(L.tree, L.labels, degree);
    dirty[k] = 0;
  }

  BigCount product() {
    BigCount p = 1;
    for (size_t k = 0; k < levels.size(); ++k) {
      ensure_fresh(k);
      p *= BigCount(levels[k].tree.size());
    }
    return p;
  }

  // True when construction can stop (bound exceeded, or trusted order hit).
  bool check_state() {
    BigCount p = product();
    if (bound && p > *bound) {
      exceeded = true;
      return true;
    }
    if (opts.target_order && opts.trusted_target && p == *opts.target_order) {
      proven = true;
      return true;
    }
    return false;
  }

  // Factor r through levels from..end; returns the level where stripping
  // stopped (levels.size() when it fell through). r holds the residue.
  size_t strip(Perm& r, size_t from) {
    for (size_t k = from; k < levels.size(); ++k) {
      ensure_fresh(k);
      StabChain::Level& L = levels[k];
      Point x = r[L.beta];
      if (x == L.beta) continue;
      if (!L.tree.contains(x)) return k;
      for (Point y = x; y != L.beta; y = Point(L.tree.parent[y]))
        r = compose(r, L.labels[size_t(L.tree.via[y]) ^ 1]);
    }
    return levels.size();
  }

  void add_level(Point beta) {
    StabChain::Level L;
    L.beta = beta;
    levels.push_back(std::move(L));
    dirty.push_back(1);
  }

  void add_residue(Perm r, size_t stop) {
    if (stop == levels.size()) add_level(r.smallest_moved_point());
    strong.push_back(std::move(r));
    place.push_back(stop);
    for (size_t k = 0; k <= stop; ++k) dirty[k] = 1;
  }

  // Sift a candidate in from the top; true if it extended the chain.
  bool absorb(Perm g) {
    size_t stop = strip(g, 0);
    if (g.is_identity()) return false;
    add_residue(std::move(g), stop);
    return true;
  }

  void seed_randomized() {
    if (input.empty()) return;
    std::vector<Perm> pool = input;
    pool.reserve(8);
    while (pool.size() < 8) pool.push_back(input[pool.size() % input.size()]);
    Rng rng(opts.seed);
    int idle = 0, iters = 0;
    while (idle < 24 && iters < 4000) {
      ++iters;
      size_t a = size_t(rng.below(pool.size()));
      size_t b = size_t(rng.below(pool.size()));
      if (a == b) b = (b + 1) % pool.size();
      pool[a] = compose(pool[a], pool[b]);
      if (absorb(pool[a])) {
        idle = 0;
        if (check_state()) return;
        if (opts.target_order && product() == *opts.target_order) return;
      } else {
        ++idle;
      }
    }
  }

  void deterministic_pass() {
    if (levels.empty()) return;
    size_t i = levels.size(); // index + 1, to keep it unsigned
    i -= 1;
    while (true) {
      ensure_fresh(i);
      bool restarted = false;
      size_t restart_at = 0;
      {
        StabChain::Level& L = levels[i];
        const size_t orb = L.tree.size();
        std::vector<Perm> utab(orb), itab(orb);
        utab[0] = Perm::identity(degree);
        itab[0] = utab[0];
        for (size_t px = 1; px < orb; ++px) {
          Point x = L.tree.points[px];
          size_t pp = size_t(L.tree.pos[L.tree.parent[x]]);
          size_t lab = size_t(L.tree.via[x]);
          utab[px] = compose(utab[pp], L.labels[lab]);
          itab[px] = compose(L.labels[lab ^ 1], itab[pp]);
        }
        for (size_t px = 0; !restarted && px < orb; ++px) {
          Point x = L.tree.points[px];
          for (size_t m = 0; m < L.gens.size(); ++m) {
            const Perm& g = L.gens[m];
            Point y = g[x];
            if (L.tree.parent[y] == int32_t(x) && L.tree.via[y] == int32_t(2 * m))
              continue; // tree edge: the Schreier generator is the identity
            Perm s = compose(compose(utab[px], g), itab[size_t(L.tree.pos[y])]);
            if (s.is_identity()) continue;
            size_t stop = strip(s, i + 1);
            if (s.is_identity()) continue;
            add_residue(std::move(s), stop);
            if (check_state()) return;
            restarted = true;
            restart_at = stop;
            break;
          }
        }
      }
      if (restarted) {
        i = restart_at; // levels deeper than the placement stayed complete
      } else {
        if (i == 0) return;
        --i;
      }
    }
  }

  void run() {
    validate_gens(input, degree);
    for (Point b : opts.base_hint) {
      if (size_t(b) >= degree) throw ValidationError("base hint point outside the domain");
      add_level(b);
    }
    std::erase_if(input, [](const Perm& g) { return g.is_identity(); });
    for (const Perm& g : input) {
      absorb(g);
      if (check_state()) return;
    }
    seed_randomized();
    if (proven || exceeded) return;
    deterministic_pass();
  }

  StabChain finish(std::vector<Perm> original) {
    StabChain c;
    c.degree_ = degree;
    c.input_gens_ = std::move(original);
    c.order_ = product();
    for (size_t k = 0; k < levels.size(); ++k) {
      ensure_fresh(k);
      c.base_.push_back(levels[k].beta);
    }
    c.levels_ = std::move(levels);
    return c;
  }
};

StabChain StabChain::build(size_t degree, std::vector<Perm> gens) {
  return build(degree, std::move(gens), Options{});
}

StabChain StabChain::build(size_t degree, std::vector<Perm> gens, Options opts) {
  ChainBuilder b;
  b.degree = degree;
  b.opts = std::move(opts);
  b.input = gens;
  b.run();
  return b.finish(std::move(gens));
}

std::optional<StabChain> StabChain::try_build_bounded(size_t degree, std::vector<Perm> gens,
                                                      Options opts, const BigCount& reject_above) {
  ChainBuilder b;
  b.degree = degree;
  b.opts = std::move(opts);
  b.input = gens;
  b.bound = &reject_above;
  b.run();
  if (b.exceeded) return std::nullopt;
  return b.finish(std::move(gens));
}

std::vector<size_t> StabChain::orbit_sizes() const {
  std::vector<size_t> s;
  s.reserve(levels_.size());
  for (const Level& L : levels_) s.push_back(L.tree.size());
  return s;
}

Perm StabChain::transversal(size_t level, Point pt) const {
  const Level& L = levels_[level];
  if (!L.tree.contains(pt)) throw ValidationError("point outside the fundamental orbit");
  std::vector<int32_t> idx;
  for (Point y = pt; y != L.beta; y = Point(L.tree.parent[y])) idx.push_back(L.tree.via[y]);
  Perm u = Perm::identity(degree_);
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) u = compose(u, L.labels[size_t(*it)]);
  return u;
}

Perm StabChain::transversal_inverse(size_t level, Point pt) const {
  const Level& L = levels_[level];
  if (!L.tree.contains(pt)) throw ValidationError("point outside the fundamental orbit");
  Perm u = Perm::identity(degree_);
  for (Point y = pt; y != L.beta; y = Point(L.tree.parent[y]))
    u = compose(u, L.labels[size_t(L.tree.via[y]) ^ 1]);
  return u;
}

Perm StabChain::sift(const Perm& p) const {
  if (p.degree() != degree_) throw ValidationError("sift degree mismatch");
  Perm r = p;
  for (const Level& L : levels_) {
    Point x = r[L.beta];
    if (x == L.beta) continue;
    if (!L.tree.contains(x)) return r;
    for (Point y = x; y != L.beta; y = Point(L.tree.parent[y]))
      r = compose(r, L.labels[size_t(L.tree.via[y]) ^ 1]);
  }
  return r;
}

bool StabChain::contains(const Perm& p) const { return sift(p).is_identity(); }

Perm StabChain::random_element(Rng& rng) const {
  Perm r = Perm::identity(degree_);
  for (size_t i = levels_.size(); i-- > 0;) {
    const Level& L = levels_[i];
    size_t pick = size_t(rng.below(L.tree.size()));
    if (pick == 0) continue;
    std::vector<int32_t> idx;
    for (Point y = L.tree.points[pick]; y != L.beta; y = Point(L.tree.parent[y]))
      idx.push_back(L.tree.via[y]);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
      r = compose(r, L.labels[size_t(*it)]);
  }
  return r;
}

} // namespace ff
