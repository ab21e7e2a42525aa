#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ff/bigint.hpp"
#include "ff/perm.hpp"
#include "ff/rng.hpp"

namespace ff {

// Orbit of a root point under a generator set, with its breadth-first
// Schreier tree. Edges are labelled by indices into an inverse-closed label
// list: label 2i is generator i, label 2i+1 is its inverse. Breadth-first
// construction keeps every tree path as shallow as the label set allows;
// trees are rebuilt (re-levelled) whenever the label set grows.
struct OrbitTree {
  Point root = 0;
  std::vector<Point> points;   // BFS discovery order; points[0] == root
  std::vector<int32_t> parent; // per domain point; -1 outside the orbit
  std::vector<int32_t> via;    // label index of the edge parent -> point
  std::vector<int32_t> pos;    // index into points; -1 outside the orbit

  bool contains(Point p) const { return pos[p] >= 0; }
  size_t size() const { return points.size(); }
};

// Orbit of root under the generators, with Schreier tree (see OrbitTree for
// the label convention). Throws ValidationError on degree problems.
OrbitTree orbit_of(const std::vector<Perm>& gens, Point root, size_t degree);

// Element mapping the tree root to target, composed from the tree word.
Perm tree_word(const OrbitTree& tree, const std::vector<Perm>& gens, Point target);

struct ChainBuilder;

// Base and strong generating set (Schreier-Sims), the engine behind every
// order, membership, stabilizer and random-element query.
//
// Construction runs a randomized accelerator first, then a deterministic
// Schreier completion pass, so the finished chain is a proof, not a
// probabilistic claim. The one shortcut: when the caller supplies a verified
// order of a group known to contain the generators (trusted_target), hitting
// that order with the transversal-size product already proves completeness
// (the product counts distinct elements), and the pass is skipped.
class StabChain {
public:
  struct Options {
    // Prescribed leading base points, kept as chain levels in this exact
    // order even when their orbits are trivial. Canonical coset labelling
    // and iterated point stabilizers rely on that layout.
    std::vector<Point> base_hint;
    // Expected order. Untrusted by default: it only stops the randomized
    // accelerator early; the deterministic pass still runs and the final
    // order may differ. With trusted_target (see class comment) reaching it
    // exactly finishes construction with a proof.
    std::optional<BigCount> target_order;
    bool trusted_target = false;
    // Seed for the randomized accelerator (the result is exact either way).
    uint64_t seed = 0x5eedULL;
  };

  // Empty generator list yields the trivial group of the given degree.
  static StabChain build(size_t degree, std::vector<Perm> gens);
  static StabChain build(size_t degree, std::vector<Perm> gens, Options opts);

  // As build, but gives up (nullopt) as soon as the transversal-size product
  // exceeds `reject_above` - a proof that |<gens>| > reject_above. Used by
  // subgroup searches to discard oversized candidates cheaply.
  static std::optional<StabChain> try_build_bounded(size_t degree, std::vector<Perm> gens,
                                                    Options opts, const BigCount& reject_above);

  size_t degree() const { return degree_; }
  const BigCount& order() const { return order_; }
  const std::vector<Perm>& generators() const { return input_gens_; }
  const std::vector<Point>& base() const { return base_; }
  size_t num_levels() const { return levels_.size(); }
  Point base_point(size_t level) const { return levels_[level].beta; }

  // Strong generators fixing base[0..level-1] pointwise. For a finished
  // chain these generate that pointwise stabilizer exactly.
  const std::vector<Perm>& level_generators(size_t level) const { return levels_[level].gens; }
  const OrbitTree& level_orbit(size_t level) const { return levels_[level].tree; }
  size_t orbit_size(size_t level) const { return levels_[level].tree.size(); }
  std::vector<size_t> orbit_sizes() const;

  // Transversal element u with u(base[level]) = pt, and its inverse.
  Perm transversal(size_t level, Point pt) const;
  Perm transversal_inverse(size_t level, Point pt) const;

  // Residue after factoring p through the transversals; identity iff member.
  Perm sift(const Perm& p) const;
  bool contains(const Perm& p) const;

  // Uniform over the group: one independent transversal pick per level.
  Perm random_element(Rng& rng) const;

private:
  struct Level {
    Point beta = 0;
    std::vector<Perm> gens;   // strong generators fixing base[0..level-1]
    std::vector<Perm> labels; // gens and their inverses, interleaved
    OrbitTree tree;
  };

  StabChain() = default;

  size_t degree_ = 0;
  BigCount order_ = 1;
  std::vector<Perm> input_gens_;
  std::vector<Point> base_;
  std::vector<Level> levels_;

  friend struct ChainBuilder;
};

} // namespace ff
