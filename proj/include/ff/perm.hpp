#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ff {

// Domain point. 16 bits bounds the degree at 65535, far above any action used
// here (max 3280) while keeping image arrays compact for cache-heavy sifting.
using Point = uint16_t;

// Immutable bijection on {0..degree-1}, stored as its image array.
//
// Composition is apply-left-first everywhere: compose(p, q) maps i to
// q[p[i]], i.e. p acts first. This matches right-action conventions for
// coset multiplication and is asserted by a sentinel test.
//
// Points are 0-based internally and 1-based in all text I/O.
class Perm {
public:
  Perm() = default; // degree 0

  static Perm identity(size_t degree);
  // Validates that images is a bijection of {0..degree-1}.
  static Perm from_images(std::vector<Point> images);

  size_t degree() const { return images_.size(); }
  Point apply(Point i) const { return images_[i]; }
  Point operator[](Point i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  // g^{-1} * this * g (left-first order).
  Perm conjugated_by(const Perm& g) const;

  // Least m >= 1 with p^m = identity: lcm of cycle lengths.
  // Throws std::overflow_error if that lcm exceeds 64 bits.
  uint64_t order() const;
  // Cycle lengths >= 2, sorted descending (fixed points omitted).
  std::vector<size_t> cycle_type() const;
  size_t num_moved_points() const;
  // Smallest point not fixed, or degree if identity.
  Point smallest_moved_point() const;

  // 1-based disjoint-cycle notation, cycles and entries canonically ordered;
  // "()" for the identity. parse accepts any whitespace-insensitive product
  // of disjoint cycles over points 1..degree.
  std::string to_cycles() const;
  static Perm parse_cycles(const std::string& text, size_t degree);

  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

private:
  explicit Perm(std::vector<Point> images) : images_(std::move(images)) {}
  std::vector<Point> images_;

  friend Perm compose(const Perm& p, const Perm& q);
};

// Apply p first, then q.
Perm compose(const Perm& p, const Perm& q);

struct PermHash {
  size_t operator()(const Perm& p) const;
};

} // namespace ff
