#include "ff/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ff/errors.hpp"

namespace ff {

Perm Perm::identity(size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point(0));
  return Perm(std::move(images));
}

Perm Perm::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point img : images) {
    if (img >= images.size() || seen[img])
      throw ValidationError("image array is not a bijection of the domain");
    seen[img] = true;
  }
  return Perm(std::move(images));
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<Point> inv(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = Point(i);
  return Perm(std::move(inv));
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw ValidationError("degree mismatch in composition");
  std::vector<Point> images(p.degree());
  for (size_t i = 0; i < images.size(); ++i) images[i] = q.images_[p.images_[i]];
  return Perm(std::move(images));
}

Perm Perm::conjugated_by(const Perm& g) const {
  return compose(compose(g.inverse(), *this), g);
}

std::vector<size_t> Perm::cycle_type() const {
  std::vector<size_t> lengths;
  std::vector<bool> seen(degree(), false);
  for (size_t start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    size_t len = 0;
    for (Point x = Point(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

uint64_t Perm::order() const {
  uint64_t result = 1;
  for (size_t len : cycle_type()) {
    uint64_t g = std::gcd(result, uint64_t(len));
    uint64_t factor = uint64_t(len) / g;
    if (result > UINT64_MAX / factor)
      throw std::overflow_error("element order exceeds 64 bits");
    result *= factor;
  }
  return result;
}

size_t Perm::num_moved_points() const {
  size_t n = 0;
  for (size_t i = 0; i < degree(); ++i)
    if (images_[i] != i) ++n;
  return n;
}

Point Perm::smallest_moved_point() const {
  for (size_t i = 0; i < degree(); ++i)
    if (images_[i] != i) return Point(i);
  return Point(degree());
}

std::string Perm::to_cycles() const {
  std::string out;
  std::vector<bool> seen(degree(), false);
  for (size_t start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    bool first = true;
    for (Point x = Point(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) out += ',';
      out += std::to_string(x + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm Perm::parse_cycles(const std::string& text, size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point(0));
  std::vector<bool> used(degree, false);

  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
  };

  skip_ws();
  bool any_cycle = false;
  while (i < text.size()) {
    if (text[i] != '(') throw ValidationError("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<Point> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!cycle.empty()) {
        if (text[i] != ',') throw ValidationError("expected ',' in cycle notation: " + text);
        ++i;
        skip_ws();
      }
      size_t value = 0, digits = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + size_t(text[i] - '0');
        if (value > degree) throw ValidationError("point exceeds degree in: " + text);
        ++i;
        ++digits;
      }
      if (digits == 0) throw ValidationError("malformed token in cycle notation: " + text);
      if (value == 0) throw ValidationError("points are 1-based in cycle notation: " + text);
      Point pt = Point(value - 1);
      if (used[pt]) throw ValidationError("repeated point in cycle list: " + text);
      used[pt] = true;
      cycle.push_back(pt);
      skip_ws();
    }
    if (i >= text.size()) throw ValidationError("unterminated cycle in: " + text);
    ++i; // ')'
    if (cycle.size() == 1) throw ValidationError("singleton cycle in: " + text);
    for (size_t j = 0; j < cycle.size(); ++j)
      images[cycle[j]] = cycle[(j + 1) % cycle.size()];
    any_cycle = true;
    skip_ws();
  }
  if (!any_cycle) throw ValidationError("empty cycle notation: " + text);
  return Perm(std::move(images));
}

size_t PermHash::operator()(const Perm& p) const {
  uint64_t h = 0x9e3779b97f4a7c15ULL ^ (uint64_t(p.degree()) << 32);
  for (Point img : p.images()) {
    h ^= img;
    h *= 0x100000001b3ULL;
  }
  return size_t(h);
}

} // namespace ff
