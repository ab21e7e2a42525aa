#pragma once

#include <vector>

#include "ff/gf.hpp"
#include "ff/perm.hpp"

namespace ff {

// Square matrix over a small field, row-major, entries in the field's
// integer encoding. The field travels with the matrix by value (it is tiny).
class Matrix {
public:
  Matrix(Field f, size_t n); // zero matrix
  static Matrix identity(const Field& f, size_t n);
  static Matrix from_rows(const Field& f, const std::vector<std::vector<int>>& rows);

  const Field& field() const { return f_; }
  size_t dim() const { return n_; }
  int at(size_t r, size_t c) const { return e_[r * n_ + c]; }
  void set(size_t r, size_t c, int v);

  bool operator==(const Matrix& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool is_identity() const;
  bool is_scalar() const;

  Matrix transposed() const;
  int determinant() const;
  Matrix inverse() const; // ValidationError when singular

  std::vector<std::vector<int>> rows() const;

private:
  Field f_;
  size_t n_;
  std::vector<int> e_;
};

// this-then-other under the right action on row vectors: v*(a*b) = (v*a)*b.
Matrix matmul(const Matrix& a, const Matrix& b);

enum class VectorMode {
  vectors,   // domain: all nonzero row vectors, q^n - 1 points
  projective // domain: vectors scaled so the first nonzero entry is 1
};

// Permutation induced by v -> v*M on the chosen domain. Domain points are
// numbered by the lexicographic rank of the vector (v0, ..., v_{n-1}), v0
// most significant, zero vector excluded; in projective mode only normalized
// representatives are counted. A matrix whose action is trivial must be the
// identity (vectors mode) or scalar (projective mode): anything else means
// the action lost information, and throws ValidationError.
Perm matrix_to_perm(const Matrix& m, VectorMode mode);

// Degree of the permutation domain for an n-dimensional action over f.
size_t action_degree(const Field& f, size_t n, VectorMode mode);

} // namespace ff
