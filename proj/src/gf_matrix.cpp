#include "ff/gf_matrix.hpp"

#include <utility>

#include "ff/errors.hpp"

namespace ff {

Matrix::Matrix(Field f, size_t n) : f_(std::move(f)), n_(n), e_(n * n, 0) {
  if (n == 0) throw ValidationError("matrix dimension must be positive");
}

Matrix Matrix::identity(const Field& f, size_t n) {
  Matrix m(f, n);
  for (size_t i = 0; i < n; ++i) m.e_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<int>>& rows) {
  Matrix m(f, rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw ValidationError("matrix rows must form a square");
    for (size_t c = 0; c < rows.size(); ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void Matrix::set(size_t r, size_t c, int v) {
  if (v < 0 || v >= f_.q()) throw ValidationError("matrix entry outside the field");
  e_[r * n_ + c] = v;
}

bool Matrix::is_identity() const {
  for (size_t r = 0; r < n_; ++r)
    for (size_t c = 0; c < n_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

bool Matrix::is_scalar() const {
  int d = at(0, 0);
  if (d == 0) return false;
  for (size_t r = 0; r < n_; ++r)
    for (size_t c = 0; c < n_; ++c)
      if (at(r, c) != (r == c ? d : 0)) return false;
  return true;
}

Matrix Matrix::transposed() const {
  Matrix t(f_, n_);
  for (size_t r = 0; r < n_; ++r)
    for (size_t c = 0; c < n_; ++c) t.e_[c * n_ + r] = at(r, c);
  return t;
}

namespace {

// Gauss-Jordan over the field; returns the determinant and, when wanted,
// writes the inverse.
int eliminate(const Matrix& m, Matrix* inverse_out) {
  const Field& f = m.field();
  const size_t n = m.dim();
  Matrix a = m;
  Matrix inv = Matrix::identity(f, n);
  int det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (size_t c = 0; c < n; ++c) {
        int t = a.at(piv, c);
        a.set(piv, c, a.at(col, c));
        a.set(col, c, t);
        t = inv.at(piv, c);
        inv.set(piv, c, inv.at(col, c));
        inv.set(col, c, t);
      }
      det = f.neg(det);
    }
    int pval = a.at(col, col);
    det = f.mul(det, pval);
    int pinv = f.inv(pval);
    for (size_t c = 0; c < n; ++c) {
      a.set(col, c, f.mul(a.at(col, c), pinv));
      inv.set(col, c, f.mul(inv.at(col, c), pinv));
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      int factor = a.at(r, col);
      if (factor == 0) continue;
      for (size_t c = 0; c < n; ++c) {
        a.set(r, c, f.sub(a.at(r, c), f.mul(factor, a.at(col, c))));
        inv.set(r, c, f.sub(inv.at(r, c), f.mul(factor, inv.at(col, c))));
      }
    }
  }
  if (inverse_out) *inverse_out = inv;
  return det;
}

} // namespace

int Matrix::determinant() const { return eliminate(*this, nullptr); }

Matrix Matrix::inverse() const {
  Matrix out = Matrix::identity(f_, n_);
  if (eliminate(*this, &out) == 0) throw ValidationError("matrix is singular");
  return out;
}

std::vector<std::vector<int>> Matrix::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (size_t r = 0; r < n_; ++r)
    for (size_t c = 0; c < n_; ++c) out[r][c] = at(r, c);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim() || a.field().q() != b.field().q() || a.field().p() != b.field().p())
    throw ValidationError("matrix shape or field mismatch");
  const Field& f = a.field();
  const size_t n = a.dim();
  Matrix out(f, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      int s = 0;
      for (size_t t = 0; t < n; ++t) s = f.add(s, f.mul(a.at(r, t), b.at(t, c)));
      out.set(r, c, s);
    }
  return out;
}

size_t action_degree(const Field& f, size_t n, VectorMode mode) {
  size_t total = 1;
  for (size_t i = 0; i < n; ++i) {
    total *= size_t(f.q());
    if (total > (size_t(1) << 24)) throw ValidationError("vector space too large");
  }
  size_t nonzero = total - 1;
  return mode == VectorMode::vectors ? nonzero : nonzero / size_t(f.q() - 1);
}

Perm matrix_to_perm(const Matrix& m, VectorMode mode) {
  const Field& f = m.field();
  const size_t n = m.dim();
  const size_t q = size_t(f.q());
  size_t total = 1;
  for (size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > (size_t(1) << 24)) throw ValidationError("vector space too large");
  }
  if (m.determinant() == 0) throw ValidationError("singular matrix has no permutation action");

  // Rank r in 1..total-1 encodes the vector (v0..v_{n-1}), v0 most
  // significant base-q digit. Domain points number the admissible ranks in
  // increasing order.
  std::vector<int32_t> point_of_rank(total, -1);
  std::vector<std::vector<int>> vecs;
  std::vector<int> v(n, 0);
  for (size_t rank = 1; rank < total; ++rank) {
    size_t r = rank;
    for (size_t i = n; i-- > 0;) {
      v[i] = int(r % q);
      r /= q;
    }
    if (mode == VectorMode::projective) {
      int lead = 0;
      for (size_t i = 0; i < n; ++i)
        if (v[i] != 0) {
          lead = v[i];
          break;
        }
      if (lead != 1) continue;
    }
    point_of_rank[rank] = int32_t(vecs.size());
    vecs.push_back(v);
  }

  if (vecs.size() > size_t(65536))
    throw ValidationError("action domain exceeds the supported point range");

  std::vector<Point> images(vecs.size());
  std::vector<int> w(n);
  for (size_t idx = 0; idx < vecs.size(); ++idx) {
    const std::vector<int>& src = vecs[idx];
    for (size_t c = 0; c < n; ++c) {
      int s = 0;
      for (size_t r = 0; r < n; ++r) s = f.add(s, f.mul(src[r], m.at(r, c)));
      w[c] = s;
    }
    if (mode == VectorMode::projective) {
      int lead = 0;
      for (size_t i = 0; i < n; ++i)
        if (w[i] != 0) {
          lead = w[i];
          break;
        }
      if (lead != 1) {
        int s = f.inv(lead);
        for (size_t i = 0; i < n; ++i) w[i] = f.mul(w[i], s);
      }
    }
    size_t rank = 0;
    for (size_t i = 0; i < n; ++i) rank = rank * q + size_t(w[i]);
    images[idx] = Point(point_of_rank[rank]);
  }

  Perm perm = Perm::from_images(std::move(images));
  if (perm.is_identity()) {
    bool ok = mode == VectorMode::vectors ? m.is_identity() : m.is_scalar();
    if (!ok) throw ValidationError("matrix action is not faithful on the chosen domain");
  }
  return perm;
}

} // namespace ff
