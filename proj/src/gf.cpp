#include "ff/gf.hpp"

#include "ff/errors.hpp"

namespace ff {

Field::Field(int p, int k) : p_(p), k_(k) {
  if ((p != 2 && p != 3 && p != 5) || (k != 1 && k != 2))
    throw ValidationError("unsupported field parameters");
  q_ = k == 1 ? p : p * p;
  if (k == 2) {
    // x^2 = red1*x + red0, from the fixed irreducible for each p.
    if (p == 2) {
      red1_ = 1; // x^2 + x + 1
      red0_ = 1;
    } else if (p == 3) {
      red1_ = 0; // x^2 + 1
      red0_ = 2;
    } else {
      red1_ = 0; // x^2 + 2
      red0_ = 3;
    }
  }
  mul_.assign(size_t(q_) * size_t(q_), 0);
  for (int a = 0; a < q_; ++a)
    for (int b = 0; b < q_; ++b) mul_[size_t(a) * size_t(q_) + size_t(b)] = uint8_t(mul_slow(a, b));
  inv_.assign(size_t(q_), 0);
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul(a, b) == 1) {
        inv_[size_t(a)] = uint8_t(b);
        break;
      }
}

int Field::check(int a) const {
  if (a < 0 || a >= q_) throw ValidationError("field element out of range");
  return a;
}

int Field::add(int a, int b) const {
  check(a);
  check(b);
  if (k_ == 1) return (a + b) % p_;
  int lo = (a % p_ + b % p_) % p_;
  int hi = (a / p_ + b / p_) % p_;
  return lo + p_ * hi;
}

int Field::neg(int a) const {
  check(a);
  if (k_ == 1) return (p_ - a) % p_;
  int lo = (p_ - a % p_) % p_;
  int hi = (p_ - a / p_) % p_;
  return lo + p_ * hi;
}

int Field::sub(int a, int b) const { return add(a, neg(b)); }

int Field::mul_slow(int a, int b) const {
  if (k_ == 1) return (a * b) % p_;
  int a0 = a % p_, a1 = a / p_;
  int b0 = b % p_, b1 = b / p_;
  int c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
  // Fold x^2 = red1*x + red0.
  c1 += c2 * red1_;
  c0 += c2 * red0_;
  return c0 % p_ + p_ * (c1 % p_);
}

int Field::inv(int a) const {
  check(a);
  if (a == 0) throw ValidationError("zero has no multiplicative inverse");
  return inv_[size_t(a)];
}

int Field::pow(int a, uint64_t e) const {
  check(a);
  int r = 1;
  int base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int Field::order_of(int a) const {
  check(a);
  if (a == 0) throw ValidationError("zero has no multiplicative order");
  int r = a, n = 1;
  while (r != 1) {
    r = mul(r, a);
    ++n;
  }
  return n;
}

int Field::primitive_element() const {
  for (int a = 1; a < q_; ++a)
    if (order_of(a) == q_ - 1) return a;
  throw ValidationError("no primitive element found"); // unreachable for a field
}

} // namespace ff
