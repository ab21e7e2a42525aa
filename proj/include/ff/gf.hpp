#pragma once

#include <cstdint>
#include <vector>

namespace ff {

// Small prime-power field GF(p^k), p in {2, 3, 5}, k in {1, 2}.
//
// Elements are encoded as integers 0..q-1. For k = 1 that is the residue
// itself; for k = 2 the value a + p*b stands for a + b*x, reduced modulo a
// fixed irreducible polynomial:
//   GF(4):  x^2 + x + 1
//   GF(9):  x^2 + 1
//   GF(25): x^2 + 2
// The encoding, the irreducibles and all arithmetic are part of the external
// data contract, so they must never change.
class Field {
public:
  Field(int p, int k); // ValidationError on unsupported parameters

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const { return mul_[size_t(check(a)) * size_t(q_) + size_t(check(b))]; }
  int inv(int a) const; // ValidationError on zero
  int pow(int a, uint64_t e) const;

  // Multiplicative order of a nonzero element.
  int order_of(int a) const;
  // Smallest element generating the multiplicative group.
  int primitive_element() const;

private:
  int check(int a) const;
  int mul_slow(int a, int b) const;

  int p_ = 0, k_ = 0, q_ = 0;
  int red0_ = 0, red1_ = 0; // x^2 = red1*x + red0
  std::vector<uint8_t> mul_;
  std::vector<uint8_t> inv_;
};

} // namespace ff
