#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ff/errors.hpp"
#include "ff/gf.hpp"
#include "ff/gf_matrix.hpp"
#include "ff/stab_chain.hpp"
#include "oracles.hpp"

using namespace ff;

namespace {

std::vector<Field> all_fields() {
  return {Field(2, 1), Field(3, 1), Field(5, 1), Field(2, 2), Field(3, 2), Field(5, 2)};
}

} // namespace

TEST_CASE("field axioms verified by exhaustion") {
  for (const Field& f : all_fields()) {
    CAPTURE(f.q());
    const int q = f.q();
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("fixed irreducibles pin the extension arithmetic") {
  // x is encoded as p; the reduction of x^2 identifies the polynomial.
  Field f4(2, 2);
  CHECK(f4.mul(2, 2) == 3); // x^2 = x + 1
  Field f9(3, 2);
  CHECK(f9.mul(3, 3) == 2); // x^2 = 2
  Field f25(5, 2);
  CHECK(f25.mul(5, 5) == 3); // x^2 = 3
}

TEST_CASE("characteristic and Frobenius") {
  for (const Field& f : all_fields()) {
    int s = 0;
    for (int i = 0; i < f.p(); ++i) s = f.add(s, 1);
    CHECK(s == 0);
    // a -> a^p is additive in characteristic p.
    for (int a = 0; a < f.q(); ++a)
      for (int b = 0; b < f.q(); ++b)
        CHECK(f.pow(f.add(a, b), uint64_t(f.p())) ==
              f.add(f.pow(a, uint64_t(f.p())), f.pow(b, uint64_t(f.p()))));
  }
}

TEST_CASE("primitive elements generate the multiplicative group") {
  for (const Field& f : all_fields()) {
    int g = f.primitive_element();
    CHECK(f.order_of(g) == f.q() - 1);
    std::vector<char> seen(size_t(f.q()), 0);
    int v = 1;
    for (int i = 0; i < f.q() - 1; ++i) {
      seen[size_t(v)] = 1;
      v = f.mul(v, g);
    }
    for (int a = 1; a < f.q(); ++a) CHECK(seen[size_t(a)] == 1);
  }
}

TEST_CASE("unsupported field parameters are rejected") {
  CHECK_THROWS_AS(Field(7, 1), ValidationError);
  CHECK_THROWS_AS(Field(2, 3), ValidationError);
  CHECK_THROWS_AS(Field(4, 1), ValidationError);
  Field f(3, 1);
  CHECK_THROWS_AS(f.mul(1, 3), ValidationError);
  CHECK_THROWS_AS(f.inv(0), ValidationError);
}

TEST_CASE("matrix arithmetic over a field") {
  Field f(3, 1);
  Matrix a = Matrix::from_rows(f, {{1, 1}, {0, 1}});
  Matrix b = Matrix::from_rows(f, {{0, 1}, {2, 0}});
  Matrix ab = matmul(a, b);
  CHECK(ab.rows() == std::vector<std::vector<int>>{{2, 1}, {2, 0}});
  CHECK(matmul(a, a.inverse()).is_identity());
  CHECK(matmul(b, b.inverse()).is_identity());
  CHECK(a.determinant() == 1);
  CHECK(b.determinant() == f.neg(2)); // -(1*2)
  CHECK(Matrix::identity(f, 3).is_scalar());
  Matrix twoI = Matrix::from_rows(f, {{2, 0}, {0, 2}});
  CHECK(twoI.is_scalar());
  CHECK_FALSE(twoI.is_identity());
  Matrix sing = Matrix::from_rows(f, {{1, 2}, {2, 1}});
  CHECK(sing.determinant() == 0);
  CHECK_THROWS_AS(sing.inverse(), ValidationError);
  CHECK_THROWS_AS(Matrix::from_rows(f, {{1, 2, 0}, {0, 1, 0}}), ValidationError);
  CHECK_THROWS_AS(Matrix::from_rows(f, {{3, 0}, {0, 1}}), ValidationError);
}

TEST_CASE("determinant is multiplicative on random matrices") {
  Field f(5, 1);
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(f, 3), b(f, 3);
    for (size_t r = 0; r < 3; ++r)
      for (size_t c = 0; c < 3; ++c) {
        a.set(r, c, int(rng.below(5)));
        b.set(r, c, int(rng.below(5)));
      }
    CHECK(f.mul(a.determinant(), b.determinant()) == matmul(a, b).determinant());
  }
}

TEST_CASE("vector action domain layout") {
  Field f2(2, 1);
  CHECK(action_degree(f2, 2, VectorMode::vectors) == 3);
  // Nonzero vectors of F_2^2 in rank order: (0,1), (1,0), (1,1).
  Matrix swap = Matrix::from_rows(f2, {{0, 1}, {1, 0}});
  Perm p = matrix_to_perm(swap, VectorMode::vectors);
  CHECK(p[0] == 1);
  CHECK(p[1] == 0);
  CHECK(p[2] == 2);

  Field f3(3, 1);
  CHECK(action_degree(f3, 2, VectorMode::projective) == 4);
  // Projective line over F_3 in rank order: (0,1), (1,0), (1,1), (1,2).
  Matrix diag = Matrix::from_rows(f3, {{2, 0}, {0, 1}});
  Perm pp = matrix_to_perm(diag, VectorMode::projective);
  CHECK(pp[0] == 0);
  CHECK(pp[1] == 1);
  CHECK(pp[2] == 3);
  CHECK(pp[3] == 2);
}

TEST_CASE("the action is a homomorphism") {
  Field f(3, 2);
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a(f, 2), b(f, 2);
    do {
      for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 2; ++c) a.set(r, c, int(rng.below(9)));
    } while (a.determinant() == 0);
    do {
      for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 2; ++c) b.set(r, c, int(rng.below(9)));
    } while (b.determinant() == 0);
    for (VectorMode mode : {VectorMode::vectors, VectorMode::projective}) {
      Perm pa = matrix_to_perm(a, mode);
      Perm pb = matrix_to_perm(b, mode);
      CHECK(matrix_to_perm(matmul(a, b), mode) == compose(pa, pb));
    }
  }
}

TEST_CASE("faithfulness accounting for scalars") {
  Field f(3, 1);
  Matrix twoI = Matrix::from_rows(f, {{2, 0}, {0, 2}});
  // Scalars move vectors but fix every projective point.
  CHECK_FALSE(matrix_to_perm(twoI, VectorMode::vectors).is_identity());
  CHECK(matrix_to_perm(twoI, VectorMode::projective).is_identity());
  CHECK(matrix_to_perm(Matrix::identity(f, 2), VectorMode::vectors).is_identity());
  Matrix sing = Matrix::from_rows(f, {{1, 2}, {2, 1}});
  CHECK_THROWS_AS(matrix_to_perm(sing, VectorMode::vectors), ValidationError);
}

TEST_CASE("special linear groups from transvection generators") {
  // SL_2(3) on 8 nonzero vectors (order 24) and the projective line of 4
  // points (order 12).
  Field f3(3, 1);
  std::vector<Matrix> sl2_3 = {Matrix::from_rows(f3, {{1, 1}, {0, 1}}),
                               Matrix::from_rows(f3, {{1, 0}, {1, 1}})};
  std::vector<Perm> vec_gens, proj_gens;
  for (const Matrix& m : sl2_3) {
    vec_gens.push_back(matrix_to_perm(m, VectorMode::vectors));
    proj_gens.push_back(matrix_to_perm(m, VectorMode::projective));
  }
  CHECK(StabChain::build(8, vec_gens).order() == 24);
  CHECK(StabChain::build(4, proj_gens).order() == 12);

  // SL_2(9): transvection parameters 1 and x span the field additively.
  Field f9(3, 2);
  std::vector<Matrix> sl2_9 = {
      Matrix::from_rows(f9, {{1, 1}, {0, 1}}), Matrix::from_rows(f9, {{1, 3}, {0, 1}}),
      Matrix::from_rows(f9, {{1, 0}, {1, 1}}), Matrix::from_rows(f9, {{1, 0}, {3, 1}})};
  std::vector<Perm> v9, p9;
  for (const Matrix& m : sl2_9) {
    v9.push_back(matrix_to_perm(m, VectorMode::vectors));
    p9.push_back(matrix_to_perm(m, VectorMode::projective));
  }
  CHECK(action_degree(f9, 2, VectorMode::vectors) == 80);
  CHECK(action_degree(f9, 2, VectorMode::projective) == 10);
  CHECK(StabChain::build(80, v9).order() == 720);
  StabChain psl29 = StabChain::build(10, p9);
  CHECK(psl29.order() == 360);
}
