#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "ff/errors.hpp"
#include "ff/perm.hpp"
#include "ff/rng.hpp"

using namespace ff;

namespace {

Perm random_perm(size_t degree, Rng& rng) {
  std::vector<Point> images(degree);
  for (size_t i = 0; i < degree; ++i) images[i] = Point(i);
  for (size_t i = degree; i > 1; --i)
    std::swap(images[i - 1], images[rng.below(i)]);
  return Perm::from_images(std::move(images));
}

} // namespace

TEST_CASE("parse_cycles basics") {
  Perm p = Perm::parse_cycles("(1,2,3)", 5);
  CHECK(p.images() == std::vector<Point>{1, 2, 0, 3, 4});
  CHECK(Perm::parse_cycles("()", 4) == Perm::identity(4));
  CHECK(Perm::parse_cycles(" ( 1 , 2 ) ( 3 , 4 , 5 ) ", 5) ==
        Perm::parse_cycles("(1,2)(3,4,5)", 5));
}

TEST_CASE("parse_cycles rejects bad input") {
  CHECK_THROWS_AS(Perm::parse_cycles("(1,2)(2,3)", 5), ValidationError);
  CHECK_THROWS_AS(Perm::parse_cycles("(1,6)", 5), ValidationError);
  CHECK_THROWS_AS(Perm::parse_cycles("(1,2", 5), ValidationError);
  CHECK_THROWS_AS(Perm::parse_cycles("(1,,2)", 5), ValidationError);
  CHECK_THROWS_AS(Perm::parse_cycles("(0,1)", 5), ValidationError);
  CHECK_THROWS_AS(Perm::parse_cycles("", 5), ValidationError);
  CHECK_THROWS_AS(Perm::parse_cycles("(1)", 5), ValidationError);
}

TEST_CASE("composition convention sentinel") {
  // Fixed convention for the whole project: compose(p, q) applies p first.
  // (1,2,3) then (1,2): 1->2->1, 2->3->3, 3->1->2, i.e. (2,3).
  Perm p = Perm::parse_cycles("(1,2,3)", 3);
  Perm q = Perm::parse_cycles("(1,2)", 3);
  CHECK(compose(p, q) == Perm::parse_cycles("(2,3)", 3));
  CHECK(compose(q, p) == Perm::parse_cycles("(1,3)", 3));
}

TEST_CASE("compose laws") {
  Rng rng(7);
  Perm q = random_perm(20, rng);
  CHECK(compose(Perm::identity(20), q) == q);
  CHECK(compose(q, Perm::identity(20)) == q);
  Perm t = Perm::parse_cycles("(1,2)", 6);
  CHECK(compose(t, t) == Perm::identity(6));
  CHECK_THROWS_AS(compose(Perm::identity(5), Perm::identity(6)), ValidationError);
}

TEST_CASE("associativity on random triples") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Perm a = random_perm(30, rng), b = random_perm(30, rng), c = random_perm(30, rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("inverse") {
  CHECK(Perm::parse_cycles("(1,2,3)", 3).inverse() == Perm::parse_cycles("(1,3,2)", 3));
  CHECK(Perm::identity(4).inverse() == Perm::identity(4));
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Perm p = random_perm(10, rng);
    CHECK(compose(p, p.inverse()) == Perm::identity(10));
    CHECK(compose(p.inverse(), p) == Perm::identity(10));
  }
}

TEST_CASE("element order") {
  CHECK(Perm::identity(6).order() == 1);
  CHECK(Perm::parse_cycles("(1,2)(3,4,5)", 5).order() == 6);
  CHECK(Perm::parse_cycles("(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15)", 15).order() == 15);
}

TEST_CASE("conjugation preserves cycle type") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Perm p = random_perm(25, rng), g = random_perm(25, rng);
    CHECK(p.conjugated_by(g).cycle_type() == p.cycle_type());
  }
}

TEST_CASE("format/parse round-trip on 1000 random permutations") {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    size_t degree = 1 + rng.below(200);
    Perm p = random_perm(degree, rng);
    CHECK(Perm::parse_cycles(p.to_cycles(), degree) == p);
  }
}

TEST_CASE("moved points") {
  Perm p = Perm::parse_cycles("(3,5)", 8);
  CHECK(p.num_moved_points() == 2);
  CHECK(p.smallest_moved_point() == 2);
  CHECK(Perm::identity(4).smallest_moved_point() == 4);
}

TEST_CASE("from_images validation") {
  CHECK_THROWS_AS(Perm::from_images({0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(Perm::from_images({0, 3}), ValidationError);
}
