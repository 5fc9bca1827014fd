#include "trigroup/quadrat.hpp"

#include <doctest.h>

using namespace trigroup;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_to_string(Rat(3, 6)) == "1/2");
  CHECK(rat_to_string(Rat(-4)) == "-4");
  CHECK(*rat_from_string("7/21") == Rat(1, 3));
  CHECK(*rat_from_string("-5") == Rat(-5));
  CHECK(!rat_from_string("1/0").has_value());
  CHECK(!rat_from_string("x").has_value());
  CHECK(!rat_from_string("").has_value());
}

TEST_CASE("quadrat ring and field operations") {
  QuadRat s3 = QuadRat::sqrt3();
  CHECK(s3 * s3 == QuadRat(3));
  QuadRat x(Rat(1, 2), Rat(-1, 3)); // 1/2 - (1/3) s
  QuadRat y(Rat(2), Rat(1, 6));
  CHECK((x + y) - y == x);
  CHECK((x * y) / y == x);
  CHECK_THROWS_AS(x / QuadRat(0), std::domain_error);
  QuadRat inv = QuadRat(1) / (QuadRat(1) + s3); // 1/(1+s) = (s-1)/2
  CHECK(inv == QuadRat(Rat(-1, 2), Rat(1, 2)));
}

TEST_CASE("exact sign with opposing parts") {
  // 2 - s3 > 0 since 4 > 3
  CHECK(QuadRat(Rat(2), Rat(-1)).sign() == 1);
  // -5 + 3 s3 > 0 since 27 > 25
  CHECK(QuadRat(Rat(-5), Rat(3)).sign() == 1);
  // 5 - 3 s3 < 0
  CHECK(QuadRat(Rat(5), Rat(-3)).sign() == -1);
  // 7 - 4 s3 > 0 since 49 > 48
  CHECK(QuadRat(Rat(7), Rat(-4)).sign() == 1);
  CHECK(QuadRat(Rat(-7), Rat(4)).sign() == -1);
  CHECK(QuadRat(0).sign() == 0);
  CHECK(QuadRat(Rat(0), Rat(-2)).sign() == -1);
  CHECK(QuadRat(Rat(7), Rat(-4)) > QuadRat(0));
  CHECK(QuadRat(Rat(1), Rat(1)) < QuadRat(3));
}

TEST_CASE("string round trip") {
  QuadRat q(Rat(-3, 7), Rat(5, 2));
  CHECK(*QuadRat::from_string(q.to_string()) == q);
  CHECK(*QuadRat::from_string("1/2") == QuadRat(1, 2));
  CHECK(!QuadRat::from_string("1~~2").has_value());
}

TEST_CASE("vector reflection across a direction") {
  // across the line x + y = const direction (1,-1): (1,0) -> (0,-1)
  Vec2 d{QuadRat(1), QuadRat(0)};
  Vec2 t{QuadRat(1), QuadRat(-1)};
  Vec2 r = reflect_across_direction(d, t);
  CHECK(r == Vec2{QuadRat(0), QuadRat(-1)});
  // reflecting twice restores
  CHECK(reflect_across_direction(r, t) == d);
  // a vector along the mirror is fixed
  CHECK(reflect_across_direction(t, t) == t);
}
