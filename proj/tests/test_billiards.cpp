#include "trigroup/billiards.hpp"

#include "fixtures.hpp"
#include "trigroup/tits.hpp"

#include <doctest.h>

using namespace trigroup;

namespace {

TriangleDiagram diag(std::uint32_t k, std::uint32_t l, std::uint32_t m) {
  return TriangleDiagram(canonical_triangle_diagram(k, l, m));
}

Vec2 v(long x, long y) { return {QuadRat(x), QuadRat(y)}; }
Vec2 vq(QuadRat x, QuadRat y) { return {x, y}; }

} // namespace

TEST_CASE("canonical placements") {
  TrianglePlacement t244 = build_triangle({GSAngle{4}, GSAngle{8}, GSAngle{8}});
  CHECK(t244.vertices[0] == v(0, 0));
  CHECK(t244.vertices[1] == v(1, 0));
  CHECK(t244.vertices[2] == v(0, 1));
  CHECK(t244.vertex_labels[0] == subset_of({1, 2}));
  // edge labels: AB carries 1, BC carries 3, CA carries 2
  CHECK(t244.edge_labels[0] == 1);
  CHECK(t244.edge_labels[1] == 3);
  CHECK(t244.edge_labels[2] == 2);

  TrianglePlacement t333 = build_triangle({GSAngle{6}, GSAngle{6}, GSAngle{6}});
  CHECK(t333.vertices[2] == vq(QuadRat(1, 2), QuadRat(Rat(0), Rat(1, 2))));

  TrianglePlacement t236 = build_triangle({GSAngle{4}, GSAngle{6}, GSAngle{12}});
  CHECK(t236.vertices[2] == vq(QuadRat(0), QuadRat(Rat(0), Rat(1, 3))));
  CHECK(t236.sorted_triple() == std::array<std::uint32_t, 3>{2, 3, 6});

  CHECK_THROWS_WITH_AS(build_triangle({GSAngle{4}, GSAngle{6}, GSAngle{14}}),
                       doctest::Contains("NotEuclidean"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_triangle({GSAngle{0}, GSAngle{4}, GSAngle{4}}),
                       doctest::Contains("DegenerateAngle"), std::invalid_argument);
}

TEST_CASE("direction reflection") {
  // across x + y = 1: (1,0) -> (0,-1)
  CHECK(reflect_direction(v(1, 0), v(1, 0), v(0, 1)) == v(0, -1));
  // direction along the edge is unchanged
  CHECK(reflect_direction(v(-1, 1), v(1, 0), v(0, 1)) == v(-1, 1));
  // involution
  Vec2 d{QuadRat(2, 3), QuadRat(-5, 7)};
  CHECK(reflect_direction(reflect_direction(d, v(1, 0), v(0, 1)), v(1, 0), v(0, 1)) == d);
}

TEST_CASE("exact shot on the right isosceles triangle") {
  TrianglePlacement t = build_triangle({GSAngle{4}, GSAngle{8}, GSAngle{8}});
  BilliardSequence b = shoot(t, vq(QuadRat(1, 4), QuadRat(1, 4)), v(1, 0), 2);
  REQUIRE(b.reflections() == 2);
  CHECK(b.points[1] == vq(QuadRat(3, 4), QuadRat(1, 4))); // hypotenuse
  CHECK(b.directions[1] == v(0, -1));
  CHECK(b.points[2] == vq(QuadRat(3, 4), QuadRat(0))); // bottom edge
  CHECK(b.directions[2] == v(0, 1));
  CHECK(b.labels[0] == t.edge_labels[1]);
  CHECK(b.labels[1] == t.edge_labels[0]);
  CHECK(t.strictly_inside(b.points.back()));
  CHECK(reflection_law_holds(t, b));
  CHECK(resimulates(t, b));

  // aimed exactly at the right-angle vertex
  CHECK_THROWS_AS(shoot(t, vq(QuadRat(1, 4), QuadRat(1, 4)), v(-1, -1), 4), PocketHit);
  CHECK_THROWS_AS(shoot(t, vq(QuadRat(1, 4), QuadRat(1, 4)), v(0, 0), 1), ZeroDirection);

  // max_reflections = 0: bare boundary exit
  BilliardSequence stub = shoot(t, vq(QuadRat(1, 4), QuadRat(1, 4)), v(1, 0), 0);
  CHECK(stub.reflections() == 0);
  CHECK(stub.points.size() == 2);
  CHECK(stub.points[1] == vq(QuadRat(3, 4), QuadRat(1, 4)));
}

TEST_CASE("float mode stays within tolerance of the exact path") {
  TrianglePlacement t = build_triangle({GSAngle{6}, GSAngle{6}, GSAngle{6}});
  Vec2 start = vq(QuadRat(1, 4), QuadRat(1, 8));
  Vec2 dir = vq(QuadRat(1, 3), QuadRat(1, 2));
  BilliardSequence exact = shoot(t, start, dir, 6);
  BilliardSequence approx = shoot(t, start, dir, 6, ArithmeticMode::Float);
  REQUIRE(exact.points.size() == approx.points.size());
  CHECK(exact.labels == approx.labels);
  for (std::size_t i = 0; i < exact.points.size(); ++i) {
    CHECK(std::abs(exact.points[i].x.to_double() - approx.points[i].x.to_double()) < 1e-9);
    CHECK(std::abs(exact.points[i].y.to_double() - approx.points[i].y.to_double()) < 1e-9);
  }
  CHECK(resimulates(t, approx, ArithmeticMode::Float));
}

TEST_CASE("reversal of a billiard sequence") {
  TrianglePlacement t = build_triangle({GSAngle{4}, GSAngle{6}, GSAngle{12}});
  BilliardSequence b =
      shoot(t, vq(QuadRat(1, 3), QuadRat(1, 8)), vq(QuadRat(1, 5), QuadRat(1, 2)), 5);
  BilliardSequence r = reversed(b);
  std::vector<Label> expect(b.labels.rbegin(), b.labels.rend());
  CHECK(r.labels == expect);
  CHECK(reflection_law_holds(t, r));
  CHECK(resimulates(t, r));
}

TEST_CASE("adaptedness") {
  TriangleDiagram d = diag(3, 3, 3);
  TrianglePlacement t = placement_for(d);
  auto cert = certify_nontrivial(d, {{1, 1}, {2, 1}, {3, 1}});
  REQUIRE(cert.has_value());
  const BilliardSequence& b = cert->sequence;
  CHECK(adapted(d, {{1, 1}, {2, 1}, {3, 1}}, b));
  // identity letter lies in the base image
  CHECK(!adapted(d, {{1, 0}, {2, 1}, {3, 1}}, b));
  // length mismatch
  CHECK(!adapted(d, {{1, 1}, {2, 1}}, b));
  // type mismatch
  CHECK(!adapted(d, {{2, 1}, {1, 1}, {3, 1}}, b));
  CHECK(resimulates(t, b));
}

TEST_CASE("certify_nontrivial finds the first-shot certificate") {
  TriangleDiagram d = diag(3, 3, 3);
  auto cert = certify_nontrivial(d, {{1, 1}, {2, 1}, {3, 1}});
  REQUIRE(cert.has_value());
  CHECK(cert->conclusion == Conclusion::Nontrivial);
  CHECK(cert->mode == ArithmeticMode::Exact);
  CHECK(cert->sequence.reflections() == 3);

  // empty word: m >= 2 unattainable
  CHECK(!certify_nontrivial(d, {}).has_value());
  // consecutive reflections on one edge are geometrically impossible
  CHECK(!certify_nontrivial(d, {{1, 1}, {1, 1}}).has_value());
  // letters inside the base image violate the precondition
  CHECK_THROWS_AS(certify_nontrivial(d, {{1, 0}}), LetterInBaseImage);
}

TEST_CASE("periodic certificate for the triangle orbit") {
  TriangleDiagram d = diag(3, 3, 3);
  auto cert = certify_infinite_order(d, {{1, 1}, {2, 1}, {3, 1}});
  REQUIRE(cert.has_value());
  CHECK(cert->conclusion == Conclusion::InfiniteOrder);
  REQUIRE(cert->period.has_value());
  CHECK(*cert->period == 3);
  // closes up: same point, same direction
  CHECK(cert->sequence.points.front() == cert->sequence.points.back());
  CHECK(cert->sequence.directions.front() == cert->sequence.directions.back());
  TrianglePlacement t = placement_for(d);
  CHECK(reflection_law_holds(t, cert->sequence));

  // powers stay certified
  for (std::uint32_t n : {2u, 5u, 20u}) {
    auto power = certify_power(d, *cert, n);
    REQUIRE(power.has_value());
    CHECK(power->sequence.reflections() == 3 * n);
    CHECK(power->word.size() == 3 * n);
  }

  // a word that fails certify_nontrivial yields no periodic certificate
  CHECK(!certify_infinite_order(d, {{1, 1}, {1, 1}}).has_value());
}

TEST_CASE("some short word admits a periodic certificate on (2,4,4)") {
  TriangleDiagram d244 = diag(2, 4, 4);
  bool found = false;
  for (const TypedWord& w :
       {TypedWord{{1, 1}, {2, 1}}, TypedWord{{1, 1}, {3, 1}}, TypedWord{{2, 1}, {3, 1}},
        TypedWord{{1, 1}, {2, 1}, {3, 1}}, TypedWord{{1, 1}, {3, 1}, {2, 1}},
        TypedWord{{1, 1}, {2, 1}, {1, 1}, {3, 1}}, TypedWord{{2, 1}, {1, 1}, {2, 1}, {3, 1}},
        TypedWord{{2, 1}, {3, 1}, {2, 1}, {1, 1}}}) {
    auto c = certify_infinite_order(d244, w);
    if (c) {
      found = true;
      CHECK(c->sequence.points.front() == c->sequence.points.back());
      CHECK(c->sequence.directions.front() == c->sequence.directions.back());
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("closed orthogonal shots for all nine cases") {
  for (auto triple : {std::array<std::uint32_t, 3>{3, 3, 3},
                      std::array<std::uint32_t, 3>{2, 4, 4},
                      std::array<std::uint32_t, 3>{2, 3, 6}}) {
    TrianglePlacement t = build_triangle(
        {GSAngle{2 * triple[0]}, GSAngle{2 * triple[1]}, GSAngle{2 * triple[2]}});
    for (Label a : {1, 2, 3}) {
      BilliardSequence shot = closed_orthogonal_shot(t, a);
      CHECK(shot.reflections() >= 3);
      CHECK(shot.reflections() % 2 == 1);
      // palindromic label word
      std::vector<Label> rev(shot.labels.rbegin(), shot.labels.rend());
      CHECK(shot.labels == rev);
      // the shot leaves edge a, so the first reflection is elsewhere
      CHECK(shot.labels.front() != a);
      // returns to the start with the reversed direction
      CHECK(shot.points.front() == shot.points.back());
      Vec2 neg = Vec2{QuadRat(0), QuadRat(0)} - shot.directions.front();
      CHECK(shot.directions.back() == neg);
      // starts orthogonally away from edge a
      int e = t.edge_with_label(a);
      CHECK(dot(shot.directions.front(), t.edge_vector(e)).is_zero());
      CHECK(resimulates(t, shot));
      CHECK(reflection_law_holds(t, shot));
      // time reversal is again valid, with the same palindromic labels
      CHECK(resimulates(t, reversed(shot)));
    }
  }
}

TEST_CASE("svg export renders triangle and path") {
  TriangleDiagram d = diag(2, 4, 4);
  TrianglePlacement t = placement_for(d);
  BilliardSequence b = shoot(t, vq(QuadRat(1, 4), QuadRat(1, 4)), v(1, 0), 2);
  std::string svg = sequence_to_svg(t, b);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  // deterministic
  CHECK(sequence_to_svg(t, b) == svg);
}
