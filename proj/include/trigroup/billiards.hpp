#pragma once

#include "trigroup/diagram.hpp"
#include "trigroup/quadrat.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace trigroup {

enum class ArithmeticMode { Exact, Float };
constexpr double kFloatTolerance = 1e-9;

class PocketHit : public std::runtime_error {
public:
  PocketHit(std::size_t reflection_index, const std::string& what)
      : std::runtime_error(what), index_(reflection_index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

class ZeroDirection : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class LetterInBaseImage : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SearchExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The labelled Euclidean triangle: vertex k carries a 2-subset label
/// and the corresponding Gersten-Stallings angle, edge k (between
/// vertices k and k+1) carries the intersection of its endpoint labels.
/// Vertices are in counterclockwise order with exact Q(sqrt 3)
/// coordinates.
struct TrianglePlacement {
  std::array<Vec2, 3> vertices;
  std::array<SubsetKey, 3> vertex_labels;
  std::array<Label, 3> edge_labels;
  std::array<GSAngle, 3> vertex_angles;

  Vec2 edge_start(int e) const { return vertices[e]; }
  Vec2 edge_end(int e) const { return vertices[(e + 1) % 3]; }
  Vec2 edge_vector(int e) const { return edge_end(e) - edge_start(e); }
  /// Inward normal (unnormalized); vertices are counterclockwise.
  Vec2 inward_normal(int e) const { return perp(edge_vector(e)); }
  int edge_with_label(Label a) const;
  bool strictly_inside(const Vec2& p) const;
  bool inside_or_boundary(const Vec2& p) const;
  /// The triple (k,l,m) sorted ascending, angles being pi/k, pi/l, pi/m.
  std::array<std::uint32_t, 3> sorted_triple() const;
};

/// Canonical placement for a Euclidean angle triple. The three
/// Euclidean triples are exhaustive: (3,3,3) -> (0,0),(1,0),(1/2,s/2);
/// (2,4,4) -> (0,0),(1,0),(0,1); (2,3,6) -> (0,0),(1,0),(0,s/3) with
/// s = sqrt(3). Angles are given per pair: {1,2}, {1,3}, {2,3}.
/// Throws NotEuclidean/DegenerateAngle (as invalid_argument) otherwise.
TrianglePlacement build_triangle(const std::array<GSAngle, 3>& pair_angles);

/// Mirror image of dir across the line through a and b. Exact.
Vec2 reflect_direction(const Vec2& dir, const Vec2& a, const Vec2& b);

/// A reflecting trajectory: points y_0..y_m with y_0 and y_m interior
/// and each y_1..y_{m-1} in an open edge interior; labels[i] is the
/// singleton label of the edge reflecting y_{i+1}; directions[i] is the
/// (unnormalized) direction of the segment y_i -> y_{i+1}.
struct BilliardSequence {
  std::vector<Vec2> points;
  std::vector<Label> labels;
  std::vector<Vec2> directions;
  std::size_t reflections() const { return labels.size(); }
};

/// Straight-segment simulation with the mirror reflection rule. Stops
/// after max_reflections (ending at an interior point half way to the
/// next exit), except that max_reflections = 0 returns the bare
/// boundary exit. A trajectory reaching a vertex is withdrawn by
/// throwing PocketHit. Exact mode decides every predicate with zero
/// tolerance.
BilliardSequence shoot(const TrianglePlacement& t, const Vec2& start, const Vec2& dir,
                       std::uint32_t max_reflections,
                       ArithmeticMode mode = ArithmeticMode::Exact);

/// Re-runs the simulation from the recorded start and checks that every
/// recorded point, label and direction is reproduced (exactly, or
/// within 1e-9 in Float mode).
bool resimulates(const TrianglePlacement& t, const BilliardSequence& b,
                 ArithmeticMode mode = ArithmeticMode::Exact);

/// Reflection law at every recorded reflection point: tangential
/// component preserved, normal component negated.
bool reflection_law_holds(const TrianglePlacement& t, const BilliardSequence& b);

/// Time reversal; a valid billiard sequence with reversed label word.
BilliardSequence reversed(const BilliardSequence& b);

struct TypedLetter {
  Label type;
  std::uint32_t elem;
  bool operator==(const TypedLetter& o) const { return type == o.type && elem == o.elem; }
};
using TypedWord = std::vector<TypedLetter>;

/// True iff the word has one letter per reflection, each letter's type
/// equals the label of its reflection edge, and each element lies
/// outside the image of the base group in its vertex group.
bool adapted(const TriangleDiagram& d, const TypedWord& w, const BilliardSequence& b);

enum class Conclusion { Nontrivial, InfiniteOrder };

struct Certificate {
  TypedWord word;
  BilliardSequence sequence;
  ArithmeticMode mode = ArithmeticMode::Exact;
  Conclusion conclusion = Conclusion::Nontrivial;
  /// For InfiniteOrder: reflections per period; the sequence closes up
  /// (same point, same direction), so every power of the word is
  /// adapted to a repetition of it.
  std::optional<std::uint32_t> period = std::nullopt;
};

/// Searches for a billiard sequence whose label word matches the type
/// sequence of w, by unfolding the triangle along the prescribed edges
/// and testing straight chords through the window segments (a sampling
/// search; incompleteness only weakens finding power). Every candidate
/// is re-validated by forward simulation before a certificate is
/// issued. nullopt means "no sequence found", never "trivial".
std::optional<Certificate> certify_nontrivial(const TriangleDiagram& d, const TypedWord& w);

/// Searches for a periodic billiard sequence realizing the type word,
/// returning to its start point with its start direction; validated by
/// simulating three full periods exactly.
std::optional<Certificate> certify_infinite_order(const TriangleDiagram& d, const TypedWord& w);

/// Certificate for the n-th power of a previously certified periodic
/// word: the period is repeated n times and re-simulated exactly.
std::optional<Certificate> certify_power(const TriangleDiagram& d, const Certificate& periodic,
                                         std::uint32_t n);

/// A self-retracing shot: starts at an interior point, goes orthogonally
/// away from the edge labelled a, and returns to the start with the
/// reversed direction. Found by exact simulation from sampled feet on
/// edge a; results are cached per (triple, edge label).
BilliardSequence closed_orthogonal_shot(const TrianglePlacement& t, Label a);

/// Placement for a validated non-degenerate Euclidean triangle diagram.
TrianglePlacement placement_for(const TriangleDiagram& d);

/// SVG rendering of the triangle and the trajectory polyline.
std::string sequence_to_svg(const TrianglePlacement& t, const BilliardSequence& b);

} // namespace trigroup
