#pragma once

#include "trigroup/billiards.hpp"
#include "trigroup/quadrat.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace trigroup {

/// Exact affine isometry of the plane over Q(sqrt 3): x -> M x + t with
/// M orthogonal (verified at construction sites), det in {+1, -1}.
struct Isometry {
  QuadRat m00{1}, m01{0}, m10{0}, m11{1};
  Vec2 t{QuadRat(0), QuadRat(0)};

  Vec2 apply(const Vec2& p) const {
    return {m00 * p.x + m01 * p.y + t.x, m10 * p.x + m11 * p.y + t.y};
  }
  bool is_identity() const;
  bool linear_is_identity() const;
  QuadRat det() const { return m00 * m11 - m01 * m10; }
  bool is_orthogonal() const;

  bool operator==(const Isometry& o) const;
  bool operator<(const Isometry& o) const; // total order for exact sets

  static Isometry identity() { return {}; }
  static Isometry reflection_across_line(const Vec2& a, const Vec2& b);
};

/// f o g (apply g first).
Isometry compose(const Isometry& f, const Isometry& g);

/// The Euclidean triangle group of a canonical triple, realized by the
/// reflections a, b, c across the three lines enclosing the canonical
/// triangle. Relator identities a^2 = b^2 = c^2 = (ab)^k = (ac)^l =
/// (bc)^m = id are verified exactly at construction.
struct WallpaperRep {
  std::array<std::uint32_t, 3> triple; // (k,l,m) ascending
  Isometry a, b, c;
  TrianglePlacement placement;

  const Isometry& generator(char name) const;
  /// Reflection across the edge of the placement carrying this label;
  /// the natural image of the vertex-group generator of that label.
  const Isometry& reflection_for_label(Label l) const;
};

WallpaperRep canonical_rep(const std::array<std::uint32_t, 3>& triple);

/// Product of the reflections named by the word (letters 'a','b','c',
/// self-inverse), rightmost applied first. Exact.
Isometry evaluate(const WallpaperRep& rep, const std::string& word);
Isometry evaluate_typed(const WallpaperRep& rep, const std::vector<Label>& types);

struct LatticeReport {
  std::vector<Vec2> translations; // all nonzero translation vectors found
  std::uint32_t rank = 0;
  std::optional<std::pair<Vec2, Vec2>> basis; // two independent vectors when rank 2
};

/// Enumerates all products of length <= max_len, collects those with
/// identity linear part and nonzero translation, and reports the rank
/// of their span (exact).
LatticeReport translation_lattice(const WallpaperRep& rep, std::uint32_t max_len = 12);

/// The finite dihedral stabilizer of a vertex of the canonical triangle:
/// closure of the two reflections whose lines pass through it.
std::vector<Isometry> vertex_stabilizer(const WallpaperRep& rep, const Vec2& vertex);

struct IntersectionCheckEntry {
  std::string description;
  bool ok = false;
};

struct IntersectionReport {
  std::vector<IntersectionCheckEntry> entries;
  bool all_ok() const;
};

/// For each pair of vertices: stab(v1) n stab(v2) equals the group
/// generated by the shared edge reflection; the triple intersection is
/// trivial. Exact set computations.
IntersectionReport intersection_check(const WallpaperRep& rep);

} // namespace trigroup
