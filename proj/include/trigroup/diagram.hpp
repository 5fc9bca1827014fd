#pragma once

#include "trigroup/group.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trigroup {

/// Index labels are single decimal digits 1..9; subsets are bitmasks.
using Label = int;
using SubsetKey = std::uint16_t;

SubsetKey subset_of(std::initializer_list<Label> labels);
SubsetKey subset_of(const std::vector<Label>& labels);
std::vector<Label> labels_of(SubsetKey key);
std::string subset_string(SubsetKey key); // "", "1", "12", ...
std::optional<SubsetKey> subset_from_string(const std::string& s);

/// Commutative diagram of finite groups G_J indexed by the subsets J of
/// a finite index set with |J| <= 2, with injective homomorphisms for
/// inclusions. The homs from the empty set into the two-element subsets
/// may be omitted; they are derived by composition.
struct CorsonDiagram {
  std::vector<Label> index_set; // sorted, distinct, digits 1..9
  std::map<SubsetKey, FiniteGroup> groups;
  std::map<std::pair<SubsetKey, SubsetKey>, std::vector<std::uint32_t>> homs;

  bool has_group(SubsetKey j) const { return groups.count(j) != 0; }
  const FiniteGroup& group(SubsetKey j) const;
  bool has_hom(SubsetKey j1, SubsetKey j2) const { return homs.count({j1, j2}) != 0; }
  const std::vector<std::uint32_t>& hom(SubsetKey j1, SubsetKey j2) const;

  /// phi_{J1,J2}, deriving the empty-to-edge map by composition through
  /// the first singleton route when it is not stored explicitly.
  std::vector<std::uint32_t> hom_or_derived(SubsetKey j1, SubsetKey j2) const;

  /// Relabels indices by the permutation perm (old label -> new label).
  CorsonDiagram relabeled(const std::map<Label, Label>& perm) const;
};

/// A Corson diagram over exactly {1,2,3}.
struct TriangleDiagram {
  CorsonDiagram d;
  explicit TriangleDiagram(CorsonDiagram c);
};

enum class IssueKind {
  MissingGroup,
  MissingHom,
  HomWrongSize,
  HomNotHomomorphism,
  NonInjectiveHom,
  NotCommutative,
  AnglePi,
};

struct ValidationIssue {
  IssueKind kind;
  SubsetKey j1 = 0;
  SubsetKey j2 = 0;
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Checks every diagram invariant and reports all violations with
/// witnesses: presence, hom axioms, injectivity, commutativity of both
/// routes into each edge group, and the no-angle-pi rule (reported with
/// its length-2 kernel witness).
ValidationReport validate(const CorsonDiagram& d);

/// Gersten-Stallings angle: 2*pi/m_hat, or zero when the natural map
/// from the amalgam into the edge group is injective.
struct GSAngle {
  std::uint32_t m_hat = 0; // 0 encodes the zero angle
  bool is_zero() const { return m_hat == 0; }
  bool operator==(const GSAngle& o) const { return m_hat == o.m_hat; }
};

struct WitnessLetter {
  Label side;
  std::uint32_t elem; // index in the side's vertex group
};

struct AngleResult {
  GSAngle angle;
  /// Lexicographically least shortest kernel word (side i first,
  /// elements by index); empty for the zero angle.
  std::vector<WitnessLetter> witness;
};

/// BFS over states (product in the edge group, side of the last letter);
/// terminates unconditionally since there are at most 2*|G_{i,j}| states.
AngleResult gs_angle(const CorsonDiagram& d, Label i, Label j);

std::map<std::pair<Label, Label>, AngleResult> all_angles(const CorsonDiagram& d);

/// All unordered triples whose pairwise angle sum strictly exceeds pi,
/// compared exactly as rationals.
std::vector<std::array<Label, 3>> spherical_triples(
    const std::vector<Label>& index_set,
    const std::map<std::pair<Label, Label>, AngleResult>& angles);

enum class Curvature { Spherical, Euclidean, Hyperbolic };

struct CurvatureClass {
  Curvature kind;
  bool degenerate; // true iff some angle is zero
  bool operator==(const CurvatureClass& o) const {
    return kind == o.kind && degenerate == o.degenerate;
  }
};

/// Exact rational trichotomy on an angle triple.
CurvatureClass classify_angles(const std::array<GSAngle, 3>& angles);
CurvatureClass classify_curvature(const TriangleDiagram& t);

std::array<GSAngle, 3> triangle_angles(const TriangleDiagram& t);

/// Bipartite coset graph at the vertex of type {i,j}: one node per coset
/// of the image of G_i and of G_j in G_{i,j}, one edge per coset of the
/// image of G_empty. Girth recomputes the angle along an independent
/// path: girth == m_hat.
struct LinkGraph {
  std::size_t side_i_nodes = 0;
  std::size_t side_j_nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  bool degenerate_side = false;    // some side has a single coset
  std::optional<std::uint32_t> girth; // absent when degenerate_side
};

class ZeroAngleInfiniteLink : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

LinkGraph link_graph(const TriangleDiagram& t, Label i, Label j);

/// Colimit presentation: generators are all non-identity elements of all
/// seven groups, relators are the full multiplication tables plus the
/// identifications g = phi(g). Deterministic ordering.
std::string export_presentation(const TriangleDiagram& t);

/// Replaces a non-spherical integer angle triple (k <= l <= m,
/// 1/k + 1/l + 1/m <= 1) by the coordinatewise-smaller Euclidean triple,
/// using exactly three cases: k >= 3 -> (3,3,3); k = 2, l >= 4 ->
/// (2,4,4); k = 2, l = 3 -> (2,3,6).
std::array<std::uint32_t, 3> dominate(std::uint32_t k, std::uint32_t l, std::uint32_t m);

} // namespace trigroup
