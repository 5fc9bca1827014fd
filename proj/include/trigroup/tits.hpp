#pragma once

#include "trigroup/diagram.hpp"
#include "trigroup/witness.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trigroup {

/// Index pair of an amalgam U *_W V of finite groups.
struct AmalgamShape {
  std::uint64_t left_index = 1;
  std::uint64_t right_index = 1;
};

enum class Largeness { Large, Small };

/// Small iff the amalgam collapses to a factor (an index is 1) or is
/// finite-by-infinite-dihedral (both indices 2); Large otherwise (the
/// Bass-Serre tree branches and ping-pong applies).
Largeness amalgam_largeness(const AmalgamShape& s);

/// Quotient by the base image everywhere: each G_J is replaced by
/// G_J / phi(G_empty) with the induced (injective) maps. Requires every
/// base image normal; asserts that the Gersten-Stallings angles are
/// unchanged. Throws NotNormal / AngleChanged (as invalid_argument /
/// logic_error) otherwise.
TriangleDiagram quotient_triangle(const TriangleDiagram& d);

struct TraceEntry {
  std::string rule;
  std::string ref; // citation of the mathematical fact the rule rests on
  std::map<std::string, std::int64_t> values;
};

struct Verdict {
  enum class Kind { Large, Small, Undecided, Rejected };
  Kind kind = Kind::Undecided;
  std::vector<TraceEntry> trace;
  std::optional<FreePair> witness_pair;
  std::string undecided_predicate;
};

/// Large/small decision tree for validated triangle diagrams of finite
/// groups, with every applied rule and its computed predicate values
/// recorded. Spherical inputs are Rejected (out of scope); the one
/// documented gap (degenerate case, [X:A] = 2 with A small) returns
/// Undecided with the ambiguous predicate named.
Verdict classify(const TriangleDiagram& d);

std::string verdict_kind_name(Verdict::Kind k);

/// The all-Z2 triangle with dihedral edge groups D_k, D_l, D_m; its
/// colimit is the reflection triangle group of the triple.
CorsonDiagram canonical_triangle_diagram(std::uint32_t k, std::uint32_t l, std::uint32_t m);

} // namespace trigroup
