#pragma once

#include "trigroup/billiards.hpp"
#include "trigroup/diagram.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trigroup {

struct BranchCause {
  enum class Kind { IndexAtLeast3, NotGenerated };
  Kind kind;
  Label a = 0;
  Label b = 0;              // NotGenerated only
  std::uint32_t value = 0;  // the index, or the missing coset count
};

struct BranchingReport {
  bool branches = false;
  std::vector<BranchCause> causes;
};

class SphericalInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NoBranching : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Coset-complex branching criterion, evaluated on the finite input
/// data: some vertex group has index >= 3 over the base image, or some
/// edge group is not generated by the two vertex-group images.
/// Requires a non-spherical diagram (the vertex groups embed into the
/// colimit there, so these indices are the colimit indices).
BranchingReport find_branching(const TriangleDiagram& d);

/// Two words generating a non-abelian free subgroup of the colimit, in
/// the index >= 3 case: x = g_a h gt_a^{-1}, y = h g_a h gt_a^{-1} h^{-1}
/// with h read off the closed orthogonal shot for edge a. In the
/// not-generated case, the verdict is delegated to the amalgam
/// decomposition; no concrete pair is produced.
struct FreePair {
  enum class Case { Index3, NotGenerated };
  Case provenance = Case::Index3;
  TypedWord x;
  TypedWord y;
  // Index3 ingredients
  Label edge_a = 0;
  std::uint32_t g_a = 0;
  std::uint32_t g_tilde = 0;
  TypedWord h;
  std::string fixture_id; // "(k,l,m)/edge<a>"
  // NotGenerated ingredients
  Label ng_a = 0;
  Label ng_b = 0;
  std::uint32_t missing_cosets = 0;
};

FreePair free_pair(const TriangleDiagram& d);

struct VerifyReport {
  std::uint32_t words_checked = 0;
  bool all_certified = false;
  std::string failure; // CertificationGap description when not all certified
};

/// For every nonempty freely reduced word over {x, x^-1, y, y^-1} of
/// length <= L: expand into letters, cancel h^-1 h, merge adjacent
/// vertex-group letters (each merged element must stay outside the base
/// image), and certify the result by assembling the concatenated
/// billiard sequence (closed-shot copies joined by orthogonal bounces
/// at edge a) and re-simulating it exactly.
VerifyReport verify_free_pair(const TriangleDiagram& d, const FreePair& p, std::uint32_t L);

} // namespace trigroup
