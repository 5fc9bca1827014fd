#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigroup {

constexpr std::uint32_t kDefaultGroupOrderCap = 256;
constexpr std::uint32_t kIsomorphismOrderCap = 64;

enum class GroupErrorKind {
  NotClosed,
  NoIdentity,
  NotAssociative,
  MissingInverse,
  NotDivisible,
  NotNormal,
  OrderCapExceeded,
  BadTable,
};

class GroupError : public std::runtime_error {
public:
  GroupError(GroupErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  GroupErrorKind kind() const { return kind_; }

private:
  GroupErrorKind kind_;
};

/// A finite group given by its full Cayley table. Immutable after load;
/// all invariants (closure, identity, associativity, inverses) have been
/// verified exhaustively by load_group.
struct FiniteGroup {
  std::uint32_t order = 0;
  std::vector<std::uint32_t> mul; // row-major, mul[x*order+y] = x*y
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> inv;
  std::vector<std::string> names; // empty if unnamed

  std::uint32_t op(std::uint32_t x, std::uint32_t y) const { return mul[x * order + y]; }
  std::uint32_t inverse(std::uint32_t x) const { return inv[x]; }
  std::uint32_t element_order(std::uint32_t x) const;
  std::string element_name(std::uint32_t x) const;
  bool is_trivial() const { return order == 1; }
};

/// Sorted element set of a subgroup; the parent group is implied by
/// context.
struct Subgroup {
  std::vector<std::uint32_t> elements;
  std::size_t size() const { return elements.size(); }
  bool contains(std::uint32_t x) const;
};

/// Verifies all group axioms on the table and computes the inverse
/// table. Throws GroupError naming the violating element or triple.
FiniteGroup load_group(const std::vector<std::vector<std::uint32_t>>& table,
                       std::vector<std::string> names = {},
                       std::uint32_t order_cap = kDefaultGroupOrderCap);

/// Smallest subgroup containing gens (closure iteration).
Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<std::uint32_t>& gens);

/// |G| / |H|; throws GroupError(NotDivisible) on a corrupted subgroup.
std::uint32_t subgroup_index(const FiniteGroup& g, const Subgroup& h);

bool is_subgroup(const FiniteGroup& g, const Subgroup& h);
bool is_normal(const FiniteGroup& g, const Subgroup& h);

struct Quotient {
  FiniteGroup group;
  std::vector<std::uint32_t> projection; // element -> coset index; surjective, multiplicative
};

/// Cayley table on the cosets of a normal subgroup. Throws
/// GroupError(NotNormal) otherwise.
Quotient quotient_group(const FiniteGroup& g, const Subgroup& n);

/// Backtracking search over generator images, ordered by element order.
/// Sound and complete for order <= kIsomorphismOrderCap.
std::optional<std::vector<std::uint32_t>> are_isomorphic(const FiniteGroup& g1,
                                                         const FiniteGroup& g2);

/// Injective homomorphism dom -> cod extending the prescribed pairs
/// (element of dom, element of cod), if one exists.
std::optional<std::vector<std::uint32_t>> find_injective_hom(
    const FiniteGroup& dom, const FiniteGroup& cod,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& prescribed = {});

/// Checks that map is a homomorphism dom -> cod (identity and all pairs).
bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod,
                     const std::vector<std::uint32_t>& map);
bool is_injective_map(const std::vector<std::uint32_t>& map);

/// Image of a homomorphism as a sorted element set of cod.
Subgroup hom_image(const FiniteGroup& cod, const std::vector<std::uint32_t>& map);

// Table builders for common families. Element layout is documented per
// builder; all tables pass load_group.

FiniteGroup make_trivial();
FiniteGroup make_cyclic(std::uint32_t n);
/// Dihedral group of order 2k: indices 0..k-1 are rotations r^t,
/// k..2k-1 are reflections r^t s.
FiniteGroup make_dihedral(std::uint32_t k);
/// Direct product; index = a * |B| + b.
FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Symmetric group on n letters (n <= 5), elements indexed by the
/// lexicographic rank of the permutation's one-line form.
FiniteGroup make_symmetric(std::uint32_t n);

} // namespace trigroup
