#pragma once

#include "trigroup/diagram.hpp"
#include "trigroup/group.hpp"
#include "trigroup/tits.hpp"

#include <map>
#include <random>
#include <string>

namespace trigroup::fixtures {

inline std::uint32_t named(const FiniteGroup& g, const std::string& name) {
  for (std::uint32_t i = 0; i < g.order; ++i)
    if (g.element_name(i) == name) return i;
  throw std::logic_error("no element named " + name);
}

inline void add_hom(CorsonDiagram& d, SubsetKey from, SubsetKey to,
                    std::vector<std::uint32_t> map) {
  d.homs.emplace(std::make_pair(from, to), std::move(map));
}

inline void add_trivial_base_homs(CorsonDiagram& d) {
  for (Label a : {1, 2, 3}) {
    SubsetKey s = subset_of({a});
    add_hom(d, 0, s, {d.groups.at(s).identity});
  }
}

/// Equilateral branching example: the vertex group of index 4 is the
/// Klein four-group of two disjoint transpositions inside S4, paired
/// against the transposition (13); both mixed angles come out at pi/3,
/// the remaining edge is the dihedral D3.
inline CorsonDiagram branching_index3_diagram() {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  FiniteGroup s4 = make_symmetric(4);
  FiniteGroup v4 = make_direct_product(make_cyclic(2), make_cyclic(2));
  d.groups.emplace(0, make_trivial());
  d.groups.emplace(subset_of({1}), v4);
  d.groups.emplace(subset_of({2}), make_cyclic(2));
  d.groups.emplace(subset_of({3}), make_cyclic(2));
  d.groups.emplace(subset_of({1, 2}), s4);
  d.groups.emplace(subset_of({1, 3}), s4);
  d.groups.emplace(subset_of({2, 3}), make_dihedral(3));
  add_trivial_base_homs(d);
  std::uint32_t t12 = named(s4, "[2134]"); // (12)
  std::uint32_t t34 = named(s4, "[1243]"); // (34)
  std::uint32_t t12_34 = named(s4, "[2143]");
  std::uint32_t t13 = named(s4, "[3214]"); // (13)
  // V4 elements: 0 = e, 1 = (0,1), 2 = (1,0), 3 = (1,1)
  std::vector<std::uint32_t> phi1{s4.identity, t12, t34, t12_34};
  add_hom(d, subset_of({1}), subset_of({1, 2}), phi1);
  add_hom(d, subset_of({1}), subset_of({1, 3}), phi1);
  add_hom(d, subset_of({2}), subset_of({1, 2}), {s4.identity, t13});
  add_hom(d, subset_of({3}), subset_of({1, 3}), {s4.identity, t13});
  add_hom(d, subset_of({2}), subset_of({2, 3}), {0, 3}); // s
  add_hom(d, subset_of({3}), subset_of({2, 3}), {0, 4}); // r s
  return d;
}

/// (2,4,4)-shaped variant whose {1,2} edge group Z2^3 is not generated
/// by the two vertex involutions.
inline CorsonDiagram branching_not_generated_diagram() {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  FiniteGroup z2 = make_cyclic(2);
  FiniteGroup z2c = make_direct_product(make_direct_product(z2, z2), z2);
  d.groups.emplace(0, make_trivial());
  for (Label a : {1, 2, 3}) d.groups.emplace(subset_of({a}), z2);
  d.groups.emplace(subset_of({1, 2}), z2c);
  d.groups.emplace(subset_of({1, 3}), make_dihedral(4));
  d.groups.emplace(subset_of({2, 3}), make_dihedral(4));
  add_trivial_base_homs(d);
  add_hom(d, subset_of({1}), subset_of({1, 2}), {0, 4}); // (1,0,0)
  add_hom(d, subset_of({2}), subset_of({1, 2}), {0, 2}); // (0,1,0)
  add_hom(d, subset_of({1}), subset_of({1, 3}), {0, 4}); // s
  add_hom(d, subset_of({3}), subset_of({1, 3}), {0, 5}); // r s
  add_hom(d, subset_of({2}), subset_of({2, 3}), {0, 4});
  add_hom(d, subset_of({3}), subset_of({2, 3}), {0, 5});
  return d;
}

/// (2,4,4) angles over a Z2 base: vertex groups Z2 x Z2 with the base
/// in the second coordinate, edge groups D_k x Z2 with the base central.
inline CorsonDiagram z2_base_244_diagram() {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  FiniteGroup z2 = make_cyclic(2);
  FiniteGroup v4 = make_direct_product(z2, z2); // (x,y) -> 2x + y
  d.groups.emplace(0, z2);
  for (Label a : {1, 2, 3}) d.groups.emplace(subset_of({a}), v4);
  std::map<std::pair<Label, Label>, std::uint32_t> edge_k{
      {{1, 2}, 2}, {{1, 3}, 4}, {{2, 3}, 4}};
  for (Label a : {1, 2, 3})
    add_hom(d, 0, subset_of({a}), {0, 1}); // base = second coordinate
  for (const auto& [pr, k] : edge_k) {
    auto [i, j] = pr;
    FiniteGroup edge = make_direct_product(make_dihedral(k), z2); // (g,z) -> 2g + z
    SubsetKey sij = subset_of({i, j});
    d.groups.emplace(sij, edge);
    add_hom(d, 0, sij, {0, 1});
    add_hom(d, subset_of({i}), sij, {0, 1, 2 * k, 2 * k + 1});         // s
    add_hom(d, subset_of({j}), sij, {0, 1, 2 * (k + 1), 2 * (k + 1) + 1}); // r s
  }
  return d;
}

/// Degenerate fixtures: G3 is trivial, so both angles at vertex 3 are
/// zero. The remaining data steers the amalgam casework.
struct DegenerateSpec {
  FiniteGroup g12;
  std::vector<std::uint32_t> phi1_12;
  std::vector<std::uint32_t> phi2_12;
  FiniteGroup g13;
  std::vector<std::uint32_t> phi1_13;
  FiniteGroup g23;
  std::vector<std::uint32_t> phi2_23;
};

inline CorsonDiagram degenerate_diagram(DegenerateSpec spec) {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  FiniteGroup z2 = make_cyclic(2);
  FiniteGroup triv = make_trivial();
  d.groups.emplace(0, triv);
  d.groups.emplace(subset_of({1}), z2);
  d.groups.emplace(subset_of({2}), z2);
  d.groups.emplace(subset_of({3}), triv);
  d.groups.emplace(subset_of({1, 2}), spec.g12);
  d.groups.emplace(subset_of({1, 3}), spec.g13);
  d.groups.emplace(subset_of({2, 3}), spec.g23);
  add_trivial_base_homs(d);
  add_hom(d, subset_of({1}), subset_of({1, 2}), spec.phi1_12);
  add_hom(d, subset_of({2}), subset_of({1, 2}), spec.phi2_12);
  add_hom(d, subset_of({1}), subset_of({1, 3}), spec.phi1_13);
  add_hom(d, subset_of({3}), subset_of({1, 3}), {spec.g13.identity});
  add_hom(d, subset_of({2}), subset_of({2, 3}), spec.phi2_23);
  add_hom(d, subset_of({3}), subset_of({2, 3}), {spec.g23.identity});
  return d;
}

inline FiniteGroup klein_four() {
  return make_direct_product(make_cyclic(2), make_cyclic(2));
}

/// [X:A] = 1; edge amalgam (4,1): collapses, small.
inline CorsonDiagram degenerate_small_collapse() {
  return degenerate_diagram({make_dihedral(4), {0, 4}, {0, 5}, make_cyclic(2), {0, 1},
                             make_cyclic(2), {0, 1}});
}

/// [X:A] = 1; edge amalgam (2,2): virtually solvable, small.
inline CorsonDiagram degenerate_small_dihedral() {
  return degenerate_diagram({klein_four(), {0, 2}, {0, 1}, klein_four(), {0, 2},
                             make_cyclic(2), {0, 1}});
}

/// [X:A] = 1; edge amalgam (4,2): large.
inline CorsonDiagram degenerate_large_edge_amalgam() {
  return degenerate_diagram({make_dihedral(4), {0, 4}, {0, 5}, klein_four(), {0, 2},
                             make_cyclic(2), {0, 1}});
}

/// [X:A] = 4 >= 3: large by the tree argument.
inline CorsonDiagram degenerate_large_xa() {
  return degenerate_diagram({klein_four(), {0, 2}, {0, 1}, make_cyclic(2), {0, 1},
                             make_direct_product(make_cyclic(2), make_cyclic(4)), {0, 4}});
}

/// [X:A] = 2, A small, q12 = q13 = 2: the documented undecided gap.
inline CorsonDiagram degenerate_undecided() {
  return degenerate_diagram({klein_four(), {0, 2}, {0, 1}, make_cyclic(2), {0, 1},
                             klein_four(), {0, 2}});
}

/// Every angle is zero and [X:A] = 2 with q12 = q13 = 1: the colimit is
/// the finite group X = Z8.
inline CorsonDiagram degenerate_small_colimit_x() {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  FiniteGroup z2 = make_cyclic(2);
  FiniteGroup z4 = make_cyclic(4);
  FiniteGroup z8 = make_cyclic(8);
  d.groups.emplace(0, z2);
  d.groups.emplace(subset_of({1}), z2);
  d.groups.emplace(subset_of({2}), z2);
  d.groups.emplace(subset_of({3}), z4);
  d.groups.emplace(subset_of({1, 2}), z2);
  d.groups.emplace(subset_of({1, 3}), z8);
  d.groups.emplace(subset_of({2, 3}), z4);
  add_hom(d, 0, subset_of({1}), {0, 1});
  add_hom(d, 0, subset_of({2}), {0, 1});
  add_hom(d, 0, subset_of({3}), {0, 2});
  add_hom(d, subset_of({1}), subset_of({1, 2}), {0, 1});
  add_hom(d, subset_of({2}), subset_of({1, 2}), {0, 1});
  add_hom(d, subset_of({1}), subset_of({1, 3}), {0, 4});
  add_hom(d, subset_of({3}), subset_of({1, 3}), {0, 2, 4, 6});
  add_hom(d, subset_of({2}), subset_of({2, 3}), {0, 2});
  add_hom(d, subset_of({3}), subset_of({2, 3}), {0, 1, 2, 3});
  return d;
}

/// Both vertex involutions of the {1,2} edge share their image: the
/// angle there is pi, violating the standing assumption.
inline CorsonDiagram angle_pi_diagram() {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  FiniteGroup z2 = make_cyclic(2);
  d.groups.emplace(0, make_trivial());
  for (Label a : {1, 2, 3}) d.groups.emplace(subset_of({a}), z2);
  d.groups.emplace(subset_of({1, 2}), z2);
  d.groups.emplace(subset_of({1, 3}), make_dihedral(2));
  d.groups.emplace(subset_of({2, 3}), make_dihedral(2));
  add_trivial_base_homs(d);
  add_hom(d, subset_of({1}), subset_of({1, 2}), {0, 1});
  add_hom(d, subset_of({2}), subset_of({1, 2}), {0, 1});
  add_hom(d, subset_of({1}), subset_of({1, 3}), {0, 2});
  add_hom(d, subset_of({3}), subset_of({1, 3}), {0, 3});
  add_hom(d, subset_of({2}), subset_of({2, 3}), {0, 2});
  add_hom(d, subset_of({3}), subset_of({2, 3}), {0, 3});
  return d;
}

/// Deterministic random small diagrams: groups of order <= 8, random
/// injective homomorphisms with the commuting base route enforced by a
/// prescribed-image search.
class RandomDiagramSource {
public:
  explicit RandomDiagramSource(std::uint64_t seed) : rng_(seed) {
    pool_.push_back(make_trivial());
    pool_.push_back(make_cyclic(2));
    pool_.push_back(make_cyclic(3));
    pool_.push_back(make_cyclic(4));
    pool_.push_back(make_cyclic(6));
    pool_.push_back(make_cyclic(8));
    pool_.push_back(klein_four());
    pool_.push_back(make_dihedral(3));
    pool_.push_back(make_dihedral(4));
    pool_.push_back(make_direct_product(make_cyclic(2), make_cyclic(4)));
    bases_ = {make_trivial(), make_cyclic(2)};
  }

  CorsonDiagram next() {
    for (;;) {
      auto d = try_build();
      if (d) return *d;
    }
  }

private:
  std::mt19937_64 rng_;
  std::vector<FiniteGroup> pool_;
  std::vector<FiniteGroup> bases_;

  std::uint32_t pick(std::uint32_t n) {
    return static_cast<std::uint32_t>(rng_() % n);
  }

  std::optional<CorsonDiagram> try_build() {
    CorsonDiagram d;
    d.index_set = {1, 2, 3};
    const FiniteGroup base = bases_[pick(static_cast<std::uint32_t>(bases_.size()))];
    d.groups.emplace(0, base);
    std::map<Label, std::vector<std::uint32_t>> base_in_vertex;
    for (Label a : {1, 2, 3}) {
      for (int attempts = 0; attempts < 6; ++attempts) {
        const FiniteGroup& g = pool_[pick(static_cast<std::uint32_t>(pool_.size()))];
        if (g.order < base.order || g.order % base.order != 0) continue;
        auto h = find_injective_hom(base, g);
        if (!h) continue;
        d.groups.emplace(subset_of({a}), g);
        base_in_vertex[a] = *h;
        add_hom(d, 0, subset_of({a}), *h);
        break;
      }
      if (!d.has_group(subset_of({a}))) return std::nullopt;
    }
    for (Label i : {1, 2, 3})
      for (Label j : {1, 2, 3}) {
        if (i >= j) continue;
        SubsetKey sij = subset_of({i, j});
        bool placed = false;
        for (int attempts = 0; attempts < 10 && !placed; ++attempts) {
          const FiniteGroup& e = pool_[pick(static_cast<std::uint32_t>(pool_.size()))];
          const FiniteGroup& gi = d.groups.at(subset_of({i}));
          const FiniteGroup& gj = d.groups.at(subset_of({j}));
          if (e.order % gi.order != 0 || e.order % gj.order != 0) continue;
          auto hi = find_injective_hom(gi, e);
          if (!hi) continue;
          // the route through j must agree with the route through i on
          // the base image
          std::vector<std::pair<std::uint32_t, std::uint32_t>> prescribed;
          for (std::uint32_t x = 0; x < base.order; ++x)
            prescribed.emplace_back(base_in_vertex[j][x], (*hi)[base_in_vertex[i][x]]);
          auto hj = find_injective_hom(gj, e, prescribed);
          if (!hj) continue;
          d.groups.emplace(sij, e);
          add_hom(d, subset_of({i}), sij, *hi);
          add_hom(d, subset_of({j}), sij, *hj);
          placed = true;
        }
        if (!placed) return std::nullopt;
      }
    return d;
  }
};

} // namespace trigroup::fixtures
