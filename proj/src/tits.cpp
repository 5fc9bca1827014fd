#include "trigroup/tits.hpp"

#include "trigroup/wallpaper.hpp"

#include <algorithm>
#include <sstream>

namespace trigroup {

Largeness amalgam_largeness(const AmalgamShape& s) {
  if (s.left_index == 1 || s.right_index == 1) return Largeness::Small;
  if (s.left_index == 2 && s.right_index == 2) return Largeness::Small;
  return Largeness::Large;
}

namespace {

Subgroup base_image_in(const CorsonDiagram& d, SubsetKey j) {
  return hom_image(d.group(j), d.hom_or_derived(0, j));
}

std::uint32_t index_over_base(const CorsonDiagram& d, SubsetKey j) {
  return subgroup_index(d.group(j), base_image_in(d, j));
}

} // namespace

TriangleDiagram quotient_triangle(const TriangleDiagram& t) {
  const CorsonDiagram& d = t.d;
  std::array<GSAngle, 3> before = triangle_angles(t);

  std::vector<SubsetKey> keys{subset_of({1}), subset_of({2}), subset_of({3}),
                              subset_of({1, 2}), subset_of({1, 3}), subset_of({2, 3})};
  std::map<SubsetKey, Quotient> quotients;
  for (SubsetKey j : keys) {
    Subgroup n = base_image_in(d, j);
    if (!is_normal(d.group(j), n))
      throw std::invalid_argument("NotNormal: base image is not normal in group '" +
                                  subset_string(j) + "'");
    quotients.emplace(j, quotient_group(d.group(j), n));
  }

  CorsonDiagram q;
  q.index_set = {1, 2, 3};
  q.groups.emplace(0, make_trivial());
  for (SubsetKey j : keys) q.groups.emplace(j, quotients.at(j).group);
  for (SubsetKey j : keys) {
    // base maps become trivial
    std::vector<std::uint32_t> h(1, q.groups.at(j).identity);
    q.homs.emplace(std::make_pair(static_cast<SubsetKey>(0), j), h);
  }
  for (const auto& [key, h] : d.homs) {
    auto [j1, j2] = key;
    if (j1 == 0) continue;
    const Quotient& q1 = quotients.at(j1);
    const Quotient& q2 = quotients.at(j2);
    std::uint32_t n1 = q.groups.at(j1).order;
    std::vector<std::uint32_t> ind(n1, n1);
    for (std::uint32_t x = 0; x < h.size(); ++x) {
      std::uint32_t from = q1.projection[x];
      std::uint32_t to = q2.projection[h[x]];
      if (ind[from] == n1)
        ind[from] = to;
      else if (ind[from] != to)
        throw std::logic_error("induced map is not well defined on cosets");
    }
    if (!is_injective_map(ind))
      throw std::invalid_argument("NotNormal: induced map on cosets is not injective");
    q.homs.emplace(std::make_pair(j1, j2), ind);
  }

  TriangleDiagram out(std::move(q));
  std::array<GSAngle, 3> after = triangle_angles(out);
  const char* pair_names[3] = {"{1,2}", "{1,3}", "{2,3}"};
  for (int i = 0; i < 3; ++i)
    if (!(before[i] == after[i]))
      throw std::logic_error(std::string("AngleChanged") + pair_names[i] +
                             ": quotient construction altered an angle");
  return out;
}

std::string verdict_kind_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Large: return "large";
    case Verdict::Kind::Small: return "small";
    case Verdict::Kind::Undecided: return "undecided";
    case Verdict::Kind::Rejected: return "rejected";
  }
  return "?";
}

CorsonDiagram canonical_triangle_diagram(std::uint32_t k, std::uint32_t l, std::uint32_t m) {
  CorsonDiagram d;
  d.index_set = {1, 2, 3};
  d.groups.emplace(0, make_trivial());
  for (Label a : {1, 2, 3}) d.groups.emplace(subset_of({a}), make_cyclic(2));
  d.groups.emplace(subset_of({1, 2}), make_dihedral(k));
  d.groups.emplace(subset_of({1, 3}), make_dihedral(l));
  d.groups.emplace(subset_of({2, 3}), make_dihedral(m));
  for (Label a : {1, 2, 3}) {
    std::vector<std::uint32_t> h{d.groups.at(subset_of({a})).identity};
    d.homs.emplace(std::make_pair(static_cast<SubsetKey>(0), subset_of({a})), h);
  }
  // the two vertex involutions map to the reflections s and r s
  auto edge_homs = [&](Label i, Label j, std::uint32_t kk) {
    SubsetKey sij = subset_of({i, j});
    d.homs.emplace(std::make_pair(subset_of({i}), sij),
                   std::vector<std::uint32_t>{0, kk});
    d.homs.emplace(std::make_pair(subset_of({j}), sij),
                   std::vector<std::uint32_t>{0, kk + 1});
  };
  edge_homs(1, 2, k);
  edge_homs(1, 3, l);
  edge_homs(2, 3, m);
  return d;
}

namespace {

void add_trace(Verdict& v, std::string rule, std::string ref,
               std::map<std::string, std::int64_t> values = {}) {
  v.trace.push_back({std::move(rule), std::move(ref), std::move(values)});
}

Verdict classify_degenerate(const TriangleDiagram& d, Verdict v) {
  // Relabel so that the collapsed vertex (base image equal to the whole
  // vertex group) becomes index 3; every zero angle involves such a
  // vertex, because a finite edge group cannot contain an infinite
  // amalgam.
  std::vector<Label> collapsed;
  for (Label a : {1, 2, 3})
    if (index_over_base(d.d, subset_of({a})) == 1) collapsed.push_back(a);
  if (collapsed.empty())
    throw std::logic_error("degenerate diagram without a collapsed vertex group");
  Label c = collapsed.front();
  std::map<Label, Label> perm;
  std::vector<Label> rest;
  for (Label a : {1, 2, 3})
    if (a != c) rest.push_back(a);
  perm[rest[0]] = 1;
  perm[rest[1]] = 2;
  perm[c] = 3;
  TriangleDiagram rd(d.d.relabeled(perm));
  add_trace(v, "degenerate-relabel",
            "zero angles force a vertex group equal to its base image; move it to index 3",
            {{"collapsed_vertex", c}});

  const CorsonDiagram& r = rd.d;
  SubsetKey s23 = subset_of({2, 3});
  const FiniteGroup& X = r.group(s23);
  std::vector<std::uint32_t> gens = r.hom(subset_of({2}), s23);
  const auto& h3 = r.hom(subset_of({3}), s23);
  gens.insert(gens.end(), h3.begin(), h3.end());
  Subgroup A = subgroup_generated(X, gens);
  std::uint32_t xa = subgroup_index(X, A);

  std::uint32_t i1 = index_over_base(r, subset_of({1}));
  std::uint32_t q12 = subgroup_index(
      r.group(subset_of({1, 2})),
      hom_image(r.group(subset_of({1, 2})), r.hom(subset_of({2}), subset_of({1, 2}))));
  std::uint32_t q13 = subgroup_index(
      r.group(subset_of({1, 3})),
      hom_image(r.group(subset_of({1, 3})), r.hom(subset_of({3}), subset_of({1, 3}))));
  add_trace(v, "amalgam-split",
            "with a zero angle at {2,3} the colimit is X *_A Y, X the edge group, "
            "A generated by the two vertex images, Y generated by the other edge groups",
            {{"index_X_A", xa}, {"index_G1_base", i1}, {"q12", q12}, {"q13", q13}});

  if (xa == 1) {
    std::uint32_t p12 = subgroup_index(
        r.group(subset_of({1, 2})),
        hom_image(r.group(subset_of({1, 2})), r.hom(subset_of({1}), subset_of({1, 2}))));
    std::uint32_t p13 = subgroup_index(
        r.group(subset_of({1, 3})),
        hom_image(r.group(subset_of({1, 3})), r.hom(subset_of({1}), subset_of({1, 3}))));
    Largeness lg = amalgam_largeness({p12, p13});
    add_trace(v, "edge-amalgam",
              "X = A makes the colimit the amalgam of the two remaining edge groups "
              "over the shared vertex group",
              {{"left_index", p12}, {"right_index", p13}});
    if (lg == Largeness::Large) {
      add_trace(v, "amalgam-large",
                "an amalgam with both indices >= 2 and one >= 3 contains a free subgroup");
      v.kind = Verdict::Kind::Large;
    } else {
      add_trace(v, "amalgam-small",
                p12 == 1 || p13 == 1
                    ? "the amalgam collapses to a finite factor"
                    : "index (2,2): finite-by-infinite-dihedral, virtually solvable");
      v.kind = Verdict::Kind::Small;
    }
    return v;
  }

  if (q12 == 1 && q13 == 1) {
    add_trace(v, "colimit-is-X",
              "derived rule: both remaining edge groups equal their type-2/3 vertex images, "
              "so Y = A by the subgroup intersection pattern and the colimit is the finite "
              "group X",
              {{"order_X", X.order}});
    v.kind = Verdict::Kind::Small;
    return v;
  }

  // here [Y:A] >= 2
  if (xa >= 3 || q12 >= 3 || q13 >= 3) {
    add_trace(v, "amalgam-index-three",
              "cosets of the vertex image in an edge group stay distinct over A, so an "
              "index >= 3 on either side makes the amalgam large",
              {{"index_X_A", xa}, {"q12", q12}, {"q13", q13}});
    v.kind = Verdict::Kind::Large;
    return v;
  }

  std::uint32_t i2 = index_over_base(r, subset_of({2}));
  std::uint32_t i3 = index_over_base(r, subset_of({3}));
  Largeness ashape = amalgam_largeness({i2, i3});
  if (ashape == Largeness::Large) {
    add_trace(v, "A-subgroup-large",
              "A is the amalgam of the two vertex groups over the base; a large subgroup "
              "makes the colimit large",
              {{"index_G2_base", i2}, {"index_G3_base", i3}});
    v.kind = Verdict::Kind::Large;
    return v;
  }

  add_trace(v, "undecided-gap",
            "[X:A] = 2 with A small: the verdict depends on whether [Y:A] = 2 (small) or "
            ">= 3 (large), which is not determined by the finite input data",
            {{"index_X_A", xa}, {"q12", q12}, {"q13", q13}});
  v.kind = Verdict::Kind::Undecided;
  v.undecided_predicate = "[Y:A] == 2";
  return v;
}

} // namespace

Verdict classify(const TriangleDiagram& d) {
  Verdict v;
  std::array<GSAngle, 3> angles = triangle_angles(d);
  CurvatureClass cc = classify_angles(angles);
  add_trace(v, "curvature", "exact rational comparison of the angle sum with pi",
            {{"m12", angles[0].m_hat},
             {"m13", angles[1].m_hat},
             {"m23", angles[2].m_hat},
             {"degenerate", cc.degenerate ? 1 : 0}});

  if (cc.kind == Curvature::Spherical) {
    add_trace(v, "spherical-rejected",
              "spherical diagrams are outside the scope of this classification");
    v.kind = Verdict::Kind::Rejected;
    return v;
  }

  if (cc.degenerate) return classify_degenerate(d, std::move(v));

  std::map<std::string, std::int64_t> idx;
  for (Label a : {1, 2, 3})
    idx["index_G" + std::to_string(a) + "_base"] = index_over_base(d.d, subset_of({a}));

  if (cc.kind == Curvature::Hyperbolic) {
    add_trace(v, "hyperbolic-large",
              "for a hyperbolic triple, high powers of g1g2g3 and g1g3g2 generate a free "
              "subgroup; nonzero angles guarantee the g_a exist",
              idx);
    v.kind = Verdict::Kind::Large;
    return v;
  }

  // non-degenerate Euclidean
  BranchingReport br = find_branching(d);
  bool has_index3 = false;
  for (const auto& c : br.causes)
    if (c.kind == BranchCause::Kind::IndexAtLeast3) has_index3 = true;

  if (br.branches && has_index3) {
    FreePair fp = free_pair(d);
    VerifyReport vr = verify_free_pair(d, fp, 2);
    if (!vr.all_certified)
      throw std::logic_error("free pair failed certification: " + vr.failure);
    add_trace(v, "branching-free-pair",
              "a vertex group of index >= 3 over the base branches the coset complex; the "
              "pair x = g_a h gt^-1, y = h g_a h gt^-1 h^-1 is billiard-certified free",
              {{"vertex", fp.edge_a},
               {"index", idx["index_G" + std::to_string(fp.edge_a) + "_base"]},
               {"depth", 2},
               {"words_certified", vr.words_checked}});
    v.witness_pair = fp;
    v.kind = Verdict::Kind::Large;
    return v;
  }
  if (br.branches) {
    const BranchCause* ng = nullptr;
    for (const auto& c : br.causes)
      if (c.kind == BranchCause::Kind::NotGenerated && !ng) ng = &c;
    FreePair fp = free_pair(d);
    add_trace(v, "branching-not-generated-amalgam",
              "an edge group not generated by its vertex images splits the colimit as an "
              "amalgam with [X:A] >= 2; [Y:A] = 2 would force two right angles and a zero "
              "angle, impossible here, so [Y:A] >= 3 and the amalgam is large",
              {{"a", ng->a}, {"b", ng->b}, {"missing_cosets", ng->value}});
    v.witness_pair = fp;
    v.kind = Verdict::Kind::Large;
    return v;
  }

  // no branching: all indices 2, all edge groups generated
  TriangleDiagram qt = quotient_triangle(d);
  CorsonDiagram canonical = canonical_triangle_diagram(
      angles[0].m_hat / 2, angles[1].m_hat / 2, angles[2].m_hat / 2);
  bool iso_ok = true;
  for (SubsetKey j : {subset_of({1}), subset_of({2}), subset_of({3}), subset_of({1, 2}),
                      subset_of({1, 3}), subset_of({2, 3})})
    iso_ok = iso_ok && are_isomorphic(qt.d.group(j), canonical.group(j)).has_value();
  if (!iso_ok) throw std::logic_error("quotient triangle is not the canonical triangle");
  add_trace(v, "quotient-triangle-canonical",
            "all vertex indices are 2 and all edge groups are generated, so the base image "
            "is normal everywhere and the quotient is the all-Z2 triangle of the same "
            "angles",
            {{"k", angles[0].m_hat / 2},
             {"l", angles[1].m_hat / 2},
             {"m", angles[2].m_hat / 2}});

  std::array<std::uint32_t, 3> triple{angles[0].m_hat / 2, angles[1].m_hat / 2,
                                      angles[2].m_hat / 2};
  WallpaperRep rep = canonical_rep(triple);
  LatticeReport lat = translation_lattice(rep, 12);
  if (lat.rank != 2) throw std::logic_error("translation lattice rank below 2");
  std::map<std::string, std::int64_t> wf;
  wf["lattice_rank"] = lat.rank;
  wf["translations_found"] = static_cast<std::int64_t>(lat.translations.size());
  for (int i = 0; i < 3; ++i)
    wf["stabilizer_order_v" + std::to_string(i)] =
        static_cast<std::int64_t>(vertex_stabilizer(rep, rep.placement.vertices[i]).size());
  add_trace(v, "wallpaper-lattice", "the reflection group of the quotient contains a rank-2 "
            "translation lattice of finite index; it is virtually polycyclic",
            wf);
  add_trace(v, "virtually-solvable-extension",
            "a finitely generated virtually solvable base extended by a virtually "
            "polycyclic quotient is virtually solvable");
  v.kind = Verdict::Kind::Small;
  return v;
}

} // namespace trigroup
