#include "trigroup/witness.hpp"

#include <algorithm>
#include <sstream>

namespace trigroup {

namespace {

Subgroup base_image_subgroup(const TriangleDiagram& d, Label a) {
  const FiniteGroup& g = d.d.group(subset_of({a}));
  return hom_image(g, d.d.hom(0, subset_of({a})));
}

} // namespace

BranchingReport find_branching(const TriangleDiagram& d) {
  CurvatureClass cc = classify_curvature(d);
  if (cc.kind == Curvature::Spherical)
    throw SphericalInput("SphericalInput: branching analysis requires a non-spherical diagram");
  BranchingReport rep;
  for (Label a : {1, 2, 3}) {
    const FiniteGroup& g = d.d.group(subset_of({a}));
    std::uint32_t idx = subgroup_index(g, base_image_subgroup(d, a));
    if (idx >= 3) rep.causes.push_back({BranchCause::Kind::IndexAtLeast3, a, 0, idx});
  }
  for (Label a : {1, 2, 3})
    for (Label b : {1, 2, 3}) {
      if (a >= b) continue;
      SubsetKey sab = subset_of({a, b});
      const FiniteGroup& gab = d.d.group(sab);
      std::vector<std::uint32_t> gens = d.d.hom(subset_of({a}), sab);
      const auto& hb = d.d.hom(subset_of({b}), sab);
      gens.insert(gens.end(), hb.begin(), hb.end());
      Subgroup h = subgroup_generated(gab, gens);
      if (h.size() < gab.order) {
        std::uint32_t missing = subgroup_index(gab, h) - 1;
        rep.causes.push_back({BranchCause::Kind::NotGenerated, a, b, missing});
      }
    }
  rep.branches = !rep.causes.empty();
  return rep;
}

namespace {

// Lowest element outside the base image, skipping `avoid_coset_of` and
// its base coset if given.
std::uint32_t lowest_outside(const FiniteGroup& g, const Subgroup& base,
                             std::optional<std::uint32_t> avoid_coset_of = std::nullopt) {
  for (std::uint32_t x = 0; x < g.order; ++x) {
    if (base.contains(x)) continue;
    if (avoid_coset_of) {
      bool same_coset = false;
      for (auto bimg : base.elements)
        if (g.op(*avoid_coset_of, bimg) == x) same_coset = true;
      if (same_coset) continue;
    }
    return x;
  }
  throw std::logic_error("no element outside the base image");
}

std::string fixture_name(const TrianglePlacement& t, Label a) {
  auto tr = t.sorted_triple();
  std::ostringstream os;
  os << "(" << tr[0] << "," << tr[1] << "," << tr[2] << ")/edge" << a;
  return os.str();
}

TypedWord h_word_for_shot(const TriangleDiagram& d, const BilliardSequence& shot) {
  TypedWord h;
  for (Label l : shot.labels) {
    const FiniteGroup& g = d.d.group(subset_of({l}));
    Subgroup base = hom_image(g, d.d.hom(0, subset_of({l})));
    h.push_back({l, lowest_outside(g, base)});
  }
  return h;
}

} // namespace

FreePair free_pair(const TriangleDiagram& d) {
  CurvatureClass cc = classify_curvature(d);
  if (cc.degenerate)
    throw std::invalid_argument("DegenerateAngle: free pair construction needs all angles nonzero");
  if (cc.kind != Curvature::Euclidean)
    throw std::invalid_argument("NotEuclidean: free pair construction needs a Euclidean diagram");
  BranchingReport rep = find_branching(d);
  if (!rep.branches) throw NoBranching("NoBranching: the coset complex is a manifold");

  // Prefer the index >= 3 case (explicit pair); lowest vertex label first.
  const BranchCause* index_cause = nullptr;
  for (const auto& c : rep.causes)
    if (c.kind == BranchCause::Kind::IndexAtLeast3 && !index_cause) index_cause = &c;

  FreePair out;
  if (!index_cause) {
    const BranchCause& c = rep.causes.front();
    out.provenance = FreePair::Case::NotGenerated;
    out.ng_a = c.a;
    out.ng_b = c.b;
    out.missing_cosets = c.value;
    return out;
  }

  Label a = index_cause->a;
  const FiniteGroup& ga = d.d.group(subset_of({a}));
  Subgroup base = base_image_subgroup(d, a);
  std::uint32_t g_a = lowest_outside(ga, base);
  std::uint32_t g_t = lowest_outside(ga, base, g_a);

  TrianglePlacement t = placement_for(d);
  BilliardSequence shot = closed_orthogonal_shot(t, a);
  TypedWord h = h_word_for_shot(d, shot);

  out.provenance = FreePair::Case::Index3;
  out.edge_a = a;
  out.g_a = g_a;
  out.g_tilde = g_t;
  out.h = h;
  out.fixture_id = fixture_name(t, a);
  // x = g_a h gt^{-1},  y = h g_a h gt^{-1} h^{-1}
  auto append_h = [&](TypedWord& w, bool inverse) {
    if (!inverse) {
      w.insert(w.end(), h.begin(), h.end());
    } else {
      for (auto it = h.rbegin(); it != h.rend(); ++it) {
        const FiniteGroup& g = d.d.group(subset_of({it->type}));
        w.push_back({it->type, g.inverse(it->elem)});
      }
    }
  };
  out.x.push_back({a, g_a});
  append_h(out.x, false);
  out.x.push_back({a, ga.inverse(g_t)});
  append_h(out.y, false);
  out.y.push_back({a, g_a});
  append_h(out.y, false);
  out.y.push_back({a, ga.inverse(g_t)});
  append_h(out.y, true);
  return out;
}

namespace {

// Block letters of the expanded word: an edge-a element, or a whole
// h^{+-1} factor.
struct Block {
  enum class Kind { EdgeLetter, H };
  Kind kind;
  std::uint32_t elem = 0; // EdgeLetter
  bool inverse = false;   // H
};

struct GapError {
  std::string what;
};

std::vector<Block> expand_and_merge(const TriangleDiagram& d, const FreePair& p,
                                    const std::vector<int>& word) {
  const FiniteGroup& ga = d.d.group(subset_of({p.edge_a}));
  Subgroup base = base_image_subgroup(d, p.edge_a);

  // letters of the generators: 0=x, 1=x^-1, 2=y, 3=y^-1
  std::vector<Block> blocks;
  auto push_edge = [&](std::uint32_t e) {
    blocks.push_back({Block::Kind::EdgeLetter, e, false});
  };
  auto push_h = [&](bool inv) { blocks.push_back({Block::Kind::H, 0, inv}); };
  std::uint32_t gt_inv = ga.inverse(p.g_tilde);
  std::uint32_t ga_inv = ga.inverse(p.g_a);
  for (int gen : word) {
    switch (gen) {
      case 0: push_edge(p.g_a); push_h(false); push_edge(gt_inv); break;
      case 1: push_edge(p.g_tilde); push_h(true); push_edge(ga_inv); break;
      case 2: push_h(false); push_edge(p.g_a); push_h(false); push_edge(gt_inv); push_h(true); break;
      case 3: push_h(false); push_edge(p.g_tilde); push_h(true); push_edge(ga_inv); push_h(true); break;
      default: throw std::logic_error("bad generator id");
    }
  }

  // cancel h h^-1 and merge adjacent edge letters to a fixed point
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Block> next;
    for (const auto& b : blocks) {
      if (!next.empty()) {
        Block& prev = next.back();
        if (prev.kind == Block::Kind::H && b.kind == Block::Kind::H &&
            prev.inverse != b.inverse) {
          next.pop_back();
          changed = true;
          continue;
        }
        if (prev.kind == Block::Kind::EdgeLetter && b.kind == Block::Kind::EdgeLetter) {
          std::uint32_t merged = ga.op(prev.elem, b.elem);
          if (base.contains(merged))
            throw GapError{"merged edge letter " + std::to_string(merged) +
                           " lies in the base image"};
          prev.elem = merged;
          changed = true;
          continue;
        }
      }
      next.push_back(b);
    }
    blocks = std::move(next);
  }
  return blocks;
}

} // namespace

VerifyReport verify_free_pair(const TriangleDiagram& d, const FreePair& p, std::uint32_t L) {
  VerifyReport rep;
  if (p.provenance != FreePair::Case::Index3)
    throw std::invalid_argument("verify_free_pair needs an index-3 case pair");
  rep.all_certified = true;
  if (L == 0) return rep; // vacuously true

  TrianglePlacement t = placement_for(d);
  BilliardSequence shot = closed_orthogonal_shot(t, p.edge_a);
  // loop interior: reflection points r_1 .. p .. r_1 of the closed shot
  std::vector<Vec2> loop_points(shot.points.begin() + 1, shot.points.end() - 1);
  std::vector<Label> loop_labels = shot.labels;
  const Vec2 y0 = shot.points.front();
  const Vec2 away = shot.directions.front();
  // foot of the orthogonal bounce on edge a: y0 is the midpoint of foot
  // and the first reflection point
  const Vec2 foot = y0 * QuadRat(2) - loop_points.front();

  // enumerate freely reduced words over generators 0..3 (x, X, y, Y)
  std::vector<std::vector<int>> words;
  std::vector<int> cur;
  auto inverse_gen = [](int g) { return g ^ 1; };
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t depth) {
    if (!cur.empty()) words.push_back(cur);
    if (depth == L) return;
    for (int g = 0; g < 4; ++g) {
      if (!cur.empty() && cur.back() == inverse_gen(g)) continue;
      cur.push_back(g);
      rec(depth + 1);
      cur.pop_back();
    }
  };
  rec(0);

  for (const auto& w : words) {
    std::vector<Block> blocks;
    try {
      blocks = expand_and_merge(d, p, w);
    } catch (const GapError& e) {
      rep.all_certified = false;
      rep.failure = "CertificationGap: " + e.what;
      return rep;
    }
    if (blocks.empty()) {
      rep.all_certified = false;
      rep.failure = "CertificationGap: word reduced to no factors";
      return rep;
    }
    // assemble the word and billiard sequence; the path alternates
    // between closed-shot loops and orthogonal bounces at edge a
    TypedWord letters;
    BilliardSequence seq;
    seq.points.push_back(y0);
    bool away_phase = blocks.front().kind == Block::Kind::H;
    seq.directions.push_back(away_phase ? away : foot - y0);
    bool structure_ok = true;
    for (const auto& b : blocks) {
      if (b.kind == Block::Kind::H) {
        if (!away_phase) {
          structure_ok = false;
          break;
        }
        for (std::size_t i = 0; i < loop_points.size(); ++i) {
          seq.points.push_back(loop_points[i]);
          seq.labels.push_back(loop_labels[i]);
        }
        if (!b.inverse) {
          for (const auto& l : p.h) letters.push_back(l);
        } else {
          for (auto it = p.h.rbegin(); it != p.h.rend(); ++it) {
            const FiniteGroup& g = d.d.group(subset_of({it->type}));
            letters.push_back({it->type, g.inverse(it->elem)});
          }
        }
        away_phase = false;
      } else {
        if (away_phase) {
          structure_ok = false;
          break;
        }
        seq.points.push_back(foot);
        seq.labels.push_back(p.edge_a);
        letters.push_back({p.edge_a, b.elem});
        away_phase = true;
      }
    }
    if (!structure_ok) {
      rep.all_certified = false;
      rep.failure = "CertificationGap: blocks do not alternate";
      return rep;
    }
    seq.points.push_back(y0);
    // fill directions by re-simulation and validate everything
    bool ok = false;
    try {
      BilliardSequence sim = shoot(t, y0, seq.directions.front(),
                                   static_cast<std::uint32_t>(seq.labels.size()));
      ok = sim.labels == seq.labels;
      if (ok)
        for (std::size_t i = 1; i + 1 < seq.points.size(); ++i)
          ok = ok && sim.points[i] == seq.points[i];
      if (ok) {
        seq.directions = sim.directions;
        ok = adapted(d, letters, seq) && reflection_law_holds(t, seq);
      }
    } catch (const PocketHit&) {
      ok = false;
    }
    if (!ok) {
      rep.all_certified = false;
      std::ostringstream os;
      os << "CertificationGap: word";
      for (int g : w) os << " " << "xXyY"[g];
      os << " failed re-simulation";
      rep.failure = os.str();
      return rep;
    }
    rep.words_checked += 1;
  }
  return rep;
}

} // namespace trigroup
