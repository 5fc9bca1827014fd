#include "trigroup/diagram.hpp"

#include "trigroup/rational.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace trigroup {

SubsetKey subset_of(std::initializer_list<Label> labels) {
  SubsetKey k = 0;
  for (Label l : labels) k |= static_cast<SubsetKey>(1u << l);
  return k;
}

SubsetKey subset_of(const std::vector<Label>& labels) {
  SubsetKey k = 0;
  for (Label l : labels) k |= static_cast<SubsetKey>(1u << l);
  return k;
}

std::vector<Label> labels_of(SubsetKey key) {
  std::vector<Label> out;
  for (Label l = 1; l <= 9; ++l)
    if (key & (1u << l)) out.push_back(l);
  return out;
}

std::string subset_string(SubsetKey key) {
  std::string s;
  for (Label l : labels_of(key)) s += static_cast<char>('0' + l);
  return s;
}

std::optional<SubsetKey> subset_from_string(const std::string& s) {
  SubsetKey k = 0;
  Label prev = 0;
  for (char c : s) {
    if (c < '1' || c > '9') return std::nullopt;
    Label l = c - '0';
    if (l <= prev) return std::nullopt; // require sorted, distinct digits
    prev = l;
    k |= static_cast<SubsetKey>(1u << l);
  }
  return k;
}

const FiniteGroup& CorsonDiagram::group(SubsetKey j) const {
  auto it = groups.find(j);
  if (it == groups.end())
    throw std::out_of_range("diagram has no group for subset '" + subset_string(j) + "'");
  return it->second;
}

const std::vector<std::uint32_t>& CorsonDiagram::hom(SubsetKey j1, SubsetKey j2) const {
  auto it = homs.find({j1, j2});
  if (it == homs.end())
    throw std::out_of_range("diagram has no homomorphism " + subset_string(j1) + "->" +
                            subset_string(j2));
  return it->second;
}

std::vector<std::uint32_t> CorsonDiagram::hom_or_derived(SubsetKey j1, SubsetKey j2) const {
  auto it = homs.find({j1, j2});
  if (it != homs.end()) return it->second;
  if (j1 != 0)
    throw std::out_of_range("diagram has no homomorphism " + subset_string(j1) + "->" +
                            subset_string(j2));
  auto mids = labels_of(j2);
  if (mids.empty())
    throw std::out_of_range("missing identity homomorphism for the empty subset");
  SubsetKey mid = subset_of({mids.front()});
  const auto& first = hom(0, mid);
  const auto& second = hom(mid, j2);
  std::vector<std::uint32_t> out(first.size());
  for (std::size_t x = 0; x < first.size(); ++x) out[x] = second[first[x]];
  return out;
}

CorsonDiagram CorsonDiagram::relabeled(const std::map<Label, Label>& perm) const {
  auto map_key = [&](SubsetKey k) {
    SubsetKey out = 0;
    for (Label l : labels_of(k)) out |= static_cast<SubsetKey>(1u << perm.at(l));
    return out;
  };
  CorsonDiagram out;
  for (Label l : index_set) out.index_set.push_back(perm.at(l));
  std::sort(out.index_set.begin(), out.index_set.end());
  for (const auto& [k, g] : groups) out.groups.emplace(map_key(k), g);
  for (const auto& [k, h] : homs) out.homs.emplace(std::make_pair(map_key(k.first), map_key(k.second)), h);
  return out;
}

TriangleDiagram::TriangleDiagram(CorsonDiagram c) : d(std::move(c)) {
  if (d.index_set != std::vector<Label>{1, 2, 3})
    throw std::invalid_argument("triangle diagrams require index set {1,2,3}");
}

namespace {

struct PairData {
  const FiniteGroup* edge = nullptr;
  std::vector<std::uint32_t> map_i; // G_i -> E
  std::vector<std::uint32_t> map_j;
  std::vector<bool> in_base;                              // base image membership in E
  std::vector<std::pair<std::uint32_t, std::uint32_t>> letters_i; // (image, source), source-sorted
  std::vector<std::pair<std::uint32_t, std::uint32_t>> letters_j;
};

PairData pair_data(const CorsonDiagram& d, Label i, Label j) {
  PairData p;
  SubsetKey si = subset_of({i}), sj = subset_of({j}), sij = subset_of({i, j});
  p.edge = &d.group(sij);
  p.map_i = d.hom(si, sij);
  p.map_j = d.hom(sj, sij);
  auto base = d.hom_or_derived(0, sij);
  p.in_base.assign(p.edge->order, false);
  for (auto e : base) p.in_base[e] = true;
  const FiniteGroup& gi = d.group(si);
  for (std::uint32_t x = 0; x < gi.order; ++x)
    if (!p.in_base[p.map_i[x]]) p.letters_i.emplace_back(p.map_i[x], x);
  const FiniteGroup& gj = d.group(sj);
  for (std::uint32_t x = 0; x < gj.order; ++x)
    if (!p.in_base[p.map_j[x]]) p.letters_j.emplace_back(p.map_j[x], x);
  return p;
}

std::string issue_kind_name(IssueKind k) {
  switch (k) {
    case IssueKind::MissingGroup: return "MissingGroup";
    case IssueKind::MissingHom: return "MissingHom";
    case IssueKind::HomWrongSize: return "HomWrongSize";
    case IssueKind::HomNotHomomorphism: return "HomNotHomomorphism";
    case IssueKind::NonInjectiveHom: return "NonInjectiveHom";
    case IssueKind::NotCommutative: return "NotCommutative";
    case IssueKind::AnglePi: return "AnglePi";
  }
  return "?";
}

} // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& is : issues) {
    os << issue_kind_name(is.kind);
    if (is.j1 || is.j2) os << "(" << subset_string(is.j1) << "->" << subset_string(is.j2) << ")";
    if (!is.detail.empty()) os << ": " << is.detail;
    os << "\n";
  }
  return os.str();
}

ValidationReport validate(const CorsonDiagram& d) {
  ValidationReport rep;
  auto add = [&](IssueKind k, SubsetKey j1, SubsetKey j2, std::uint32_t x, std::uint32_t y,
                 std::string detail) {
    rep.issues.push_back({k, j1, j2, x, y, std::move(detail)});
  };

  // presence of groups
  std::vector<SubsetKey> required_groups{0};
  for (Label i : d.index_set) required_groups.push_back(subset_of({i}));
  for (std::size_t a = 0; a < d.index_set.size(); ++a)
    for (std::size_t b = a + 1; b < d.index_set.size(); ++b)
      required_groups.push_back(subset_of({d.index_set[a], d.index_set[b]}));
  for (SubsetKey k : required_groups)
    if (!d.has_group(k)) add(IssueKind::MissingGroup, k, 0, 0, 0, "group missing");

  // presence + axioms of required homs
  struct Need {
    SubsetKey from, to;
    bool optional;
  };
  std::vector<Need> needs;
  for (Label i : d.index_set) needs.push_back({0, subset_of({i}), false});
  for (std::size_t a = 0; a < d.index_set.size(); ++a)
    for (std::size_t b = a + 1; b < d.index_set.size(); ++b) {
      SubsetKey sij = subset_of({d.index_set[a], d.index_set[b]});
      needs.push_back({subset_of({d.index_set[a]}), sij, false});
      needs.push_back({subset_of({d.index_set[b]}), sij, false});
      needs.push_back({0, sij, true});
    }
  bool structurally_ok = rep.ok();
  for (const auto& nd : needs) {
    if (!d.has_hom(nd.from, nd.to)) {
      if (!nd.optional) {
        add(IssueKind::MissingHom, nd.from, nd.to, 0, 0, "homomorphism missing");
        structurally_ok = false;
      }
      continue;
    }
    if (!d.has_group(nd.from) || !d.has_group(nd.to)) continue;
    const FiniteGroup& dom = d.group(nd.from);
    const FiniteGroup& cod = d.group(nd.to);
    const auto& h = d.hom(nd.from, nd.to);
    if (h.size() != dom.order) {
      add(IssueKind::HomWrongSize, nd.from, nd.to, 0, 0,
          "map has " + std::to_string(h.size()) + " entries, domain order is " +
              std::to_string(dom.order));
      structurally_ok = false;
      continue;
    }
    bool range_ok = true;
    for (auto v : h)
      if (v >= cod.order) range_ok = false;
    if (!range_ok || !is_homomorphism(dom, cod, h)) {
      add(IssueKind::HomNotHomomorphism, nd.from, nd.to, 0, 0,
          "map does not respect identity/multiplication");
      structurally_ok = false;
      continue;
    }
    if (!is_injective_map(h)) {
      std::uint32_t wx = 0, wy = 0;
      for (std::uint32_t x = 0; x < h.size() && wx == wy; ++x)
        for (std::uint32_t y = x + 1; y < h.size(); ++y)
          if (h[x] == h[y]) {
            wx = x;
            wy = y;
            break;
          }
      add(IssueKind::NonInjectiveHom, nd.from, nd.to, wx, wy,
          "elements " + std::to_string(wx) + " and " + std::to_string(wy) +
              " share the image " + std::to_string(h[wx]));
      structurally_ok = false;
    }
  }
  if (!structurally_ok) return rep;

  // commutativity of the two routes into each edge group (and of any
  // explicitly supplied base-to-edge map)
  for (std::size_t a = 0; a < d.index_set.size(); ++a)
    for (std::size_t b = a + 1; b < d.index_set.size(); ++b) {
      Label i = d.index_set[a], j = d.index_set[b];
      SubsetKey si = subset_of({i}), sj = subset_of({j}), sij = subset_of({i, j});
      const FiniteGroup& base = d.group(0);
      const auto& bi = d.hom(0, si);
      const auto& bj = d.hom(0, sj);
      const auto& ie = d.hom(si, sij);
      const auto& je = d.hom(sj, sij);
      bool commutes = true;
      for (std::uint32_t x = 0; x < base.order; ++x) {
        std::uint32_t via_i = ie[bi[x]];
        std::uint32_t via_j = je[bj[x]];
        if (via_i != via_j) {
          add(IssueKind::NotCommutative, si, sij, x, 0,
              "routes via " + std::to_string(i) + " and " + std::to_string(j) +
                  " disagree on base element " + std::to_string(x));
          commutes = false;
          break;
        }
        if (d.has_hom(0, sij) && d.hom(0, sij).size() == base.order &&
            d.hom(0, sij)[x] != via_i) {
          add(IssueKind::NotCommutative, 0, sij, x, 0,
              "supplied base-to-edge map disagrees with the composed route on element " +
                  std::to_string(x));
          commutes = false;
          break;
        }
      }
      if (!commutes) continue;

      AngleResult ar = gs_angle(d, i, j);
      if (!ar.angle.is_zero() && ar.angle.m_hat % 2 != 0)
        throw std::logic_error("odd minimal kernel length on a diagram with injective maps");
      if (ar.angle.m_hat == 2) {
        std::string w;
        for (const auto& l : ar.witness) {
          if (!w.empty()) w += " ";
          w += std::to_string(l.side) + ":" + std::to_string(l.elem);
        }
        add(IssueKind::AnglePi, si, sij, ar.witness[0].elem, ar.witness[1].elem,
            "images of G_" + std::to_string(i) + " and G_" + std::to_string(j) +
                " intersect beyond the base image; kernel word " + w);
      }
    }
  return rep;
}

AngleResult gs_angle(const CorsonDiagram& d, Label i, Label j) {
  if (i > j) {
    AngleResult r = gs_angle(d, j, i);
    return r;
  }
  PairData p = pair_data(d, i, j);
  const FiniteGroup& E = *p.edge;
  const std::uint32_t n = E.order;
  constexpr std::uint32_t INF = std::numeric_limits<std::uint32_t>::max();

  // remaining[v*2+s]: minimal number of letters, the first from the side
  // other than s, multiplying v to the identity.
  std::vector<std::uint32_t> remaining(n * 2, INF);
  std::deque<std::uint32_t> queue;
  auto push = [&](std::uint32_t v, std::uint32_t s, std::uint32_t dist) {
    if (remaining[v * 2 + s] != INF) return;
    remaining[v * 2 + s] = dist;
    queue.push_back(v * 2 + s);
  };
  push(E.identity, 0, 0);
  push(E.identity, 1, 0);
  while (!queue.empty()) {
    std::uint32_t state = queue.front();
    queue.pop_front();
    std::uint32_t w = state / 2, sprime = state % 2;
    std::uint32_t dist = remaining[state];
    // predecessor states (v, other(s')) with v * x = w for a letter x of side s'
    const auto& letters = sprime == 0 ? p.letters_i : p.letters_j;
    for (const auto& [img, src] : letters) {
      std::uint32_t v = E.op(w, E.inverse(img));
      push(v, 1 - sprime, dist + 1);
    }
  }

  AngleResult out;
  std::uint32_t best = INF;
  for (int side = 0; side < 2; ++side) {
    const auto& letters = side == 0 ? p.letters_i : p.letters_j;
    for (const auto& [img, src] : letters) {
      std::uint32_t r = remaining[img * 2 + side];
      if (r != INF && r + 1 < best) best = r + 1;
    }
  }
  if (best == INF || best < 2) {
    // best < 2 cannot happen: letters are outside the base image, which
    // contains the identity.
    out.angle.m_hat = 0;
    return out;
  }
  out.angle.m_hat = best;

  // Greedy reconstruction of the lexicographically least shortest word:
  // prefer side i, then smaller source element index.
  std::uint32_t v = E.identity;
  std::uint32_t last = 2; // no side yet
  std::uint32_t left = best;
  while (left > 0) {
    bool chosen = false;
    for (int side = 0; side < 2 && !chosen; ++side) {
      if (side == static_cast<int>(last)) continue;
      const auto& letters = side == 0 ? p.letters_i : p.letters_j;
      for (const auto& [img, src] : letters) {
        std::uint32_t nv = E.op(v, img);
        if (remaining[nv * 2 + side] == left - 1) {
          out.witness.push_back({side == 0 ? i : j, src});
          v = nv;
          last = static_cast<std::uint32_t>(side);
          left -= 1;
          chosen = true;
          break;
        }
      }
    }
    if (!chosen) throw std::logic_error("witness reconstruction failed");
  }
  if (v != E.identity) throw std::logic_error("witness does not evaluate to the identity");
  return out;
}

std::map<std::pair<Label, Label>, AngleResult> all_angles(const CorsonDiagram& d) {
  std::map<std::pair<Label, Label>, AngleResult> out;
  for (std::size_t a = 0; a < d.index_set.size(); ++a)
    for (std::size_t b = a + 1; b < d.index_set.size(); ++b) {
      Label i = d.index_set[a], j = d.index_set[b];
      out.emplace(std::make_pair(i, j), gs_angle(d, i, j));
    }
  return out;
}

namespace {

Rat angle_fraction(const GSAngle& a) {
  // angle / pi as an exact rational: 2/m_hat, or 0.
  if (a.is_zero()) return Rat(0);
  return Rat(2, a.m_hat);
}

} // namespace

std::vector<std::array<Label, 3>> spherical_triples(
    const std::vector<Label>& index_set,
    const std::map<std::pair<Label, Label>, AngleResult>& angles) {
  std::vector<std::array<Label, 3>> out;
  auto angle_of = [&](Label x, Label y) {
    if (x > y) std::swap(x, y);
    return angles.at({x, y}).angle;
  };
  for (std::size_t a = 0; a < index_set.size(); ++a)
    for (std::size_t b = a + 1; b < index_set.size(); ++b)
      for (std::size_t c = b + 1; c < index_set.size(); ++c) {
        Label i = index_set[a], j = index_set[b], k = index_set[c];
        Rat sum = angle_fraction(angle_of(i, j)) + angle_fraction(angle_of(i, k)) +
                  angle_fraction(angle_of(j, k));
        if (sum > 1) out.push_back({i, j, k});
      }
  return out;
}

CurvatureClass classify_angles(const std::array<GSAngle, 3>& angles) {
  Rat sum = angle_fraction(angles[0]) + angle_fraction(angles[1]) + angle_fraction(angles[2]);
  CurvatureClass out{Curvature::Euclidean, false};
  for (const auto& a : angles)
    if (a.is_zero()) out.degenerate = true;
  if (sum > 1)
    out.kind = Curvature::Spherical;
  else if (sum == 1)
    out.kind = Curvature::Euclidean;
  else
    out.kind = Curvature::Hyperbolic;
  return out;
}

std::array<GSAngle, 3> triangle_angles(const TriangleDiagram& t) {
  return {gs_angle(t.d, 1, 2).angle, gs_angle(t.d, 1, 3).angle, gs_angle(t.d, 2, 3).angle};
}

CurvatureClass classify_curvature(const TriangleDiagram& t) {
  return classify_angles(triangle_angles(t));
}

LinkGraph link_graph(const TriangleDiagram& t, Label i, Label j) {
  if (i > j) std::swap(i, j);
  AngleResult ar = gs_angle(t.d, i, j);
  if (ar.angle.is_zero())
    throw ZeroAngleInfiniteLink("link at vertex {" + std::to_string(i) + "," +
                                std::to_string(j) + "} is infinite: the angle is zero");
  PairData p = pair_data(t.d, i, j);
  const FiniteGroup& E = *p.edge;

  auto coset_ids = [&](const std::vector<std::uint32_t>& image_map) {
    Subgroup img = hom_image(E, image_map);
    std::vector<std::uint32_t> id(E.order, E.order);
    std::uint32_t next = 0;
    for (std::uint32_t g = 0; g < E.order; ++g) {
      if (id[g] != E.order) continue;
      for (auto a : img.elements) id[E.op(g, a)] = next;
      ++next;
    }
    return std::make_pair(id, next);
  };
  auto [ci, ni] = coset_ids(p.map_i);
  auto [cj, nj] = coset_ids(p.map_j);

  LinkGraph lg;
  lg.side_i_nodes = ni;
  lg.side_j_nodes = nj;
  lg.degenerate_side = (ni == 1 || nj == 1);

  auto base_map = t.d.hom_or_derived(0, subset_of({i, j}));
  Subgroup base = hom_image(E, base_map);
  std::vector<bool> seen(E.order, false);
  for (std::uint32_t g = 0; g < E.order; ++g) {
    if (seen[g]) continue;
    for (auto b : base.elements) seen[E.op(g, b)] = true;
    lg.edges.emplace_back(ci[g], cj[g]);
  }
  if (lg.degenerate_side) return lg;

  // girth of the bipartite multigraph (parallel edges give girth 2)
  const std::uint32_t nodes = static_cast<std::uint32_t>(ni + nj);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(nodes);
  for (std::uint32_t e = 0; e < lg.edges.size(); ++e) {
    std::uint32_t u = lg.edges[e].first;
    std::uint32_t v = static_cast<std::uint32_t>(ni) + lg.edges[e].second;
    adj[u].emplace_back(v, e);
    adj[v].emplace_back(u, e);
  }
  constexpr std::uint32_t INF = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t best = INF;
  for (std::uint32_t root = 0; root < nodes; ++root) {
    std::vector<std::uint32_t> dist(nodes, INF), via(nodes, INF);
    std::deque<std::uint32_t> q;
    dist[root] = 0;
    q.push_back(root);
    while (!q.empty()) {
      std::uint32_t u = q.front();
      q.pop_front();
      if (2 * dist[u] >= best) continue;
      for (auto [v, e] : adj[u]) {
        if (e == via[u]) continue;
        if (dist[v] == INF) {
          dist[v] = dist[u] + 1;
          via[v] = e;
          q.push_back(v);
        } else {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  if (best != INF) lg.girth = best;
  return lg;
}

std::string export_presentation(const TriangleDiagram& t) {
  const CorsonDiagram& d = t.d;
  std::vector<SubsetKey> keys;
  for (const auto& [k, g] : d.groups) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](SubsetKey a, SubsetKey b) {
    return subset_string(a) < subset_string(b);
  });

  auto gen_name = [&](SubsetKey k, std::uint32_t x) {
    return "g" + subset_string(k) + "_" + std::to_string(x);
  };

  std::ostringstream os;
  for (SubsetKey k : keys) {
    const FiniteGroup& g = d.group(k);
    for (std::uint32_t x = 0; x < g.order; ++x)
      if (x != g.identity) os << "gen " << gen_name(k, x) << "\n";
  }
  for (SubsetKey k : keys) {
    const FiniteGroup& g = d.group(k);
    for (std::uint32_t x = 0; x < g.order; ++x) {
      if (x == g.identity) continue;
      for (std::uint32_t y = 0; y < g.order; ++y) {
        if (y == g.identity) continue;
        std::uint32_t z = g.op(x, y);
        os << gen_name(k, x) << " " << gen_name(k, y) << " = "
           << (z == g.identity ? std::string("1") : gen_name(k, z)) << "\n";
      }
    }
  }
  for (SubsetKey k1 : keys) {
    for (SubsetKey k2 : keys) {
      if (k1 == k2 || (k1 & k2) != k1) continue;
      if (!d.has_hom(k1, k2) && k1 != 0) continue;
      const FiniteGroup& g1 = d.group(k1);
      std::vector<std::uint32_t> h =
          d.has_hom(k1, k2) ? d.hom(k1, k2) : d.hom_or_derived(k1, k2);
      for (std::uint32_t x = 0; x < g1.order; ++x) {
        if (x == g1.identity) continue;
        const FiniteGroup& g2 = d.group(k2);
        os << gen_name(k1, x) << " = "
           << (h[x] == g2.identity ? std::string("1") : gen_name(k2, h[x])) << "\n";
      }
    }
  }
  return os.str();
}

std::array<std::uint32_t, 3> dominate(std::uint32_t k, std::uint32_t l, std::uint32_t m) {
  if (k < 2 || !(k <= l && l <= m))
    throw std::invalid_argument("NotOrdered: need 2 <= k <= l <= m");
  // 1/k + 1/l + 1/m <= 1, cross-multiplied
  std::uint64_t lhs = static_cast<std::uint64_t>(l) * m + static_cast<std::uint64_t>(k) * m +
                      static_cast<std::uint64_t>(k) * l;
  std::uint64_t rhs = static_cast<std::uint64_t>(k) * l * m;
  if (lhs > rhs)
    throw std::invalid_argument("NotNonSpherical: 1/k + 1/l + 1/m exceeds 1");
  if (k >= 3) return {3, 3, 3};
  if (l >= 4) return {2, 4, 4};
  return {2, 3, 6};
}

} // namespace trigroup
