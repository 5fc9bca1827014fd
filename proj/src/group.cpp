#include "trigroup/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace trigroup {

std::uint32_t FiniteGroup::element_order(std::uint32_t x) const {
  std::uint32_t n = 1;
  std::uint32_t p = x;
  while (p != identity) {
    p = op(p, x);
    ++n;
  }
  return n;
}

std::string FiniteGroup::element_name(std::uint32_t x) const {
  if (x < names.size() && !names[x].empty()) return names[x];
  return "g" + std::to_string(x);
}

bool Subgroup::contains(std::uint32_t x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

FiniteGroup load_group(const std::vector<std::vector<std::uint32_t>>& table,
                       std::vector<std::string> names, std::uint32_t order_cap) {
  const std::size_t n = table.size();
  if (n == 0) throw GroupError(GroupErrorKind::BadTable, "empty multiplication table");
  if (n > order_cap)
    throw GroupError(GroupErrorKind::OrderCapExceeded,
                     "group order " + std::to_string(n) + " exceeds cap " +
                         std::to_string(order_cap));
  FiniteGroup g;
  g.order = static_cast<std::uint32_t>(n);
  g.mul.resize(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x].size() != n)
      throw GroupError(GroupErrorKind::BadTable,
                       "row " + std::to_string(x) + " has " +
                           std::to_string(table[x].size()) + " entries, expected " +
                           std::to_string(n));
    for (std::size_t y = 0; y < n; ++y) {
      if (table[x][y] >= n)
        throw GroupError(GroupErrorKind::NotClosed,
                         "entry (" + std::to_string(x) + "," + std::to_string(y) +
                             ") = " + std::to_string(table[x][y]) + " is out of range");
      g.mul[x * n + y] = table[x][y];
    }
  }

  // Locate a two-sided identity; element 0 need not be it.
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x)
      ok = g.mul[e * n + x] == x && g.mul[x * n + e] == x;
    if (ok) {
      g.identity = e;
      found = true;
    }
  }
  if (!found) throw GroupError(GroupErrorKind::NoIdentity, "no two-sided identity element");

  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t z = 0; z < n; ++z)
        if (g.op(g.op(x, y), z) != g.op(x, g.op(y, z)))
          throw GroupError(GroupErrorKind::NotAssociative,
                           "associativity fails at (" + std::to_string(x) + "," +
                               std::to_string(y) + "," + std::to_string(z) + ")");

  g.inv.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    bool has = false;
    for (std::uint32_t y = 0; y < n; ++y)
      if (g.op(x, y) == g.identity && g.op(y, x) == g.identity) {
        g.inv[x] = y;
        has = true;
        break;
      }
    if (!has)
      throw GroupError(GroupErrorKind::MissingInverse,
                       "element " + std::to_string(x) + " has no inverse");
  }

  if (!names.empty() && names.size() != n)
    throw GroupError(GroupErrorKind::BadTable, "name list length does not match order");
  g.names = std::move(names);
  return g;
}

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<std::uint32_t>& gens) {
  std::vector<bool> in(g.order, false);
  std::vector<std::uint32_t> work;
  auto add = [&](std::uint32_t x) {
    if (!in[x]) {
      in[x] = true;
      work.push_back(x);
    }
  };
  add(g.identity);
  for (auto x : gens) add(x);
  for (std::size_t i = 0; i < work.size(); ++i) {
    std::uint32_t a = work[i];
    add(g.inverse(a));
    for (std::size_t j = 0; j <= i; ++j) {
      add(g.op(a, work[j]));
      add(g.op(work[j], a));
    }
  }
  Subgroup h;
  for (std::uint32_t x = 0; x < g.order; ++x)
    if (in[x]) h.elements.push_back(x);
  return h;
}

std::uint32_t subgroup_index(const FiniteGroup& g, const Subgroup& h) {
  if (h.elements.empty() || g.order % h.elements.size() != 0)
    throw GroupError(GroupErrorKind::NotDivisible,
                     "subgroup size " + std::to_string(h.elements.size()) +
                         " does not divide group order " + std::to_string(g.order));
  return g.order / static_cast<std::uint32_t>(h.elements.size());
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (!h.contains(g.identity)) return false;
  for (auto x : h.elements) {
    if (!h.contains(g.inverse(x))) return false;
    for (auto y : h.elements)
      if (!h.contains(g.op(x, y))) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (std::uint32_t x = 0; x < g.order; ++x)
    for (auto n : h.elements)
      if (!h.contains(g.op(g.op(x, n), g.inverse(x)))) return false;
  return true;
}

Quotient quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n))
    throw GroupError(GroupErrorKind::NotNormal, "subgroup is not normal");
  const std::uint32_t none = g.order;
  std::vector<std::uint32_t> coset_of(g.order, none);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < g.order; ++x) {
    if (coset_of[x] != none) continue;
    std::uint32_t c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (auto m : n.elements) coset_of[g.op(x, m)] = c;
  }
  const std::uint32_t q = static_cast<std::uint32_t>(reps.size());
  std::vector<std::vector<std::uint32_t>> table(q, std::vector<std::uint32_t>(q));
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      table[a][b] = coset_of[g.op(reps[a], reps[b])];
  Quotient out;
  out.group = load_group(table);
  out.projection = std::move(coset_of);
  return out;
}

namespace {

// Multiset of element orders, the cheapest isomorphism invariant.
std::vector<std::uint32_t> order_profile(const FiniteGroup& g) {
  std::vector<std::uint32_t> p(g.order);
  for (std::uint32_t x = 0; x < g.order; ++x) p[x] = g.element_order(x);
  std::sort(p.begin(), p.end());
  return p;
}

// Extends a partial map on generators to the generated subgroup by
// closure; returns false on any conflict with multiplicativity or the
// injectivity requirement.
struct HomSearch {
  const FiniteGroup& dom;
  const FiniteGroup& cod;
  bool injective;

  // state: image[x] or none, and for injective search the used codomain set
  std::vector<std::uint32_t> image;
  std::vector<bool> used;
  static constexpr std::uint32_t none = 0xffffffffu;

  HomSearch(const FiniteGroup& d, const FiniteGroup& c, bool inj)
      : dom(d), cod(c), injective(inj), image(d.order, none), used(c.order, false) {}

  bool assign(std::uint32_t x, std::uint32_t y, std::vector<std::uint32_t>& trail) {
    if (image[x] != none) return image[x] == y;
    if (injective && used[y]) return false;
    image[x] = y;
    used[y] = true;
    trail.push_back(x);
    return true;
  }

  // Deduce all products of already-mapped elements; fixed point.
  bool close(std::vector<std::uint32_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::uint32_t> known;
      for (std::uint32_t x = 0; x < dom.order; ++x)
        if (image[x] != none) known.push_back(x);
      for (auto a : known)
        for (auto b : known) {
          std::uint32_t ab = dom.op(a, b);
          std::uint32_t y = cod.op(image[a], image[b]);
          if (image[ab] == none) {
            if (!assign(ab, y, trail)) return false;
            changed = true;
          } else if (image[ab] != y) {
            return false;
          }
        }
    }
    return true;
  }

  void undo(std::vector<std::uint32_t>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      std::uint32_t x = trail.back();
      trail.pop_back();
      used[image[x]] = false;
      image[x] = none;
    }
  }

  bool solve(std::vector<std::uint32_t>& trail) {
    std::uint32_t next = none;
    for (std::uint32_t x = 0; x < dom.order; ++x)
      if (image[x] == none) {
        next = x;
        break;
      }
    if (next == none) return true;
    std::uint32_t d = dom.element_order(next);
    for (std::uint32_t y = 0; y < cod.order; ++y) {
      if (injective && used[y]) continue;
      if (cod.element_order(y) != d) continue;
      if (!injective && d % cod.element_order(y) != 0) continue;
      std::size_t mark = trail.size();
      if (assign(next, y, trail) && close(trail) && solve(trail)) return true;
      undo(trail, mark);
    }
    if (!injective) {
      // also try collapsing candidates whose order divides d
      for (std::uint32_t y = 0; y < cod.order; ++y) {
        if (cod.element_order(y) == d) continue;
        if (d % cod.element_order(y) != 0) continue;
        std::size_t mark = trail.size();
        if (assign(next, y, trail) && close(trail) && solve(trail)) return true;
        undo(trail, mark);
      }
    }
    return false;
  }
};

} // namespace

std::optional<std::vector<std::uint32_t>> are_isomorphic(const FiniteGroup& g1,
                                                         const FiniteGroup& g2) {
  if (g1.order > kIsomorphismOrderCap || g2.order > kIsomorphismOrderCap)
    throw GroupError(GroupErrorKind::OrderCapExceeded,
                     "isomorphism search capped at order " +
                         std::to_string(kIsomorphismOrderCap));
  if (g1.order != g2.order) return std::nullopt;
  if (order_profile(g1) != order_profile(g2)) return std::nullopt;

  HomSearch s(g1, g2, /*injective=*/true);
  std::vector<std::uint32_t> trail;
  if (!s.assign(g1.identity, g2.identity, trail)) return std::nullopt;
  if (!s.close(trail)) return std::nullopt;
  if (!s.solve(trail)) return std::nullopt;
  return s.image;
}

std::optional<std::vector<std::uint32_t>> find_injective_hom(
    const FiniteGroup& dom, const FiniteGroup& cod,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& prescribed) {
  if (dom.order > cod.order) return std::nullopt;
  HomSearch s(dom, cod, /*injective=*/true);
  std::vector<std::uint32_t> trail;
  if (!s.assign(dom.identity, cod.identity, trail)) return std::nullopt;
  for (auto [x, y] : prescribed)
    if (!s.assign(x, y, trail)) return std::nullopt;
  if (!s.close(trail)) return std::nullopt;
  if (!s.solve(trail)) return std::nullopt;
  return s.image;
}

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod,
                     const std::vector<std::uint32_t>& map) {
  if (map.size() != dom.order) return false;
  for (auto y : map)
    if (y >= cod.order) return false;
  if (map[dom.identity] != cod.identity) return false;
  for (std::uint32_t x = 0; x < dom.order; ++x)
    for (std::uint32_t y = 0; y < dom.order; ++y)
      if (map[dom.op(x, y)] != cod.op(map[x], map[y])) return false;
  return true;
}

bool is_injective_map(const std::vector<std::uint32_t>& map) {
  std::set<std::uint32_t> seen(map.begin(), map.end());
  return seen.size() == map.size();
}

Subgroup hom_image(const FiniteGroup& cod, const std::vector<std::uint32_t>& map) {
  (void)cod;
  std::set<std::uint32_t> img(map.begin(), map.end());
  Subgroup s;
  s.elements.assign(img.begin(), img.end());
  return s;
}

FiniteGroup make_trivial() { return make_cyclic(1); }

FiniteGroup make_cyclic(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  std::vector<std::string> names(n);
  for (std::uint32_t x = 0; x < n; ++x) names[x] = x == 0 ? "e" : "t" + std::to_string(x);
  return load_group(t, std::move(names));
}

FiniteGroup make_dihedral(std::uint32_t k) {
  const std::uint32_t n = 2 * k;
  // 0..k-1: r^t ; k..2k-1: r^t s, with s r = r^{-1} s.
  auto idx = [&](bool refl, std::uint32_t t) { return (refl ? k : 0u) + t; };
  std::vector<std::vector<std::uint32_t>> tab(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      bool ra = a >= k, rb = b >= k;
      std::uint32_t ta = ra ? a - k : a, tb = rb ? b - k : b;
      // (r^ta s^ra)(r^tb s^rb): move s^ra past r^tb
      std::uint32_t t = ra ? (ta + k - tb % k) % k : (ta + tb) % k;
      tab[a][b] = idx(ra != rb, t);
    }
  std::vector<std::string> names(n);
  for (std::uint32_t t = 0; t < k; ++t) {
    names[t] = t == 0 ? "e" : "r" + std::to_string(t);
    names[k + t] = t == 0 ? "s" : "r" + std::to_string(t) + "s";
  }
  return load_group(tab, std::move(names));
}

FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::uint32_t n = a.order * b.order;
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  auto idx = [&](std::uint32_t x, std::uint32_t y) { return x * b.order + y; };
  for (std::uint32_t x1 = 0; x1 < a.order; ++x1)
    for (std::uint32_t y1 = 0; y1 < b.order; ++y1)
      for (std::uint32_t x2 = 0; x2 < a.order; ++x2)
        for (std::uint32_t y2 = 0; y2 < b.order; ++y2)
          t[idx(x1, y1)][idx(x2, y2)] = idx(a.op(x1, x2), b.op(y1, y2));
  std::vector<std::string> names(n);
  for (std::uint32_t x = 0; x < a.order; ++x)
    for (std::uint32_t y = 0; y < b.order; ++y)
      names[idx(x, y)] = "(" + a.element_name(x) + "," + b.element_name(y) + ")";
  return load_group(t, std::move(names), kDefaultGroupOrderCap);
}

namespace {

std::vector<std::vector<std::uint32_t>> permutations_lex(std::uint32_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::uint32_t>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

} // namespace

FiniteGroup make_symmetric(std::uint32_t n) {
  if (n == 0 || n > 5) throw GroupError(GroupErrorKind::BadTable, "make_symmetric needs 1..5");
  auto perms = permutations_lex(n);
  std::map<std::vector<std::uint32_t>, std::uint32_t> rank;
  for (std::uint32_t i = 0; i < perms.size(); ++i) rank[perms[i]] = i;
  const std::uint32_t m = static_cast<std::uint32_t>(perms.size());
  std::vector<std::vector<std::uint32_t>> t(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      // composition: (p*q)(x) = p(q(x))
      std::vector<std::uint32_t> c(n);
      for (std::uint32_t x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = rank[c];
    }
  std::vector<std::string> names(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    std::string s = "[";
    for (std::uint32_t x = 0; x < n; ++x) s += std::to_string(perms[i][x] + 1);
    names[i] = s + "]";
  }
  return load_group(t, std::move(names));
}

} // namespace trigroup
