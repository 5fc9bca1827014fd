#include "trigroup/wallpaper.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace trigroup {

bool Isometry::is_identity() const {
  return linear_is_identity() && t.is_zero();
}

bool Isometry::linear_is_identity() const {
  return m00 == QuadRat(1) && m01.is_zero() && m10.is_zero() && m11 == QuadRat(1);
}

bool Isometry::is_orthogonal() const {
  QuadRat one(1);
  if (m00 * m00 + m10 * m10 != one) return false;
  if (m01 * m01 + m11 * m11 != one) return false;
  if (!(m00 * m01 + m10 * m11).is_zero()) return false;
  QuadRat d = det();
  return d == one || d == QuadRat(-1);
}

bool Isometry::operator==(const Isometry& o) const {
  return m00 == o.m00 && m01 == o.m01 && m10 == o.m10 && m11 == o.m11 && t == o.t;
}

bool Isometry::operator<(const Isometry& o) const {
  auto cmp = [](const QuadRat& x, const QuadRat& y) -> int {
    if (x == y) return 0;
    return x < y ? -1 : 1;
  };
  int c;
  if ((c = cmp(m00, o.m00)) != 0) return c < 0;
  if ((c = cmp(m01, o.m01)) != 0) return c < 0;
  if ((c = cmp(m10, o.m10)) != 0) return c < 0;
  if ((c = cmp(m11, o.m11)) != 0) return c < 0;
  if ((c = cmp(t.x, o.t.x)) != 0) return c < 0;
  return cmp(t.y, o.t.y) < 0;
}

Isometry Isometry::reflection_across_line(const Vec2& a, const Vec2& b) {
  Vec2 u = b - a;
  QuadRat uu = dot(u, u);
  QuadRat two(2);
  Isometry m;
  m.m00 = two * u.x * u.x / uu - QuadRat(1);
  m.m01 = two * u.x * u.y / uu;
  m.m10 = m.m01;
  m.m11 = two * u.y * u.y / uu - QuadRat(1);
  Vec2 la{m.m00 * a.x + m.m01 * a.y, m.m10 * a.x + m.m11 * a.y};
  m.t = a - la;
  return m;
}

Isometry compose(const Isometry& f, const Isometry& g) {
  Isometry r;
  r.m00 = f.m00 * g.m00 + f.m01 * g.m10;
  r.m01 = f.m00 * g.m01 + f.m01 * g.m11;
  r.m10 = f.m10 * g.m00 + f.m11 * g.m10;
  r.m11 = f.m10 * g.m01 + f.m11 * g.m11;
  r.t = {f.m00 * g.t.x + f.m01 * g.t.y + f.t.x, f.m10 * g.t.x + f.m11 * g.t.y + f.t.y};
  return r;
}

const Isometry& WallpaperRep::generator(char name) const {
  switch (name) {
    case 'a': return a;
    case 'b': return b;
    case 'c': return c;
  }
  throw std::invalid_argument("generators are named a, b, c");
}

const Isometry& WallpaperRep::reflection_for_label(Label l) const {
  int e = placement.edge_with_label(l);
  // a reflects across edge CA (index 2), b across AB (0), c across BC (1)
  switch (e) {
    case 2: return a;
    case 0: return b;
    case 1: return c;
  }
  throw std::logic_error("bad edge index");
}

namespace {

Isometry power(const Isometry& f, std::uint32_t n) {
  Isometry r = Isometry::identity();
  for (std::uint32_t i = 0; i < n; ++i) r = compose(r, f);
  return r;
}

} // namespace

WallpaperRep canonical_rep(const std::array<std::uint32_t, 3>& triple) {
  std::array<std::uint32_t, 3> s = triple;
  std::sort(s.begin(), s.end());
  bool known = s == std::array<std::uint32_t, 3>{3, 3, 3} ||
               s == std::array<std::uint32_t, 3>{2, 4, 4} ||
               s == std::array<std::uint32_t, 3>{2, 3, 6};
  if (!known)
    throw std::invalid_argument("UnsupportedTriple: (" + std::to_string(triple[0]) + "," +
                                std::to_string(triple[1]) + "," + std::to_string(triple[2]) +
                                ") is not a Euclidean triple");
  WallpaperRep rep;
  rep.triple = s;
  rep.placement = build_triangle({GSAngle{2 * s[0]}, GSAngle{2 * s[1]}, GSAngle{2 * s[2]}});
  const auto& v = rep.placement.vertices;
  rep.a = Isometry::reflection_across_line(v[2], v[0]); // edge CA
  rep.b = Isometry::reflection_across_line(v[0], v[1]); // edge AB
  rep.c = Isometry::reflection_across_line(v[1], v[2]); // edge BC

  for (const Isometry* g : {&rep.a, &rep.b, &rep.c}) {
    if (!g->is_orthogonal() || g->det() != QuadRat(-1))
      throw std::logic_error("generator is not a reflection");
    if (!compose(*g, *g).is_identity()) throw std::logic_error("generator is not an involution");
  }
  // vertex A = a n b carries pi/k, C = a n c carries pi/l, B = b n c
  // carries pi/m
  if (!power(compose(rep.a, rep.b), s[0]).is_identity())
    throw std::logic_error("(ab)^k != id");
  if (!power(compose(rep.a, rep.c), s[1]).is_identity())
    throw std::logic_error("(ac)^l != id");
  if (!power(compose(rep.b, rep.c), s[2]).is_identity())
    throw std::logic_error("(bc)^m != id");
  return rep;
}

Isometry evaluate(const WallpaperRep& rep, const std::string& word) {
  Isometry r = Isometry::identity();
  for (char ch : word) r = compose(r, rep.generator(ch));
  return r;
}

Isometry evaluate_typed(const WallpaperRep& rep, const std::vector<Label>& types) {
  Isometry r = Isometry::identity();
  for (Label l : types) r = compose(r, rep.reflection_for_label(l));
  return r;
}

LatticeReport translation_lattice(const WallpaperRep& rep, std::uint32_t max_len) {
  LatticeReport out;
  std::set<Isometry> seen;
  std::vector<Isometry> frontier{Isometry::identity()};
  seen.insert(Isometry::identity());
  const Isometry* gens[3] = {&rep.a, &rep.b, &rep.c};
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    std::vector<Isometry> next;
    for (const auto& f : frontier)
      for (const Isometry* g : gens) {
        Isometry h = compose(f, *g);
        if (seen.insert(h).second) {
          next.push_back(h);
          if (h.linear_is_identity() && !h.t.is_zero()) out.translations.push_back(h.t);
        }
      }
    frontier = std::move(next);
  }
  // exact rank of the collected vectors
  const Vec2* first = nullptr;
  for (const auto& v : out.translations) {
    if (!first) {
      first = &v;
      continue;
    }
    if (!cross(*first, v).is_zero()) {
      out.rank = 2;
      out.basis = std::make_pair(*first, v);
      return out;
    }
  }
  out.rank = first ? 1 : 0;
  return out;
}

std::vector<Isometry> vertex_stabilizer(const WallpaperRep& rep, const Vec2& vertex) {
  std::vector<Isometry> gens;
  for (const Isometry* g : {&rep.a, &rep.b, &rep.c})
    if (g->apply(vertex) == vertex) gens.push_back(*g);
  std::set<Isometry> closure;
  closure.insert(Isometry::identity());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Isometry> cur(closure.begin(), closure.end());
    for (const auto& f : cur)
      for (const auto& g : gens)
        if (closure.insert(compose(f, g)).second) grew = true;
  }
  return std::vector<Isometry>(closure.begin(), closure.end());
}

bool IntersectionReport::all_ok() const {
  for (const auto& e : entries)
    if (!e.ok) return false;
  return true;
}

IntersectionReport intersection_check(const WallpaperRep& rep) {
  IntersectionReport out;
  const auto& v = rep.placement.vertices;
  std::array<std::vector<Isometry>, 3> stabs;
  for (int i = 0; i < 3; ++i) stabs[i] = vertex_stabilizer(rep, v[i]);

  auto intersect = [](const std::vector<Isometry>& x, const std::vector<Isometry>& y) {
    std::set<Isometry> sx(x.begin(), x.end());
    std::vector<Isometry> out_;
    for (const auto& g : y)
      if (sx.count(g)) out_.push_back(g);
    std::sort(out_.begin(), out_.end());
    return out_;
  };

  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      // shared edge reflection: the generator fixing both vertices
      const Isometry* shared = nullptr;
      for (const Isometry* g : {&rep.a, &rep.b, &rep.c})
        if (g->apply(v[i]) == v[i] && g->apply(v[j]) == v[j]) shared = g;
      IntersectionCheckEntry e;
      e.description = "stab(v" + std::to_string(i) + ") n stab(v" + std::to_string(j) +
                      ") = <shared edge reflection>";
      if (!shared) {
        e.ok = false;
      } else {
        std::vector<Isometry> expect{Isometry::identity(), *shared};
        std::sort(expect.begin(), expect.end());
        e.ok = intersect(stabs[i], stabs[j]) == expect;
      }
      out.entries.push_back(e);
    }
  IntersectionCheckEntry e;
  e.description = "stab(v0) n stab(v1) n stab(v2) = {id}";
  auto triple_meet = intersect(intersect(stabs[0], stabs[1]), stabs[2]);
  e.ok = triple_meet.size() == 1 && triple_meet[0].is_identity();
  out.entries.push_back(e);
  return out;
}

} // namespace trigroup
