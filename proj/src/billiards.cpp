#include "trigroup/billiards.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace trigroup {

namespace {

Rat rat_from_double(double v) {
  // doubles are dyadic rationals; decompose into mantissa * 2^exp
  int exp = 0;
  double mant = std::frexp(v, &exp);
  std::int64_t m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rat r(m);
  if (exp >= 0) {
    r *= Rat(BigInt(1) << exp);
  } else {
    r /= Rat(BigInt(1) << -exp);
  }
  return r;
}

} // namespace

int TrianglePlacement::edge_with_label(Label a) const {
  for (int e = 0; e < 3; ++e)
    if (edge_labels[e] == a) return e;
  throw std::invalid_argument("no edge labelled " + std::to_string(a));
}

bool TrianglePlacement::strictly_inside(const Vec2& p) const {
  for (int e = 0; e < 3; ++e)
    if (cross(edge_vector(e), p - edge_start(e)).sign() <= 0) return false;
  return true;
}

bool TrianglePlacement::inside_or_boundary(const Vec2& p) const {
  for (int e = 0; e < 3; ++e)
    if (cross(edge_vector(e), p - edge_start(e)).sign() < 0) return false;
  return true;
}

std::array<std::uint32_t, 3> TrianglePlacement::sorted_triple() const {
  std::array<std::uint32_t, 3> t{vertex_angles[0].m_hat / 2, vertex_angles[1].m_hat / 2,
                                 vertex_angles[2].m_hat / 2};
  std::sort(t.begin(), t.end());
  return t;
}

namespace {

// Exact check that the angle at vertex k equals pi/k_value, via the
// tangent: cross/dot of the two edge vectors.
void check_vertex_angle(const TrianglePlacement& t, int v, std::uint32_t k_value) {
  Vec2 u = t.vertices[(v + 1) % 3] - t.vertices[v];
  Vec2 w = t.vertices[(v + 2) % 3] - t.vertices[v];
  QuadRat c = cross(u, w);
  if (c.sign() < 0) c = -c;
  QuadRat d = dot(u, w);
  bool ok = false;
  switch (k_value) {
    case 2: ok = d.is_zero(); break;                                 // tan = inf
    case 3: ok = d.sign() > 0 && c * c == d * d * QuadRat(3); break; // tan = sqrt3
    case 4: ok = d.sign() > 0 && c == d; break;                      // tan = 1
    case 6: ok = d.sign() > 0 && c * c * QuadRat(3) == d * d; break; // tan = 1/sqrt3
    default: ok = false;
  }
  if (!ok) throw std::logic_error("placement angle check failed");
}

} // namespace

TrianglePlacement build_triangle(const std::array<GSAngle, 3>& pair_angles) {
  const std::array<SubsetKey, 3> pairs{subset_of({1, 2}), subset_of({1, 3}), subset_of({2, 3})};
  std::array<std::uint32_t, 3> k{};
  for (int i = 0; i < 3; ++i) {
    if (pair_angles[i].is_zero())
      throw std::invalid_argument("DegenerateAngle: angle for pair " +
                                  subset_string(pairs[i]) + " is zero");
    if (pair_angles[i].m_hat % 2 != 0)
      throw std::invalid_argument("odd kernel length; diagram not validated");
    k[i] = pair_angles[i].m_hat / 2;
  }
  {
    Rat sum = Rat(1, k[0]) + Rat(1, k[1]) + Rat(1, k[2]);
    if (sum != 1)
      throw std::invalid_argument("NotEuclidean: angle sum differs from pi");
  }

  std::array<std::uint32_t, 3> sorted = {k[0], k[1], k[2]};
  std::sort(sorted.begin(), sorted.end());

  const QuadRat half(1, 2);
  std::array<Vec2, 3> verts;           // slots A, B, C (counterclockwise)
  std::array<std::uint32_t, 3> slot_k; // required k per slot
  if (sorted == std::array<std::uint32_t, 3>{3, 3, 3}) {
    verts = {Vec2{QuadRat(0), QuadRat(0)}, Vec2{QuadRat(1), QuadRat(0)},
             Vec2{half, QuadRat(Rat(0), Rat(1, 2))}};
    slot_k = {3, 3, 3};
  } else if (sorted == std::array<std::uint32_t, 3>{2, 4, 4}) {
    verts = {Vec2{QuadRat(0), QuadRat(0)}, Vec2{QuadRat(1), QuadRat(0)},
             Vec2{QuadRat(0), QuadRat(1)}};
    slot_k = {2, 4, 4};
  } else if (sorted == std::array<std::uint32_t, 3>{2, 3, 6}) {
    verts = {Vec2{QuadRat(0), QuadRat(0)}, Vec2{QuadRat(1), QuadRat(0)},
             Vec2{QuadRat(0), QuadRat(Rat(0), Rat(1, 3))}};
    slot_k = {2, 6, 3};
  } else {
    throw std::logic_error("Euclidean triple is not one of the three canonical ones");
  }

  // Assign each pair to a slot of matching k; ties in pair order.
  TrianglePlacement t;
  t.vertices = verts;
  std::array<bool, 3> used{false, false, false};
  for (int p = 0; p < 3; ++p) {
    bool placed = false;
    for (int s = 0; s < 3 && !placed; ++s) {
      if (used[s] || slot_k[s] != k[p]) continue;
      used[s] = true;
      t.vertex_labels[s] = pairs[p];
      t.vertex_angles[s] = pair_angles[p];
      placed = true;
    }
    if (!placed) throw std::logic_error("slot assignment failed");
  }
  for (int e = 0; e < 3; ++e) {
    SubsetKey inter = t.vertex_labels[e] & t.vertex_labels[(e + 1) % 3];
    auto ls = labels_of(inter);
    if (ls.size() != 1) throw std::logic_error("edge label is not a singleton");
    t.edge_labels[e] = ls[0];
  }
  for (int v = 0; v < 3; ++v) check_vertex_angle(t, v, t.vertex_angles[v].m_hat / 2);
  return t;
}

Vec2 reflect_direction(const Vec2& dir, const Vec2& a, const Vec2& b) {
  return reflect_across_direction(dir, b - a);
}

namespace {

struct Exit {
  Vec2 point;
  int edge;
  QuadRat t;
};

// Boundary exit of the ray p + t*dir, t > 0 strictly. The triangle's
// edge lines never cross its interior, so the minimal positive line hit
// is the exit.
Exit exact_exit(const TrianglePlacement& tri, const Vec2& p, const Vec2& dir) {
  bool have = false;
  Exit best{};
  for (int e = 0; e < 3; ++e) {
    Vec2 n = tri.inward_normal(e);
    QuadRat denom = dot(n, dir);
    if (denom.is_zero()) continue;
    QuadRat tt = (dot(n, tri.edge_start(e)) - dot(n, p)) / denom;
    if (tt.sign() <= 0) continue;
    if (!have || tt < best.t) {
      best.t = tt;
      best.edge = e;
      best.point = p + dir * tt;
      have = true;
    }
  }
  if (!have) throw std::logic_error("ray does not leave the triangle");
  return best;
}

bool is_vertex(const TrianglePlacement& tri, const Vec2& p) {
  return p == tri.vertices[0] || p == tri.vertices[1] || p == tri.vertices[2];
}

struct SimulationTrace {
  std::vector<Vec2> reflection_points;
  std::vector<int> edges;
  std::vector<Vec2> directions; // d_0 .. d_count (after each reflection)
};

// `count` exact reflections starting at p (interior, or on an edge
// moving strictly inward) with direction dir. Throws PocketHit.
SimulationTrace simulate_reflections(const TrianglePlacement& tri, Vec2 p, Vec2 dir,
                                     std::uint32_t count) {
  if (dir.is_zero()) throw ZeroDirection("ZeroDirection: direction must be nonzero");
  SimulationTrace tr;
  tr.directions.push_back(dir);
  for (std::uint32_t r = 0; r < count; ++r) {
    Exit ex = exact_exit(tri, p, dir);
    if (is_vertex(tri, ex.point))
      throw PocketHit(r, "PocketHit: trajectory reaches a vertex at reflection " +
                             std::to_string(r));
    tr.reflection_points.push_back(ex.point);
    tr.edges.push_back(ex.edge);
    dir = reflect_direction(dir, tri.edge_start(ex.edge), tri.edge_end(ex.edge));
    tr.directions.push_back(dir);
    p = ex.point;
  }
  return tr;
}

} // namespace

BilliardSequence shoot(const TrianglePlacement& t, const Vec2& start, const Vec2& dir,
                       std::uint32_t max_reflections, ArithmeticMode mode) {
  if (mode == ArithmeticMode::Float) {
    // Double-precision lane, kept for robustness experiments: same
    // stepping, tolerance-based vertex margin.
    auto dx = [&](const QuadRat& q) { return q.to_double(); };
    double px = dx(start.x), py = dx(start.y), vx = dx(dir.x), vy = dx(dir.y);
    if (vx == 0 && vy == 0) throw ZeroDirection("ZeroDirection");
    double ex0[3], ey0[3], ex1[3], ey1[3];
    double min_edge = 0;
    for (int e = 0; e < 3; ++e) {
      ex0[e] = dx(t.edge_start(e).x);
      ey0[e] = dx(t.edge_start(e).y);
      ex1[e] = dx(t.edge_end(e).x);
      ey1[e] = dx(t.edge_end(e).y);
      double len = std::hypot(ex1[e] - ex0[e], ey1[e] - ey0[e]);
      min_edge = e == 0 ? len : std::min(min_edge, len);
    }
    const double margin = 1e-6 * min_edge;
    BilliardSequence seq;
    seq.points.push_back(start);
    int avoid = -1;
    for (std::uint32_t r = 0;; ++r) {
      int best_e = -1;
      double best_t = 0;
      for (int e = 0; e < 3; ++e) {
        if (e == avoid) continue;
        double nx = -(ey1[e] - ey0[e]), ny = ex1[e] - ex0[e];
        double denom = nx * vx + ny * vy;
        if (denom == 0) continue;
        double tt = (nx * (ex0[e] - px) + ny * (ey0[e] - py)) / denom;
        if (tt <= 0) continue;
        if (best_e < 0 || tt < best_t) {
          best_e = e;
          best_t = tt;
        }
      }
      if (best_e < 0) throw std::logic_error("float ray does not leave the triangle");
      double qx = px + vx * best_t, qy = py + vy * best_t;
      for (int v = 0; v < 3; ++v) {
        double vxav = dx(t.vertices[v].x), vyav = dx(t.vertices[v].y);
        if (std::hypot(qx - vxav, qy - vyav) < margin)
          throw PocketHit(r, "PocketHit (float margin)");
      }
      if (r == max_reflections) {
        if (max_reflections == 0) {
          seq.points.push_back({QuadRat(rat_from_double(qx)), QuadRat(rat_from_double(qy))});
        } else {
          seq.points.push_back({QuadRat(rat_from_double((px + qx) / 2)),
                                QuadRat(rat_from_double((py + qy) / 2))});
        }
        seq.directions.push_back({QuadRat(rat_from_double(vx)), QuadRat(rat_from_double(vy))});
        return seq;
      }
      seq.points.push_back({QuadRat(rat_from_double(qx)), QuadRat(rat_from_double(qy))});
      seq.directions.push_back({QuadRat(rat_from_double(vx)), QuadRat(rat_from_double(vy))});
      seq.labels.push_back(t.edge_labels[best_e]);
      double tx = ex1[best_e] - ex0[best_e], ty = ey1[best_e] - ey0[best_e];
      double scale = 2 * (vx * tx + vy * ty) / (tx * tx + ty * ty);
      double nvx = scale * tx - vx, nvy = scale * ty - vy;
      vx = nvx;
      vy = nvy;
      px = qx;
      py = qy;
      avoid = best_e;
    }
  }

  if (dir.is_zero()) throw ZeroDirection("ZeroDirection: direction must be nonzero");
  BilliardSequence seq;
  seq.points.push_back(start);
  Vec2 p = start;
  Vec2 d = dir;
  for (std::uint32_t r = 0;; ++r) {
    Exit ex = exact_exit(t, p, d);
    if (is_vertex(t, ex.point))
      throw PocketHit(r, "PocketHit: trajectory reaches a vertex at reflection " +
                             std::to_string(r));
    if (r == max_reflections) {
      if (max_reflections == 0)
        seq.points.push_back(ex.point);
      else
        seq.points.push_back((p + ex.point) * QuadRat(1, 2));
      seq.directions.push_back(d);
      return seq;
    }
    seq.points.push_back(ex.point);
    seq.directions.push_back(d);
    seq.labels.push_back(t.edge_labels[ex.edge]);
    d = reflect_direction(d, t.edge_start(ex.edge), t.edge_end(ex.edge));
    p = ex.point;
  }
}

bool resimulates(const TrianglePlacement& t, const BilliardSequence& b, ArithmeticMode mode) {
  if (b.points.size() < 2 || b.directions.empty()) return false;
  BilliardSequence again;
  try {
    again = shoot(t, b.points.front(), b.directions.front(),
                  static_cast<std::uint32_t>(b.reflections()), mode);
  } catch (const PocketHit&) {
    return false;
  }
  if (again.points.size() != b.points.size() || again.labels != b.labels) return false;
  if (mode == ArithmeticMode::Exact) {
    for (std::size_t i = 0; i + 1 < b.points.size(); ++i)
      if (again.points[i] != b.points[i]) return false;
    // The recorded final point must lie on the final outgoing segment;
    // the simulated stop point is the canonical half-way point.
    if (b.reflections() == 0) return again.points.back() == b.points.back();
    const Vec2& last_refl = b.points[b.points.size() - 2];
    Vec2 out = b.points.back() - last_refl;
    const Vec2& dlast = again.directions.back();
    if (!cross(out, dlast).is_zero() || dot(out, dlast).sign() < 0) return false;
    return t.strictly_inside(b.points.back());
  }
  for (std::size_t i = 0; i + 1 < b.points.size(); ++i) {
    if (std::abs(again.points[i].x.to_double() - b.points[i].x.to_double()) > kFloatTolerance)
      return false;
    if (std::abs(again.points[i].y.to_double() - b.points[i].y.to_double()) > kFloatTolerance)
      return false;
  }
  return true;
}

bool reflection_law_holds(const TrianglePlacement& t, const BilliardSequence& b) {
  for (std::size_t i = 0; i < b.reflections(); ++i) {
    int e = t.edge_with_label(b.labels[i]);
    Vec2 tangent = t.edge_vector(e);
    Vec2 normal = t.inward_normal(e);
    const Vec2& in = b.directions[i];
    const Vec2& out = b.directions[i + 1];
    if (dot(in, tangent) != dot(out, tangent)) return false;
    if (dot(in, normal) != -(dot(out, normal))) return false;
  }
  return true;
}

BilliardSequence reversed(const BilliardSequence& b) {
  BilliardSequence r;
  r.points.assign(b.points.rbegin(), b.points.rend());
  r.labels.assign(b.labels.rbegin(), b.labels.rend());
  for (auto it = b.directions.rbegin(); it != b.directions.rend(); ++it)
    r.directions.push_back(Vec2{QuadRat(0), QuadRat(0)} - *it);
  return r;
}

namespace {

std::vector<std::uint32_t> base_image_in_vertex_group(const TriangleDiagram& d, Label a) {
  return d.d.hom(0, subset_of({a}));
}

bool letter_outside_base(const TriangleDiagram& d, const TypedLetter& l) {
  if (l.type < 1 || l.type > 3) return false;
  const FiniteGroup& g = d.d.group(subset_of({l.type}));
  if (l.elem >= g.order) return false;
  for (auto img : base_image_in_vertex_group(d, l.type))
    if (img == l.elem) return false;
  return true;
}

} // namespace

bool adapted(const TriangleDiagram& d, const TypedWord& w, const BilliardSequence& b) {
  if (w.size() != b.reflections()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].type != b.labels[i]) return false;
    if (!letter_outside_base(d, w[i])) return false;
  }
  return true;
}

namespace {

struct AffineMap {
  QuadRat m00{1}, m01{0}, m10{0}, m11{1};
  Vec2 c{QuadRat(0), QuadRat(0)};

  Vec2 apply(const Vec2& p) const {
    return {m00 * p.x + m01 * p.y + c.x, m10 * p.x + m11 * p.y + c.y};
  }
  Vec2 apply_linear(const Vec2& v) const {
    return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
  }
  bool linear_is_identity() const {
    return m00 == QuadRat(1) && m01.is_zero() && m10.is_zero() && m11 == QuadRat(1);
  }
  QuadRat det() const { return m00 * m11 - m01 * m10; }

  static AffineMap reflection_across(const Vec2& a, const Vec2& b) {
    Vec2 u = b - a;
    QuadRat uu = dot(u, u);
    AffineMap m;
    QuadRat two(2);
    m.m00 = two * u.x * u.x / uu - QuadRat(1);
    m.m01 = two * u.x * u.y / uu;
    m.m10 = two * u.x * u.y / uu;
    m.m11 = two * u.y * u.y / uu - QuadRat(1);
    Vec2 ma = m.apply_linear(a);
    m.c = a - ma;
    return m;
  }

  // this after o: x -> this(o(x))
  AffineMap after(const AffineMap& o) const {
    AffineMap r;
    r.m00 = m00 * o.m00 + m01 * o.m10;
    r.m01 = m00 * o.m01 + m01 * o.m11;
    r.m10 = m10 * o.m00 + m11 * o.m10;
    r.m11 = m10 * o.m01 + m11 * o.m11;
    r.c = apply(o.c);
    return r;
  }
};

struct Unfolding {
  std::vector<std::pair<Vec2, Vec2>> windows; // one per letter
  std::array<Vec2, 3> final_verts;
  AffineMap total; // maps the base copy onto the final copy
};

Unfolding unfold(const TrianglePlacement& t, const std::vector<Label>& types) {
  Unfolding u;
  std::array<Vec2, 3> cur = t.vertices;
  u.total = AffineMap{};
  for (Label a : types) {
    int e = t.edge_with_label(a);
    Vec2 w0 = cur[e], w1 = cur[(e + 1) % 3];
    u.windows.emplace_back(w0, w1);
    AffineMap refl = AffineMap::reflection_across(w0, w1);
    for (auto& v : cur) v = refl.apply(v);
    u.total = refl.after(u.total);
  }
  u.final_verts = cur;
  return u;
}

// Strict crossing of the open window by the open chord segment, with the
// crossing parameter along the chord returned.
std::optional<QuadRat> chord_crossing(const Vec2& p, const Vec2& q, const Vec2& a,
                                      const Vec2& b) {
  Vec2 r = q - p, s = b - a, w = a - p;
  QuadRat denom = cross(r, s);
  if (denom.is_zero()) return std::nullopt;
  QuadRat tt = cross(w, s) / denom;
  QuadRat uu = cross(w, r) / denom;
  if (tt.sign() <= 0 || (tt - QuadRat(1)).sign() >= 0) return std::nullopt;
  if (uu.sign() <= 0 || (uu - QuadRat(1)).sign() >= 0) return std::nullopt;
  return tt;
}

bool chord_feasible(const Unfolding& u, const Vec2& p, const Vec2& q) {
  QuadRat prev(-1);
  for (const auto& [a, b] : u.windows) {
    auto tt = chord_crossing(p, q, a, b);
    if (!tt) return false;
    if ((*tt - prev).sign() <= 0) return false;
    prev = *tt;
  }
  return true;
}

std::vector<Vec2> grid_points(const std::array<Vec2, 3>& verts) {
  std::vector<Vec2> pts;
  for (std::uint32_t n : {3u, 4u, 5u, 7u, 9u}) {
    for (std::uint32_t i = 1; i + 2 <= n; ++i)
      for (std::uint32_t j = 1; i + j + 1 <= n; ++j) {
        std::uint32_t k = n - i - j;
        QuadRat wi(Rat(i, n)), wj(Rat(j, n)), wk(Rat(k, n));
        pts.push_back(verts[0] * wi + verts[1] * wj + verts[2] * wk);
      }
  }
  return pts;
}

void check_word_preconditions(const TriangleDiagram& d, const TypedWord& w) {
  for (const auto& l : w)
    if (!letter_outside_base(d, l))
      throw LetterInBaseImage("PreconditionLetterInBase: letter " + std::to_string(l.type) +
                              ":" + std::to_string(l.elem) +
                              " lies in the image of the base group (or is out of range)");
}

std::vector<Label> types_of(const TypedWord& w) {
  std::vector<Label> t;
  t.reserve(w.size());
  for (const auto& l : w) t.push_back(l.type);
  return t;
}

std::optional<Certificate> validate_chord(const TriangleDiagram& d,
                                          const TrianglePlacement& t, const TypedWord& w,
                                          const Vec2& y0, const Vec2& dir) {
  BilliardSequence seq;
  try {
    seq = shoot(t, y0, dir, static_cast<std::uint32_t>(w.size()));
  } catch (const PocketHit&) {
    return std::nullopt;
  }
  if (!adapted(d, w, seq)) return std::nullopt;
  if (!resimulates(t, seq)) return std::nullopt;
  Certificate c;
  c.word = w;
  c.sequence = std::move(seq);
  c.mode = ArithmeticMode::Exact;
  c.conclusion = Conclusion::Nontrivial;
  return c;
}

} // namespace

TrianglePlacement placement_for(const TriangleDiagram& d) {
  return build_triangle(triangle_angles(d));
}

std::optional<Certificate> certify_nontrivial(const TriangleDiagram& d, const TypedWord& w) {
  if (w.empty()) return std::nullopt; // m >= 2 unattainable
  check_word_preconditions(d, w);
  TrianglePlacement t = placement_for(d);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].type == w[i + 1].type) return std::nullopt; // same edge twice in a row
  Unfolding u = unfold(t, types_of(w));
  std::vector<Vec2> starts = grid_points(t.vertices);
  std::vector<Vec2> ends = grid_points(u.final_verts);
  for (const Vec2& y0 : starts) {
    for (const Vec2& q : ends) {
      if (!chord_feasible(u, y0, q)) continue;
      auto cert = validate_chord(d, t, w, y0, q - y0);
      if (cert) return cert;
    }
  }
  return std::nullopt;
}

namespace {

std::optional<Certificate> validate_periodic(const TriangleDiagram& d,
                                             const TrianglePlacement& t, const TypedWord& w,
                                             const Vec2& y0, const Vec2& dir) {
  const std::uint32_t L = static_cast<std::uint32_t>(w.size());
  SimulationTrace tr;
  try {
    tr = simulate_reflections(t, y0, dir, 3 * L);
  } catch (const PocketHit&) {
    return std::nullopt;
  } catch (const ZeroDirection&) {
    return std::nullopt;
  }
  // three exact periods: labels, reflection points, and directions repeat
  for (std::uint32_t i = 0; i < 3 * L; ++i)
    if (t.edge_labels[tr.edges[i]] != w[i % L].type) return std::nullopt;
  for (std::uint32_t i = 0; i + L < 3 * L; ++i)
    if (tr.reflection_points[i] != tr.reflection_points[i + L]) return std::nullopt;
  if (tr.directions[L] != tr.directions[0]) return std::nullopt;

  Certificate c;
  c.word = w;
  c.mode = ArithmeticMode::Exact;
  c.conclusion = Conclusion::InfiniteOrder;
  c.period = L;
  c.sequence.points.push_back(y0);
  for (std::uint32_t i = 0; i < L; ++i) {
    c.sequence.points.push_back(tr.reflection_points[i]);
    c.sequence.labels.push_back(t.edge_labels[tr.edges[i]]);
    c.sequence.directions.push_back(tr.directions[i]);
  }
  c.sequence.points.push_back(y0);
  c.sequence.directions.push_back(tr.directions[L]);
  if (!adapted(d, w, c.sequence)) return std::nullopt;
  return c;
}

} // namespace

std::optional<Certificate> certify_infinite_order(const TriangleDiagram& d,
                                                  const TypedWord& w) {
  if (w.empty()) return std::nullopt;
  check_word_preconditions(d, w);
  TrianglePlacement t = placement_for(d);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].type == w[i + 1].type) return std::nullopt;
  if (w.back().type == w.front().type && w.size() > 1) {
    // the closing segment would reflect twice in a row on one edge
    return std::nullopt;
  }
  Unfolding u = unfold(t, types_of(w));
  const AffineMap& F = u.total;

  if (F.linear_is_identity()) {
    if (F.c.is_zero()) return std::nullopt;
    for (const Vec2& y0 : grid_points(t.vertices)) {
      if (!chord_feasible(u, y0, y0 + F.c)) continue;
      auto cert = validate_periodic(d, t, w, y0, F.c);
      if (cert) return cert;
    }
    return std::nullopt;
  }
  if (F.det() == QuadRat(1)) return std::nullopt; // nontrivial rotation fixes no direction

  // Glide reflection: y0 must lie on the axis. Axis direction u0 spans
  // the fixed space of the linear part; the axis line is
  // dot(p, n) = dot(c, n)/2 with n perpendicular to u0.
  Vec2 u0{F.m01, QuadRat(1) - F.m00};
  if (u0.is_zero()) u0 = Vec2{QuadRat(1) - F.m11, F.m10};
  if (u0.is_zero()) return std::nullopt;
  Vec2 n = perp(u0);
  QuadRat rhs = dot(F.c, n) / QuadRat(2);
  // base point: p0 = n * (rhs / (n.n))
  Vec2 p0 = n * (rhs / dot(n, n));
  Vec2 glide = F.apply(p0) - p0;
  if (glide.is_zero()) return std::nullopt;

  // Intersect the axis p0 + s*u0 with the open triangle: three linear
  // constraints on s.
  bool empty = false;
  bool has_lo = false, has_hi = false;
  QuadRat lo, hi;
  for (int e = 0; e < 3 && !empty; ++e) {
    Vec2 ne = t.inward_normal(e);
    QuadRat a = dot(ne, u0);
    QuadRat b = dot(ne, t.edge_start(e)) - dot(ne, p0);
    // need a*s > b  (strict interior)
    if (a.is_zero()) {
      if (b.sign() >= 0) empty = true;
      continue;
    }
    QuadRat bound = b / a;
    if (a.sign() > 0) {
      if (!has_lo || bound > lo) lo = bound;
      has_lo = true;
    } else {
      if (!has_hi || bound < hi) hi = bound;
      has_hi = true;
    }
  }
  if (empty || !has_lo || !has_hi || !(lo < hi)) return std::nullopt;
  for (std::uint32_t den : {2u, 4u, 8u, 16u, 32u}) {
    for (std::uint32_t num = 1; num < den; num += 2) {
      QuadRat s = lo + (hi - lo) * QuadRat(Rat(num, den));
      Vec2 y0 = p0 + u0 * s;
      if (!t.strictly_inside(y0)) continue;
      if (!chord_feasible(u, y0, F.apply(y0))) continue;
      auto cert = validate_periodic(d, t, w, y0, glide);
      if (cert) return cert;
    }
  }
  return std::nullopt;
}

std::optional<Certificate> certify_power(const TriangleDiagram& d, const Certificate& periodic,
                                         std::uint32_t n) {
  if (n == 0 || periodic.conclusion != Conclusion::InfiniteOrder || !periodic.period)
    return std::nullopt;
  TrianglePlacement t = placement_for(d);
  const std::uint32_t L = *periodic.period;
  TypedWord wn;
  for (std::uint32_t i = 0; i < n; ++i)
    wn.insert(wn.end(), periodic.word.begin(), periodic.word.end());
  const Vec2& y0 = periodic.sequence.points.front();
  const Vec2& dir = periodic.sequence.directions.front();
  SimulationTrace tr;
  try {
    tr = simulate_reflections(t, y0, dir, n * L);
  } catch (const PocketHit&) {
    return std::nullopt;
  }
  Certificate c;
  c.word = wn;
  c.mode = ArithmeticMode::Exact;
  c.conclusion = Conclusion::Nontrivial;
  c.period = L;
  c.sequence.points.push_back(y0);
  for (std::uint32_t i = 0; i < n * L; ++i) {
    if (t.edge_labels[tr.edges[i]] != wn[i].type) return std::nullopt;
    c.sequence.points.push_back(tr.reflection_points[i]);
    c.sequence.labels.push_back(t.edge_labels[tr.edges[i]]);
    c.sequence.directions.push_back(tr.directions[i]);
  }
  c.sequence.points.push_back(y0);
  c.sequence.directions.push_back(tr.directions[n * L]);
  if (tr.directions[n * L] != dir) return std::nullopt;
  if (!adapted(d, wn, c.sequence)) return std::nullopt;
  return c;
}

namespace {

struct CachedShot {
  std::vector<Vec2> points;
  std::vector<int> edges; // geometric edge indices of the reflections
  std::vector<Vec2> directions;
};

std::map<std::pair<std::array<std::uint32_t, 3>, int>, CachedShot>& shot_cache() {
  static std::map<std::pair<std::array<std::uint32_t, 3>, int>, CachedShot> cache;
  return cache;
}
std::mutex& shot_cache_mutex() {
  static std::mutex m;
  return m;
}

CachedShot find_closed_orthogonal_shot(const TrianglePlacement& t, int edge) {
  const std::uint32_t kFeet = 1024;
  const std::uint32_t kMaxReflections = 96;
  Vec2 e0 = t.edge_start(edge), e1 = t.edge_end(edge);
  Vec2 inward = t.inward_normal(edge);
  for (std::uint32_t i = 1; i < kFeet; ++i) {
    Vec2 foot = e0 + (e1 - e0) * QuadRat(Rat(i, kFeet));
    // walk until some reflection is hit orthogonally
    Vec2 p = foot, dir = inward;
    std::vector<Vec2> refl;
    std::vector<int> edges;
    bool ok = false;
    try {
      for (std::uint32_t r = 0; r < kMaxReflections; ++r) {
        Exit ex = exact_exit(t, p, dir);
        if (is_vertex(t, ex.point)) break;
        refl.push_back(ex.point);
        edges.push_back(ex.edge);
        if (dot(dir, t.edge_vector(ex.edge)).is_zero()) {
          // perpendicular hit: the path retraces itself
          ok = refl.size() >= 2;
          break;
        }
        dir = reflect_direction(dir, t.edge_start(ex.edge), t.edge_end(ex.edge));
        p = ex.point;
      }
    } catch (const std::logic_error&) {
      continue;
    }
    if (!ok) continue;

    // palindromic closed sequence: y0, r_1..r_{j-1}, p_j, r_{j-1}..r_1, y0
    const std::size_t j = refl.size();
    Vec2 y0 = (foot + refl[0]) * QuadRat(1, 2);
    CachedShot shot;
    try {
      SimulationTrace tr = simulate_reflections(t, y0, inward,
                                                static_cast<std::uint32_t>(2 * j - 1));
      shot.points.push_back(y0);
      for (std::size_t r = 0; r < tr.reflection_points.size(); ++r) {
        shot.points.push_back(tr.reflection_points[r]);
        shot.edges.push_back(tr.edges[r]);
      }
      shot.points.push_back(y0);
      shot.directions = tr.directions;
    } catch (const PocketHit&) {
      continue;
    }
    // must close up: the final point is the start, with reversed direction
    if (shot.points.back() != y0) continue;
    if (shot.directions.back() != Vec2{QuadRat(0), QuadRat(0)} - inward) continue;
    // palindrome check on the reflection pattern
    bool palindrome = true;
    for (std::size_t r = 0; r < shot.edges.size(); ++r)
      palindrome = palindrome && shot.edges[r] == shot.edges[shot.edges.size() - 1 - r];
    if (!palindrome) continue;
    return shot;
  }
  throw SearchExhausted("SearchExhausted: no closed orthogonal shot found for edge index " +
                        std::to_string(edge));
}

} // namespace

BilliardSequence closed_orthogonal_shot(const TrianglePlacement& t, Label a) {
  int edge = t.edge_with_label(a);
  auto key = std::make_pair(t.sorted_triple(), edge);
  CachedShot shot;
  {
    std::lock_guard<std::mutex> lock(shot_cache_mutex());
    auto it = shot_cache().find(key);
    if (it != shot_cache().end()) {
      shot = it->second;
    } else {
      shot = find_closed_orthogonal_shot(t, edge);
      shot_cache().emplace(key, shot);
    }
  }
  BilliardSequence seq;
  seq.points = shot.points;
  seq.directions = shot.directions;
  for (int e : shot.edges) seq.labels.push_back(t.edge_labels[e]);
  return seq;
}

std::string sequence_to_svg(const TrianglePlacement& t, const BilliardSequence& b) {
  const double scale = 400.0;
  double minx = 0, miny = 0, maxx = 0, maxy = 0;
  bool first = true;
  auto track = [&](const Vec2& p) {
    double x = p.x.to_double(), y = p.y.to_double();
    if (first) {
      minx = maxx = x;
      miny = maxy = y;
      first = false;
    } else {
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  };
  for (const auto& v : t.vertices) track(v);
  for (const auto& p : b.points) track(p);
  const double pad = 0.05 * std::max(maxx - minx, maxy - miny);
  auto sx = [&](double x) { return (x - minx + pad) * scale; };
  auto sy = [&](double y) { return (maxy - y + pad) * scale; }; // y up
  char buf[160];
  std::ostringstream os;
  double w = (maxx - minx + 2 * pad) * scale, h = (maxy - miny + 2 * pad) * scale;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.1f\" height=\"%.1f\" "
                "viewBox=\"0 0 %.1f %.1f\">\n",
                w, h, w, h);
  os << buf;
  os << "<polygon points=\"";
  for (const auto& v : t.vertices) {
    std::snprintf(buf, sizeof buf, "%.4f,%.4f ", sx(v.x.to_double()), sy(v.y.to_double()));
    os << buf;
  }
  os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "<polyline points=\"";
  for (const auto& p : b.points) {
    std::snprintf(buf, sizeof buf, "%.4f,%.4f ", sx(p.x.to_double()), sy(p.y.to_double()));
    os << buf;
  }
  os << "\" fill=\"none\" stroke=\"#c22\" stroke-width=\"1.5\"/>\n";
  if (!b.points.empty()) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"4\" fill=\"#c22\"/>\n",
                  sx(b.points.front().x.to_double()), sy(b.points.front().y.to_double()));
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace trigroup
