#include "trigroup/quadrat.hpp"

#include <cmath>
#include <stdexcept>

namespace trigroup {

QuadRat QuadRat::operator/(const QuadRat& o) const {
  if (o.is_zero()) throw std::domain_error("QuadRat division by zero");
  // 1/(a+b*s) = (a-b*s)/(a^2-3b^2); the norm is nonzero since sqrt(3)
  // is irrational.
  Rat norm = o.a_ * o.a_ - 3 * o.b_ * o.b_;
  QuadRat conj(o.a_ / norm, -o.b_ / norm);
  return *this * conj;
}

int QuadRat::sign() const {
  int sa = sign_of(a_);
  int sb = sign_of(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| against |b|*sqrt(3) via squares.
  Rat lhs = a_ * a_;
  Rat rhs = 3 * b_ * b_;
  if (lhs == rhs) {
    // a^2 = 3 b^2 with a, b rational and nonzero is impossible.
    throw std::logic_error("QuadRat: irrationality violated");
  }
  return lhs > rhs ? sa : sb;
}

double QuadRat::to_double() const {
  return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(3.0);
}

std::string QuadRat::to_string() const {
  if (b_ == 0) return rat_to_string(a_);
  return rat_to_string(a_) + "~" + rat_to_string(b_);
}

std::optional<QuadRat> QuadRat::from_string(const std::string& s) {
  std::size_t tilde = s.find('~');
  if (tilde == std::string::npos) {
    auto a = rat_from_string(s);
    if (!a) return std::nullopt;
    return QuadRat(*a);
  }
  auto a = rat_from_string(s.substr(0, tilde));
  auto b = rat_from_string(s.substr(tilde + 1));
  if (!a || !b) return std::nullopt;
  return QuadRat(*a, *b);
}

Vec2 reflect_across_direction(const Vec2& v, const Vec2& t) {
  // v' = 2 (v.t)/(t.t) t - v
  QuadRat scale = (dot(v, t) * QuadRat(2)) / dot(t, t);
  return t * scale - v;
}

} // namespace trigroup
