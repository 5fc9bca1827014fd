#pragma once

#include "trigroup/rational.hpp"

#include <optional>
#include <string>

namespace trigroup {

/// Exact element of the field Q(sqrt(3)), stored as a + b*sqrt(3) with
/// rational a, b. Ring operations, division, equality, and sign are all
/// exact; no floating point is involved.
class QuadRat {
public:
  QuadRat() = default;
  QuadRat(Rat a) : a_(std::move(a)) {}
  QuadRat(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}
  QuadRat(long a) : a_(a) {}
  QuadRat(long num, long den) : a_(Rat(num, den)) {}

  const Rat& rational_part() const { return a_; }
  const Rat& root_part() const { return b_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadRat operator-() const { return QuadRat(-a_, -b_); }
  QuadRat operator+(const QuadRat& o) const { return QuadRat(a_ + o.a_, b_ + o.b_); }
  QuadRat operator-(const QuadRat& o) const { return QuadRat(a_ - o.a_, b_ - o.b_); }
  QuadRat operator*(const QuadRat& o) const {
    return QuadRat(a_ * o.a_ + 3 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
  }
  QuadRat operator/(const QuadRat& o) const;

  QuadRat& operator+=(const QuadRat& o) { *this = *this + o; return *this; }
  QuadRat& operator-=(const QuadRat& o) { *this = *this - o; return *this; }
  QuadRat& operator*=(const QuadRat& o) { *this = *this * o; return *this; }
  QuadRat& operator/=(const QuadRat& o) { *this = *this / o; return *this; }

  bool operator==(const QuadRat& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const QuadRat& o) const { return !(*this == o); }

  /// Exact sign: -1, 0, or +1. Decided by comparing a^2 against 3 b^2
  /// when a and b disagree in sign.
  int sign() const;

  bool operator<(const QuadRat& o) const { return (*this - o).sign() < 0; }
  bool operator>(const QuadRat& o) const { return (*this - o).sign() > 0; }
  bool operator<=(const QuadRat& o) const { return (*this - o).sign() <= 0; }
  bool operator>=(const QuadRat& o) const { return (*this - o).sign() >= 0; }

  double to_double() const;

  /// "a" when b = 0, otherwise "a~b" meaning a + b*sqrt(3).
  std::string to_string() const;
  static std::optional<QuadRat> from_string(const std::string& s);

  static QuadRat sqrt3() { return QuadRat(Rat(0), Rat(1)); }

private:
  Rat a_;
  Rat b_;
};

struct Vec2 {
  QuadRat x;
  QuadRat y;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(const QuadRat& s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

inline QuadRat dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }
inline QuadRat cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }
inline Vec2 perp(const Vec2& u) { return {-(u.y), u.x}; }

/// Mirror image of v across the line with direction t (through the origin).
Vec2 reflect_across_direction(const Vec2& v, const Vec2& t);

} // namespace trigroup
