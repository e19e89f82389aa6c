#pragma once

#include <cmath>

namespace gradflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  Vec2& operator+=(Vec2 v) {
    x += v.x;
    y += v.y;
    return *this;
  }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(norm2(v)); }

/// Symmetric use only needs the upper triangle, but we keep all four
/// entries so the affine-map Jacobians can share the type.
struct Mat2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  friend Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a00 * v.x + m.a01 * v.y, m.a10 * v.x + m.a11 * v.y};
  }
};

inline double det(const Mat2& m) { return m.a00 * m.a11 - m.a01 * m.a10; }

}  // namespace gradflow
