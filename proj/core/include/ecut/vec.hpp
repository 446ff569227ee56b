#pragma once

#include <array>
#include <cmath>

namespace ecut {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return s * a; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }

using Triangle = std::array<Vec2, 3>;

inline double signed_area(const Triangle& t) {
  return 0.5 * cross(t[1] - t[0], t[2] - t[0]);
}

inline double area(const Triangle& t) { return std::abs(signed_area(t)); }

// Axis-aligned rectangle, lo < hi componentwise.
struct Rect {
  Vec2 lo;
  Vec2 hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
};

}  // namespace ecut
