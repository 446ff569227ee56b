#pragma once

#include <array>
#include <stdexcept>

#include "ecut/vec.hpp"

namespace ecut {

// Affine nodal basis on one triangle. eval() returns the barycentric
// coordinates of x, which extend each hat function affinely to the whole
// plane; that extension is what the patch jump penalty integrates.
struct P1Basis {
  double area2 = 0.0;  // twice the signed area
  Triangle tri;
  std::array<Vec2, 3> grad;

  explicit P1Basis(const Triangle& t) : tri(t) {
    area2 = cross(t[1] - t[0], t[2] - t[0]);
    if (area2 == 0.0) throw std::runtime_error("P1Basis: degenerate triangle");
    const Vec2 e0 = t[2] - t[1], e1 = t[0] - t[2], e2 = t[1] - t[0];
    grad[0] = Vec2{-e0.y, e0.x} * (1.0 / area2);
    grad[1] = Vec2{-e1.y, e1.x} * (1.0 / area2);
    grad[2] = Vec2{-e2.y, e2.x} * (1.0 / area2);
  }

  std::array<double, 3> eval(Vec2 x) const {
    const double l0 = cross(tri[1] - x, tri[2] - x) / area2;
    const double l1 = cross(tri[2] - x, tri[0] - x) / area2;
    return {l0, l1, 1.0 - l0 - l1};
  }
};

}  // namespace ecut
