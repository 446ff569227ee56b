#pragma once

#include <array>
#include <vector>

#include "ecut/levelset.hpp"
#include "ecut/mesh.hpp"

namespace ecut {

// Symmetric quadrature rule on the reference simplex, weights sum to one.
struct SimplexRule {
  int degree = 0;
  std::vector<std::array<double, 3>> barycentric;
  std::vector<double> weights;
};

// Supported exactness degrees: 2 (mass, penalty), 4 (transport, load),
// 6 (error norms). Anything else throws.
const SimplexRule& simplex_rule(int degree);

// Sub-triangulation of the negative region of a cut element. The zero line
// of the linear interpolant crosses exactly two edges; the negative part is
// a triangle (one vertex inside) or a quadrilateral split into two
// triangles (two vertices inside). Returns the number of sub-simplices
// written to `out`. Throws unless the values have mixed signs.
int decompose_cut_element(const Triangle& tri,
                          const std::array<double, 3>& values,
                          std::array<Triangle, 2>& out);

struct QuadPoint {
  Vec2 x;
  double w = 0.0;
};

// Quadrature over the negative region of one frame. Per element: the list
// of sub-simplices covering the negative part (the element itself for Neg,
// empty for Pos) and the mapped rule points.
struct CutQuadrature {
  int degree = 0;
  std::vector<std::vector<Triangle>> cells;
  std::vector<std::vector<QuadPoint>> points;

  double element_measure(int e) const;
  double measure() const;
};

CutQuadrature build_cut_quadrature(const LevelSetFrame& frame,
                                   const BackgroundMesh& mesh, int degree);

// Quadrature over whole (uncut) elements of a subset, e.g. the active mesh.
CutQuadrature build_full_quadrature(const BackgroundMesh& mesh,
                                    const std::vector<int>& elements,
                                    int degree);

}  // namespace ecut
