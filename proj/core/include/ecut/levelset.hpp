#pragma once

#include <vector>

#include "ecut/fields.hpp"
#include "ecut/mesh.hpp"

namespace ecut {

enum class ElemClass : unsigned char { Neg, Pos, Cut };

// Nodal values of |phi| below this are pushed to +kZeroShift, so no vertex
// sits exactly on the zero line and every cut edge has strictly opposite
// endpoint signs.
inline constexpr double kZeroShift = 1e-14;

// Piecewise linear level set at a fixed time. The physical domain is the
// region where the interpolant is negative.
struct LevelSetFrame {
  double time = 0.0;
  std::vector<double> nodal_values;       // per vertex, zero-shifted
  std::vector<ElemClass> element_class;   // per element

  int count(ElemClass c) const;
};

LevelSetFrame interpolate_levelset(const ScalarField& phi,
                                   const BackgroundMesh& mesh, double t);

// Classification of explicitly given nodal data (applies the zero shift).
LevelSetFrame frame_from_nodal(const BackgroundMesh& mesh,
                               std::vector<double> values, double t = 0.0);

// Lower bound proxy for the signed distance from an element to the zero
// line: the smallest nodal value over the element's vertices. Exact for
// signed-distance level sets on the outside.
double distance_proxy(const LevelSetFrame& frame, const BackgroundMesh& mesh,
                      int element);

}  // namespace ecut
