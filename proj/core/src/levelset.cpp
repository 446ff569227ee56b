#include "ecut/levelset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ecut {

namespace {

void classify(const BackgroundMesh& mesh, LevelSetFrame& frame) {
  frame.element_class.resize(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    int neg = 0;
    for (int v : mesh.elements[e])
      if (frame.nodal_values[v] < 0.0) ++neg;
    frame.element_class[e] =
        neg == 3 ? ElemClass::Neg : (neg == 0 ? ElemClass::Pos : ElemClass::Cut);
  }
}

}  // namespace

int LevelSetFrame::count(ElemClass c) const {
  int n = 0;
  for (ElemClass ec : element_class)
    if (ec == c) ++n;
  return n;
}

LevelSetFrame interpolate_levelset(const ScalarField& phi,
                                   const BackgroundMesh& mesh, double t) {
  std::vector<double> values(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    values[v] = phi(mesh.vertices[v], t);
  return frame_from_nodal(mesh, std::move(values), t);
}

LevelSetFrame frame_from_nodal(const BackgroundMesh& mesh,
                               std::vector<double> values, double t) {
  if (static_cast<int>(values.size()) != mesh.vertex_count())
    throw std::invalid_argument("frame_from_nodal: value count mismatch");
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!std::isfinite(values[v]))
      throw std::runtime_error("level set: non-finite value at vertex " +
                               std::to_string(v));
    // Nodal zeros count as outside.
    if (std::abs(values[v]) < kZeroShift) values[v] = kZeroShift;
  }
  LevelSetFrame frame;
  frame.time = t;
  frame.nodal_values = std::move(values);
  classify(mesh, frame);
  return frame;
}

double distance_proxy(const LevelSetFrame& frame, const BackgroundMesh& mesh,
                      int element) {
  const auto& v = mesh.elements[element];
  return std::min({frame.nodal_values[v[0]], frame.nodal_values[v[1]],
                   frame.nodal_values[v[2]]});
}

}  // namespace ecut
