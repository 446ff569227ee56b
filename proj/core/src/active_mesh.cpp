#include "ecut/active_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace ecut {

namespace {

// Shortest accumulated-diameter distance from a seed set, walking facet
// neighbors. Ties broken by element id for reproducibility.
std::vector<double> dilation_distance(const BackgroundMesh& mesh,
                                      const std::vector<std::uint8_t>& seed) {
  std::vector<double> dist(mesh.element_count(),
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int e = 0; e < mesh.element_count(); ++e)
    if (seed[e]) {
      dist[e] = 0.0;
      pq.push({0.0, e});
    }
  while (!pq.empty()) {
    auto [d, e] = pq.top();
    pq.pop();
    if (d > dist[e]) continue;
    for (int f : mesh.element_facets[e]) {
      if (!mesh.facets[f].interior()) continue;
      const auto [e1, e2] = mesh.facet_patch(f);
      const int other = e1 == e ? e2 : e1;
      const double nd = d + mesh.element_diameter(other);
      if (nd < dist[other]) {
        dist[other] = nd;
        pq.push({nd, other});
      }
    }
  }
  return dist;
}

}  // namespace

ActiveMeshData build_active_mesh(const LevelSetFrame& frame,
                                 const BackgroundMesh& mesh, double delta_h,
                                 DilationMode mode, int step_index) {
  if (delta_h < 0.0)
    throw std::invalid_argument("build_active_mesh: delta_h must be >= 0");

  ActiveMeshData a;
  a.step_index = step_index;
  a.delta_h = delta_h;
  const int E = mesh.element_count();
  a.is_active.assign(E, 0);
  a.is_strip.assign(E, 0);

  if (mode == DilationMode::Proxy) {
    for (int e = 0; e < E; ++e) {
      const double p = distance_proxy(frame, mesh, e);
      const bool cut = frame.element_class[e] == ElemClass::Cut;
      a.is_active[e] = (p <= delta_h) ? 1 : 0;
      a.is_strip[e] = (cut || std::abs(p) <= delta_h) ? 1 : 0;
    }
  } else {
    std::vector<std::uint8_t> inside_seed(E, 0), cut_seed(E, 0);
    for (int e = 0; e < E; ++e) {
      inside_seed[e] = frame.element_class[e] != ElemClass::Pos;
      cut_seed[e] = frame.element_class[e] == ElemClass::Cut;
    }
    const auto from_inside = dilation_distance(mesh, inside_seed);
    const auto from_cut = dilation_distance(mesh, cut_seed);
    for (int e = 0; e < E; ++e) {
      a.is_active[e] = from_inside[e] <= delta_h ? 1 : 0;
      a.is_strip[e] = from_cut[e] <= delta_h ? 1 : 0;
    }
  }

  // The strip never leaves the active mesh; with the proxy this is implied
  // (|p| <= delta_h or a cut element forces p <= delta_h), the geodesic
  // variant clamps.
  for (int e = 0; e < E; ++e)
    if (a.is_strip[e] && !a.is_active[e]) a.is_strip[e] = 0;

  for (int e = 0; e < E; ++e) {
    if (a.is_active[e]) a.active_elements.push_back(e);
    if (a.is_strip[e]) a.strip_elements.push_back(e);
  }

  for (int f = 0; f < mesh.facet_count(); ++f) {
    const Facet& fc = mesh.facets[f];
    if (!fc.interior()) continue;
    const int e1 = fc.elements[0], e2 = fc.elements[1];
    if (!a.is_active[e1] || !a.is_active[e2]) continue;
    if (a.is_strip[e1] || a.is_strip[e2]) a.stabilized_facets.push_back(f);
  }

  std::vector<std::uint8_t> dof_mark(mesh.vertex_count(), 0);
  for (int e : a.active_elements)
    for (int v : mesh.elements[e]) dof_mark[v] = 1;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (dof_mark[v]) a.active_dofs.push_back(v);

  return a;
}

void check_containment(const LevelSetFrame& old_frame,
                       const ActiveMeshData& fresh, const BackgroundMesh& mesh,
                       int step) {
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (old_frame.element_class[e] == ElemClass::Pos) continue;
    if (!fresh.is_active[e])
      throw std::runtime_error(
          "containment violated at step " + std::to_string(step) +
          ": element " + std::to_string(e) +
          " meets the previous domain but is outside the active mesh "
          "(delta_h = " + std::to_string(fresh.delta_h) + ")");
  }
  (void)mesh;
}

bool strip_reachable(const LevelSetFrame& frame, const ActiveMeshData& act,
                     const BackgroundMesh& mesh) {
  // Flood from the uncut interior across stabilized facets.
  std::vector<std::uint8_t> stab(mesh.facet_count(), 0);
  for (int f : act.stabilized_facets) stab[f] = 1;
  std::vector<std::uint8_t> reached(mesh.element_count(), 0);
  std::queue<int> queue;
  for (int e : act.active_elements)
    if (frame.element_class[e] == ElemClass::Neg) {
      reached[e] = 1;
      queue.push(e);
    }
  while (!queue.empty()) {
    const int e = queue.front();
    queue.pop();
    for (int f : mesh.element_facets[e]) {
      if (!stab[f]) continue;
      const auto [e1, e2] = mesh.facet_patch(f);
      const int other = e1 == e ? e2 : e1;
      if (!reached[other]) {
        reached[other] = 1;
        queue.push(other);
      }
    }
  }
  for (int e : act.strip_elements)
    if (!reached[e]) return false;
  return true;
}

}  // namespace ecut
