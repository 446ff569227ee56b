#include "ecut/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ecut {

double BackgroundMesh::element_diameter(int e) const {
  const Triangle t = element_triangle(e);
  const double a = norm(t[1] - t[0]);
  const double b = norm(t[2] - t[1]);
  const double c = norm(t[0] - t[2]);
  return std::max({a, b, c});
}

bool BackgroundMesh::element_touches_boundary(int e) const {
  for (int f : element_facets[e])
    if (!facets[f].interior()) return true;
  return false;
}

std::pair<int, int> BackgroundMesh::facet_patch(int facet) const {
  const Facet& f = facets[facet];
  if (!f.interior())
    throw std::runtime_error("facet_patch: facet " + std::to_string(facet) +
                             " lies on the boundary");
  return {f.elements[0], f.elements[1]};
}

double BackgroundMesh::total_area() const {
  double a = 0.0;
  for (int e = 0; e < element_count(); ++e) a += element_area(e);
  return a;
}

BackgroundMesh build_structured_mesh(const Rect& box, double target_h,
                                     bool alternate_diagonals) {
  if (!(target_h > 0.0))
    throw std::invalid_argument("build_structured_mesh: target_h must be > 0");
  if (!(box.width() > 0.0) || !(box.height() > 0.0))
    throw std::invalid_argument("build_structured_mesh: box is degenerate");
  // Smallest cell counts with edge lengths <= target_h.
  const int nx = static_cast<int>(std::ceil(box.width() / target_h - 1e-12));
  const int ny = static_cast<int>(std::ceil(box.height() / target_h - 1e-12));
  return build_structured_mesh(box, std::max(nx, 1), std::max(ny, 1),
                               alternate_diagonals);
}

BackgroundMesh build_structured_mesh(const Rect& box, int nx, int ny,
                                     bool alternate_diagonals) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("build_structured_mesh: need nx, ny >= 1");
  if (!(box.width() > 0.0) || !(box.height() > 0.0))
    throw std::invalid_argument("build_structured_mesh: box is degenerate");

  BackgroundMesh m;
  m.bounding_box = box;
  m.nx = nx;
  m.ny = ny;

  const double dx = box.width() / nx;
  const double dy = box.height() / ny;

  m.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      m.vertices.push_back({box.lo.x + i * dx, box.lo.y + j * dy});

  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

  m.elements.reserve(static_cast<std::size_t>(2) * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      const bool flip = alternate_diagonals && ((i + j) % 2 == 1);
      if (!flip) {
        m.elements.push_back({v00, v10, v11});
        m.elements.push_back({v00, v11, v01});
      } else {
        m.elements.push_back({v00, v10, v01});
        m.elements.push_back({v10, v11, v01});
      }
    }
  }

  // Facets from unique undirected edges, in first-encounter order.
  std::unordered_map<long long, int> edge_index;
  edge_index.reserve(m.elements.size() * 2);
  const long long nv = m.vertex_count();
  m.element_facets.assign(m.elements.size(), {-1, -1, -1});
  for (int e = 0; e < m.element_count(); ++e) {
    const auto& v = m.elements[e];
    for (int k = 0; k < 3; ++k) {
      const int a = v[k], b = v[(k + 1) % 3];
      const long long key = a < b ? a * nv + b : b * nv + a;
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        const int f = m.facet_count();
        edge_index.emplace(key, f);
        Facet fc;
        fc.vertices = {std::min(a, b), std::max(a, b)};
        fc.elements = {e, -1};
        m.facets.push_back(fc);
        m.element_facets[e][k] = f;
      } else {
        Facet& fc = m.facets[it->second];
        if (fc.elements[1] != -1)
          throw std::runtime_error("build_structured_mesh: non-manifold edge");
        fc.elements[1] = e;
        m.element_facets[e][k] = it->second;
      }
    }
  }

  m.h_max = 0.0;
  m.h_min = std::numeric_limits<double>::max();
  for (int e = 0; e < m.element_count(); ++e) {
    const double d = m.element_diameter(e);
    m.h_max = std::max(m.h_max, d);
    m.h_min = std::min(m.h_min, d);
    if (signed_area(m.element_triangle(e)) <= 0.0)
      throw std::runtime_error("build_structured_mesh: negative orientation");
  }
  return m;
}

}  // namespace ecut
