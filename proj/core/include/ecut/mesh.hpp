#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ecut/vec.hpp"

namespace ecut {

struct Facet {
  std::array<int, 2> vertices{-1, -1};
  std::array<int, 2> elements{-1, -1};  // elements[1] == -1 on the boundary
  bool interior() const { return elements[1] >= 0; }
};

// Static triangulation of a rectangular box. Criss-cross pattern: every grid
// cell is split into two triangles along one diagonal.
struct BackgroundMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> elements;  // CCW vertex ids
  std::vector<Facet> facets;
  std::vector<std::array<int, 3>> element_facets;

  Rect bounding_box;
  int nx = 0, ny = 0;  // grid cells per direction
  double h_max = 0.0;  // largest element diameter
  double h_min = 0.0;
  double quasi_uniformity() const { return h_max / h_min; }

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int element_count() const { return static_cast<int>(elements.size()); }
  int facet_count() const { return static_cast<int>(facets.size()); }

  Triangle element_triangle(int e) const {
    const auto& v = elements[e];
    return {vertices[v[0]], vertices[v[1]], vertices[v[2]]};
  }
  double element_area(int e) const { return area(element_triangle(e)); }
  double element_diameter(int e) const;
  bool element_touches_boundary(int e) const;

  // Both elements adjacent to an interior facet; throws on boundary facets.
  std::pair<int, int> facet_patch(int facet) const;

  double total_area() const;
};

// target_h bounds the grid cell edge lengths from above.
BackgroundMesh build_structured_mesh(const Rect& box, double target_h,
                                     bool alternate_diagonals = false);
BackgroundMesh build_structured_mesh(const Rect& box, int nx, int ny,
                                     bool alternate_diagonals = false);

}  // namespace ecut
