#include "doctest.h"
#include "ecut/mesh.hpp"

#include <cmath>
#include <set>

using namespace ecut;

namespace {
const Rect kUnit{{0.0, 0.0}, {1.0, 1.0}};
}

TEST_CASE("one-cell square splits into two triangles") {
  const BackgroundMesh m = build_structured_mesh(kUnit, 1.0);
  CHECK(m.vertices.size() == 4);
  CHECK(m.element_count() == 2);
  CHECK(m.facets.size() == 5);
  int interior = 0;
  for (const Facet& f : m.facets) interior += f.interior() ? 1 : 0;
  CHECK(interior == 1);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-by-two grid counts and area") {
  const BackgroundMesh m = build_structured_mesh(kUnit, 0.5);
  CHECK(m.vertices.size() == 9);
  CHECK(m.element_count() == 8);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
  // Every element is a right triangle with legs 0.5, so the diameter (the
  // longest edge) is the hypotenuse for all of them.
  CHECK(m.h_min == doctest::Approx(0.5 * std::sqrt(2.0)));
  CHECK(m.h_max == doctest::Approx(0.5 * std::sqrt(2.0)));
  CHECK(m.quasi_uniformity() == doctest::Approx(1.0));
}

TEST_CASE("rectangular box area matches the product of its sides") {
  const Rect box{{-0.7, -0.7}, {0.9, 0.7}};
  const BackgroundMesh m = build_structured_mesh(box, 0.4);
  CHECK(m.nx == 4);
  CHECK(m.ny == 4);
  CHECK(m.element_count() == 32);
  CHECK(m.total_area() == doctest::Approx(1.6 * 1.4).epsilon(1e-12));
}

TEST_CASE("all elements are positively oriented") {
  const BackgroundMesh m = build_structured_mesh(kUnit, 0.23, true);
  for (int e = 0; e < m.element_count(); ++e)
    CHECK(signed_area(m.element_triangle(e)) > 0.0);
}

TEST_CASE("euler relation holds on the structured grid") {
  for (const bool alt : {false, true}) {
    const BackgroundMesh m = build_structured_mesh(kUnit, 3, 4, alt);
    const long v = static_cast<long>(m.vertices.size());
    const long f = static_cast<long>(m.facets.size());
    const long e = m.element_count();
    CHECK(v - f + e == 1);
  }
}

TEST_CASE("facet adjacency is consistent") {
  const BackgroundMesh m = build_structured_mesh(kUnit, 0.34);
  for (int e = 0; e < m.element_count(); ++e) {
    CHECK(m.element_facets[e].size() == 3);
    for (int f : m.element_facets[e]) {
      const Facet& facet = m.facets[f];
      CHECK((facet.elements[0] == e || facet.elements[1] == e));
    }
  }
  int boundary = 0;
  for (std::size_t f = 0; f < m.facets.size(); ++f) {
    if (m.facets[f].interior()) {
      const auto patch = m.facet_patch(static_cast<int>(f));
      CHECK(patch.first != patch.second);
    } else {
      ++boundary;
      CHECK_THROWS(m.facet_patch(static_cast<int>(f)));
    }
  }
  CHECK(boundary == 2 * (m.nx + m.ny));
}

TEST_CASE("boundary contact means a whole edge on the box boundary") {
  // Flag semantics: the element owns a boundary facet. A boundary vertex
  // alone does not count; ring cells whose diagonal triangle only grazes a
  // side stay unflagged.
  for (const double h : {0.5, 0.25}) {
    const BackgroundMesh m = build_structured_mesh(kUnit, h);
    const auto edge_on_side = [](double a, double b, double side) {
      return std::abs(a - side) < 1e-12 && std::abs(b - side) < 1e-12;
    };
    int flagged = 0;
    for (int e = 0; e < m.element_count(); ++e) {
      const Triangle t = m.element_triangle(e);
      bool touches = false;
      for (int k = 0; k < 3; ++k) {
        const Vec2 a = t[k], b = t[(k + 1) % 3];
        if (edge_on_side(a.x, b.x, 0.0) || edge_on_side(a.x, b.x, 1.0) ||
            edge_on_side(a.y, b.y, 0.0) || edge_on_side(a.y, b.y, 1.0))
          touches = true;
      }
      CHECK(m.element_touches_boundary(e) == touches);
      flagged += m.element_touches_boundary(e) ? 1 : 0;
    }
    CHECK(flagged > 0);
    CHECK(flagged < m.element_count());
  }
}

TEST_CASE("vertex layout is row major from the lower-left corner") {
  const Rect box{{-1.0, 2.0}, {1.0, 3.0}};
  const BackgroundMesh m = build_structured_mesh(box, 4, 2);
  CHECK(m.vertices[0].x == doctest::Approx(-1.0));
  CHECK(m.vertices[0].y == doctest::Approx(2.0));
  const int stride = m.nx + 1;
  CHECK(m.vertices[stride].y == doctest::Approx(2.5));
  CHECK(m.vertices[1].x == doctest::Approx(-0.5));
}

TEST_CASE("degenerate boxes are rejected") {
  CHECK_THROWS(build_structured_mesh(Rect{{0, 0}, {0, 1}}, 0.5));
  CHECK_THROWS(build_structured_mesh(Rect{{0, 0}, {1, 1}}, -0.1));
  CHECK_THROWS(build_structured_mesh(Rect{{0, 0}, {1, 1}}, 0, 3));
}

TEST_CASE("alternating diagonals change the split but not the cover") {
  const BackgroundMesh fixed = build_structured_mesh(kUnit, 2, 2, false);
  const BackgroundMesh alt = build_structured_mesh(kUnit, 2, 2, true);
  CHECK(fixed.element_count() == alt.element_count());
  CHECK(fixed.total_area() == doctest::Approx(alt.total_area()));
  std::set<std::array<int, 3>> a, b;
  for (const auto& el : fixed.elements) a.insert({el[0], el[1], el[2]});
  for (const auto& el : alt.elements) b.insert({el[0], el[1], el[2]});
  CHECK(a != b);
}
