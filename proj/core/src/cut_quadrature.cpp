#include "ecut/cut_quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ecut {

namespace {

SimplexRule make_degree2() {
  // Interior three-point rule.
  SimplexRule r;
  r.degree = 2;
  const double a = 2.0 / 3.0, b = 1.0 / 6.0;
  r.barycentric = {{a, b, b}, {b, a, b}, {b, b, a}};
  r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return r;
}

void push_perm3(SimplexRule& r, double a, double b, double w) {
  r.barycentric.push_back({a, b, b});
  r.barycentric.push_back({b, a, b});
  r.barycentric.push_back({b, b, a});
  r.weights.insert(r.weights.end(), 3, w);
}

void push_perm6(SimplexRule& r, double a, double b, double c, double w) {
  r.barycentric.push_back({a, b, c});
  r.barycentric.push_back({a, c, b});
  r.barycentric.push_back({b, a, c});
  r.barycentric.push_back({b, c, a});
  r.barycentric.push_back({c, a, b});
  r.barycentric.push_back({c, b, a});
  r.weights.insert(r.weights.end(), 6, w);
}

SimplexRule make_degree4() {
  SimplexRule r;
  r.degree = 4;
  push_perm3(r, 0.108103018168070, 0.445948490915965, 0.223381589678011);
  push_perm3(r, 0.816847572980459, 0.091576213509771, 0.109951743655322);
  return r;
}

SimplexRule make_degree6() {
  SimplexRule r;
  r.degree = 6;
  push_perm3(r, 0.501426509658179, 0.249286745170910, 0.116786275726379);
  push_perm3(r, 0.873821971016996, 0.063089014491502, 0.050844906370207);
  push_perm6(r, 0.053145049844817, 0.310352451033784, 0.636502499121399,
             0.082851075618374);
  return r;
}

}  // namespace

const SimplexRule& simplex_rule(int degree) {
  static const SimplexRule r2 = make_degree2();
  static const SimplexRule r4 = make_degree4();
  static const SimplexRule r6 = make_degree6();
  switch (degree) {
    case 2: return r2;
    case 4: return r4;
    case 6: return r6;
    default:
      throw std::invalid_argument("simplex_rule: degree " +
                                  std::to_string(degree) +
                                  " unsupported, available: 2, 4, 6");
  }
}

namespace {

Triangle oriented(Vec2 a, Vec2 b, Vec2 c) {
  Triangle t{a, b, c};
  if (signed_area(t) < 0.0) std::swap(t[1], t[2]);
  return t;
}

Vec2 edge_cut(Vec2 a, Vec2 b, double va, double vb) {
  // Zero of the linear interpolant along [a, b]; opposite strict signs
  // guarantee s in (0, 1).
  const double s = va / (va - vb);
  return a + s * (b - a);
}

}  // namespace

int decompose_cut_element(const Triangle& tri,
                          const std::array<double, 3>& values,
                          std::array<Triangle, 2>& out) {
  int neg = 0;
  for (double v : values) {
    if (v == 0.0)
      throw std::invalid_argument(
          "decompose_cut_element: nodal zero, values must be shifted");
    if (v < 0.0) ++neg;
  }
  if (neg == 0 || neg == 3)
    throw std::invalid_argument(
        "decompose_cut_element: not a cut element (uniform sign)");

  if (neg == 1) {
    int i = 0;
    while (values[i] >= 0.0) ++i;
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const Vec2 pij = edge_cut(tri[i], tri[j], values[i], values[j]);
    const Vec2 pik = edge_cut(tri[i], tri[k], values[i], values[k]);
    out[0] = oriented(tri[i], pij, pik);
    return 1;
  }

  // Two inside: the negative part is a quadrilateral.
  int k = 0;
  while (values[k] < 0.0) ++k;
  const int i = (k + 1) % 3, j = (k + 2) % 3;  // i, j inside
  const Vec2 pik = edge_cut(tri[i], tri[k], values[i], values[k]);
  const Vec2 pjk = edge_cut(tri[j], tri[k], values[j], values[k]);
  out[0] = oriented(tri[i], tri[j], pjk);
  out[1] = oriented(tri[i], pjk, pik);
  return 2;
}

double CutQuadrature::element_measure(int e) const {
  double m = 0.0;
  for (const QuadPoint& q : points[e]) m += q.w;
  return m;
}

double CutQuadrature::measure() const {
  double m = 0.0;
  for (std::size_t e = 0; e < points.size(); ++e)
    for (const QuadPoint& q : points[e]) m += q.w;
  return m;
}

namespace {

void map_rule(const SimplexRule& rule, const Triangle& t,
              std::vector<QuadPoint>& out) {
  const double a = area(t);
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const auto& l = rule.barycentric[q];
    out.push_back({l[0] * t[0] + l[1] * t[1] + l[2] * t[2],
                   rule.weights[q] * a});
  }
}

}  // namespace

CutQuadrature build_cut_quadrature(const LevelSetFrame& frame,
                                   const BackgroundMesh& mesh, int degree) {
  const SimplexRule& rule = simplex_rule(degree);
  CutQuadrature cq;
  cq.degree = degree;
  cq.cells.resize(mesh.element_count());
  cq.points.resize(mesh.element_count());
  std::array<Triangle, 2> parts;
  for (int e = 0; e < mesh.element_count(); ++e) {
    switch (frame.element_class[e]) {
      case ElemClass::Pos:
        break;
      case ElemClass::Neg:
        cq.cells[e].push_back(mesh.element_triangle(e));
        break;
      case ElemClass::Cut: {
        const Triangle t = mesh.element_triangle(e);
        const auto& v = mesh.elements[e];
        const std::array<double, 3> values{frame.nodal_values[v[0]],
                                           frame.nodal_values[v[1]],
                                           frame.nodal_values[v[2]]};
        const int n = decompose_cut_element(t, values, parts);
        for (int p = 0; p < n; ++p) cq.cells[e].push_back(parts[p]);
        break;
      }
    }
    for (const Triangle& t : cq.cells[e]) map_rule(rule, t, cq.points[e]);
  }
  return cq;
}

CutQuadrature build_full_quadrature(const BackgroundMesh& mesh,
                                    const std::vector<int>& elements,
                                    int degree) {
  const SimplexRule& rule = simplex_rule(degree);
  CutQuadrature cq;
  cq.degree = degree;
  cq.cells.resize(mesh.element_count());
  cq.points.resize(mesh.element_count());
  for (int e : elements) {
    cq.cells[e].push_back(mesh.element_triangle(e));
    map_rule(rule, cq.cells[e].back(), cq.points[e]);
  }
  return cq;
}

}  // namespace ecut
