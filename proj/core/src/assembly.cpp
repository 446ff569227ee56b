#include "ecut/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ecut/p1.hpp"

namespace ecut {

GhostPenaltyParams GhostPenaltyParams::make(double c_gamma, double h,
                                            double delta_h) {
  if (!(c_gamma > 0.0) || !(h > 0.0) || delta_h < 0.0)
    throw std::invalid_argument("GhostPenaltyParams: bad parameters");
  GhostPenaltyParams p;
  p.c_gamma = c_gamma;
  p.h = h;
  p.delta_h = delta_h;
  p.hops = static_cast<int>(std::ceil(1.0 + delta_h / h - 1e-12));
  return p;
}

namespace {

int local_dof(const DofMap& map, int vertex, int element, const char* which) {
  const int l = map.to_local[vertex];
  if (l < 0)
    throw std::runtime_error(
        std::string("assembly: vertex ") + std::to_string(vertex) +
        " of element " + std::to_string(element) + " missing from the " +
        which + " dof map (containment violation)");
  return l;
}

}  // namespace

CsrMatrix assemble_cut_mass(const BackgroundMesh& mesh,
                            const CutQuadrature& quad, const DofMap& trial,
                            const DofMap& test) {
  TripletBuffer buf;
  buf.reserve(quad.points.size() * 27);
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (quad.points[e].empty()) continue;
    const auto& verts = mesh.elements[e];
    int rows[3], cols[3];
    for (int k = 0; k < 3; ++k) {
      rows[k] = local_dof(test, verts[k], e, "test");
      cols[k] = local_dof(trial, verts[k], e, "trial");
    }
    const P1Basis basis(mesh.element_triangle(e));
    double local[3][3] = {};
    for (const QuadPoint& q : quad.points[e]) {
      const auto psi = basis.eval(q.x);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local[i][j] += q.w * psi[i] * psi[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) buf.add(rows[i], cols[j], local[i][j]);
  }
  return buf.compress(test.size(), trial.size());
}

CsrMatrix assemble_convection_diffusion(const BackgroundMesh& mesh,
                                        const CutQuadrature& quad,
                                        const VectorField& velocity, double t,
                                        double nu, const DofMap& dofs) {
  if (!(nu > 0.0))
    throw std::invalid_argument("assemble_convection_diffusion: nu must be > 0");
  TripletBuffer buf;
  buf.reserve(quad.points.size() * 27);
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (quad.points[e].empty()) continue;
    const auto& verts = mesh.elements[e];
    int idx[3];
    for (int k = 0; k < 3; ++k) idx[k] = local_dof(dofs, verts[k], e, "dof");
    const P1Basis basis(mesh.element_triangle(e));
    double local[3][3] = {};
    for (const QuadPoint& q : quad.points[e]) {
      const auto psi = basis.eval(q.x);
      const Vec2 w = velocity(q.x, t);
      for (int i = 0; i < 3; ++i) {
        const double conv_i = dot(w, basis.grad[i]);
        for (int j = 0; j < 3; ++j)
          local[i][j] +=
              q.w * (nu * dot(basis.grad[j], basis.grad[i]) - psi[j] * conv_i);
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) buf.add(idx[i], idx[j], local[i][j]);
  }
  return buf.compress(dofs.size(), dofs.size());
}

namespace {

// The jump of a hat function over a patch is the difference of its affine
// extensions from the two sides; for vertices off an element the extension
// is zero. Returns the jump values of all four patch hats at x.
struct PatchJump {
  const BackgroundMesh& mesh;
  int e1, e2;
  P1Basis b1, b2;
  std::array<int, 4> verts{};  // patch vertex ids, e1's then e2's opposite
  int n_verts = 0;

  PatchJump(const BackgroundMesh& m, int el1, int el2)
      : mesh(m),
        e1(el1),
        e2(el2),
        b1(m.element_triangle(el1)),
        b2(m.element_triangle(el2)) {
    for (int v : mesh.elements[e1]) verts[n_verts++] = v;
    for (int v : mesh.elements[e2]) {
      bool shared = false;
      for (int k = 0; k < 3; ++k)
        if (verts[k] == v) shared = true;
      if (!shared) verts[n_verts++] = v;
    }
  }

  std::array<double, 4> eval(Vec2 x) const {
    const auto l1 = b1.eval(x);
    const auto l2 = b2.eval(x);
    std::array<double, 4> g{};
    for (int a = 0; a < n_verts; ++a) {
      double from1 = 0.0, from2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        if (mesh.elements[e1][k] == verts[a]) from1 = l1[k];
        if (mesh.elements[e2][k] == verts[a]) from2 = l2[k];
      }
      g[a] = from1 - from2;
    }
    return g;
  }
};

}  // namespace

CsrMatrix assemble_ghost_penalty(const BackgroundMesh& mesh,
                                 const ActiveMeshData& act,
                                 const GhostPenaltyParams& params,
                                 const DofMap& dofs) {
  const SimplexRule& rule = simplex_rule(2);
  const double scale = params.gamma() / (params.h * params.h);
  TripletBuffer buf;
  buf.reserve(act.stabilized_facets.size() * 16);
  for (int f : act.stabilized_facets) {
    const auto [e1, e2] = mesh.facet_patch(f);
    const PatchJump patch(mesh, e1, e2);
    int idx[4];
    for (int a = 0; a < patch.n_verts; ++a)
      idx[a] = local_dof(dofs, patch.verts[a], e1, "dof");
    double local[4][4] = {};
    for (int side : {e1, e2}) {
      const Triangle t = mesh.element_triangle(side);
      const double a_el = area(t);
      for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const auto& l = rule.barycentric[q];
        const Vec2 x = l[0] * t[0] + l[1] * t[1] + l[2] * t[2];
        const double w = rule.weights[q] * a_el;
        const auto g = patch.eval(x);
        for (int a = 0; a < patch.n_verts; ++a)
          for (int b = 0; b < patch.n_verts; ++b)
            local[a][b] += w * g[a] * g[b];
      }
    }
    for (int a = 0; a < patch.n_verts; ++a)
      for (int b = 0; b < patch.n_verts; ++b)
        buf.add(idx[a], idx[b], scale * local[a][b]);
  }
  return buf.compress(dofs.size(), dofs.size());
}

std::vector<double> assemble_load(const BackgroundMesh& mesh,
                                  const CutQuadrature& quad,
                                  const ScalarField& f, double t,
                                  const DofMap& dofs) {
  std::vector<double> b(dofs.size(), 0.0);
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (quad.points[e].empty()) continue;
    const auto& verts = mesh.elements[e];
    int idx[3];
    for (int k = 0; k < 3; ++k) idx[k] = local_dof(dofs, verts[k], e, "dof");
    const P1Basis basis(mesh.element_triangle(e));
    for (const QuadPoint& q : quad.points[e]) {
      const auto psi = basis.eval(q.x);
      const double fv = f(q.x, t);
      for (int i = 0; i < 3; ++i) b[idx[i]] += q.w * fv * psi[i];
    }
  }
  return b;
}

double patch_jump_energy(const BackgroundMesh& mesh, int facet,
                         const std::array<double, 3>& u1,
                         const std::array<double, 3>& u2) {
  const auto [e1, e2] = mesh.facet_patch(facet);
  const P1Basis b1(mesh.element_triangle(e1));
  const P1Basis b2(mesh.element_triangle(e2));
  const SimplexRule& rule = simplex_rule(2);
  double energy = 0.0;
  for (int side : {e1, e2}) {
    const Triangle t = mesh.element_triangle(side);
    const double a_el = area(t);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto& l = rule.barycentric[q];
      const Vec2 x = l[0] * t[0] + l[1] * t[1] + l[2] * t[2];
      const auto l1 = b1.eval(x);
      const auto l2 = b2.eval(x);
      double g = 0.0;
      for (int k = 0; k < 3; ++k) g += u1[k] * l1[k] - u2[k] * l2[k];
      energy += rule.weights[q] * a_el * g * g;
    }
  }
  return energy;
}

}  // namespace ecut
