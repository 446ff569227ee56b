#include "doctest.h"
#include "ecut/assembly.hpp"
#include "ecut/cases.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace ecut;

namespace {

// Unit square split along the (0,0)-(1,1) diagonal. Vertices in row-major
// order: v0=(0,0), v1=(1,0), v2=(0,1), v3=(1,1).
BackgroundMesh unit_square() {
  return build_structured_mesh(Rect{{0.0, 0.0}, {1.0, 1.0}}, 1, 1);
}

LevelSetFrame all_inside(const BackgroundMesh& m) {
  return frame_from_nodal(m, std::vector<double>(m.vertex_count(), -1.0));
}

DofMap all_vertices(const BackgroundMesh& m) {
  std::vector<int> ids(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) ids[v] = v;
  return DofMap::from_vertices(ids, m.vertex_count());
}

double frob_diff(const CsrMatrix& m, const double (*ref)[4]) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(m.at(i, j) - ref[i][j]));
  return worst;
}

}  // namespace

TEST_CASE("mass matrix on the unit square matches the hand computation") {
  const BackgroundMesh m = unit_square();
  const LevelSetFrame f = all_inside(m);
  const CutQuadrature q = build_cut_quadrature(f, m, 2);
  const DofMap dofs = all_vertices(m);
  const CsrMatrix mass = assemble_cut_mass(m, q, dofs, dofs);

  const double ref[4][4] = {
      {1.0 / 6, 1.0 / 24, 1.0 / 24, 1.0 / 12},
      {1.0 / 24, 1.0 / 12, 0.0, 1.0 / 24},
      {1.0 / 24, 0.0, 1.0 / 12, 1.0 / 24},
      {1.0 / 12, 1.0 / 24, 1.0 / 24, 1.0 / 6},
  };
  CHECK(frob_diff(mass, ref) < 1e-15);

  // Row sums are the integrals of the hat functions, the total is the area.
  const std::vector<double> ones(4, 1.0);
  const std::vector<double> rs = mass.apply(ones);
  CHECK(rs[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(rs[1] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(rs[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(rs[3] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  double total = 0.0;
  for (double v : rs) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pure diffusion gives the five point stencil on the unit square") {
  const BackgroundMesh m = unit_square();
  const LevelSetFrame f = all_inside(m);
  const CutQuadrature q = build_cut_quadrature(f, m, 4);
  const DofMap dofs = all_vertices(m);
  const auto zero_w = [](Vec2, double) { return Vec2{0.0, 0.0}; };
  const CsrMatrix k = assemble_convection_diffusion(m, q, zero_w, 0.0, 1.0, dofs);

  const double ref[4][4] = {
      {1.0, -0.5, -0.5, 0.0},
      {-0.5, 1.0, 0.0, -0.5},
      {-0.5, 0.0, 1.0, -0.5},
      {0.0, -0.5, -0.5, 1.0},
  };
  CHECK(frob_diff(k, ref) < 1e-14);
}

TEST_CASE("constant transport matches the hand computation") {
  const BackgroundMesh m = unit_square();
  const LevelSetFrame f = all_inside(m);
  const CutQuadrature q = build_cut_quadrature(f, m, 4);
  const DofMap dofs = all_vertices(m);
  const auto w = [](Vec2, double) { return Vec2{2.0, 0.5}; };
  const auto zero_w = [](Vec2, double) { return Vec2{0.0, 0.0}; };
  const CsrMatrix with_w = assemble_convection_diffusion(m, q, w, 0.0, 1.0, dofs);
  const CsrMatrix diff_only =
      assemble_convection_diffusion(m, q, zero_w, 0.0, 1.0, dofs);
  const CsrMatrix t = csr_linear_combination({{1.0, &with_w}, {-1.0, &diff_only}});

  // Row i holds -(w . grad psi_i) * area/3 per element, constant across the
  // element's columns.
  const double ref[4][4] = {
      {5.0 / 12, 1.0 / 3, 1.0 / 12, 5.0 / 12},
      {-0.25, -0.25, 0.0, -0.25},
      {0.25, 0.0, 0.25, 0.25},
      {-5.0 / 12, -1.0 / 12, -1.0 / 3, -5.0 / 12},
  };
  CHECK(frob_diff(t, ref) < 1e-14);
}

TEST_CASE("transport and diffusion columns sum to zero on a cut domain") {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh m = build_structured_mesh(c.box, 0.1);
  const LevelSetFrame f = interpolate_levelset(c.phi, m, 0.1);
  REQUIRE(f.count(ElemClass::Cut) > 0);
  const CutQuadrature q = build_cut_quadrature(f, m, 4);
  const DofMap dofs = all_vertices(m);
  const CsrMatrix a = assemble_convection_diffusion(m, q, c.velocity, 0.1, c.nu, dofs);

  const std::vector<double> cs = a.column_sums();
  double worst = 0.0;
  for (double v : cs) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-13 * a.max_abs());
}

TEST_CASE("mass over a cut domain reproduces the cut measure") {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh m = build_structured_mesh(c.box, 0.1);
  const LevelSetFrame f = interpolate_levelset(c.phi, m, 0.0);
  const CutQuadrature q = build_cut_quadrature(f, m, 2);
  const DofMap dofs = all_vertices(m);
  const CsrMatrix mass = assemble_cut_mass(m, q, dofs, dofs);

  const std::vector<double> rs = mass.apply(std::vector<double>(dofs.size(), 1.0));
  double total = 0.0;
  for (double v : rs) total += v;
  CHECK(total == doctest::Approx(q.measure()).epsilon(1e-13));
}

TEST_CASE("assembly refuses dofs that do not cover the quadrature") {
  const BackgroundMesh m = build_structured_mesh(Rect{{0.0, 0.0}, {1.0, 1.0}}, 2, 2);
  const LevelSetFrame f = all_inside(m);
  const CutQuadrature q = build_cut_quadrature(f, m, 2);
  const DofMap full = all_vertices(m);
  std::vector<int> partial_ids;
  for (int v = 0; v + 1 < m.vertex_count(); ++v) partial_ids.push_back(v);
  const DofMap partial = DofMap::from_vertices(partial_ids, m.vertex_count());
  CHECK_THROWS_WITH_AS(assemble_cut_mass(m, q, partial, full),
                       doctest::Contains("containment"), std::runtime_error);
}

TEST_CASE("penalty parameters count the extension hops") {
  const GhostPenaltyParams a = GhostPenaltyParams::make(1.0, 0.5, 1.0);
  CHECK(a.hops == 3);
  CHECK(a.gamma() == doctest::Approx(3.0));
  const GhostPenaltyParams b = GhostPenaltyParams::make(1.0, 0.5, 1.1);
  CHECK(b.hops == 4);
  const GhostPenaltyParams c = GhostPenaltyParams::make(0.25, 0.5, 0.0);
  CHECK(c.hops == 1);
  CHECK(c.gamma() == doctest::Approx(0.25));
  CHECK_THROWS_AS(GhostPenaltyParams::make(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GhostPenaltyParams::make(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("one facet patch penalty matches the closed form") {
  // Hat at v1=(1,0) on the split unit square: the extension from the lower
  // element is x - y, from the upper one it is identically zero, so the
  // squared jump integrates to 1/6 over the patch.
  const BackgroundMesh m = unit_square();
  int diag = -1;
  for (int f = 0; f < m.facet_count(); ++f)
    if (m.facets[f].interior()) diag = f;
  REQUIRE(diag >= 0);

  const auto [e1, e2] = m.facet_patch(diag);
  // Nodal data per element in element-local vertex order.
  std::array<double, 3> u1{}, u2{};
  for (int k = 0; k < 3; ++k) {
    u1[k] = m.elements[e1][k] == 1 ? 1.0 : 0.0;
    u2[k] = m.elements[e2][k] == 1 ? 1.0 : 0.0;
  }
  CHECK(patch_jump_energy(m, diag, u1, u2) == doctest::Approx(1.0 / 6).epsilon(1e-13));

  const LevelSetFrame f = all_inside(m);
  const ActiveMeshData act = build_active_mesh(f, m, 1.0);
  REQUIRE(act.stabilized_facets.size() == 1);
  GhostPenaltyParams p;
  p.c_gamma = 1.0;
  p.h = 1.0;
  p.delta_h = 0.0;
  p.hops = 1;
  const DofMap dofs = all_vertices(m);
  const CsrMatrix s = assemble_ghost_penalty(m, act, p, dofs);
  const std::vector<double> u = {0.0, 1.0, 0.0, 0.0};
  const std::vector<double> su = s.apply(u);
  double quad_form = 0.0;
  for (int i = 0; i < 4; ++i) quad_form += u[i] * su[i];
  CHECK(quad_form == doctest::Approx(1.0 / 6).epsilon(1e-13));
}

TEST_CASE("penalty annihilates constants and affine fields") {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh m = build_structured_mesh(c.box, 0.1);
  const LevelSetFrame f = interpolate_levelset(c.phi, m, 0.05);
  const ActiveMeshData act = build_active_mesh(f, m, 0.2);
  REQUIRE(!act.stabilized_facets.empty());
  const GhostPenaltyParams p = GhostPenaltyParams::make(1.0, m.h_max, 0.2);
  const DofMap dofs = all_vertices(m);
  const CsrMatrix s = assemble_ghost_penalty(m, act, p, dofs);

  const std::vector<double> sc = s.column_sums();
  double worst = 0.0;
  for (double v : sc) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-12 * std::max(1.0, s.max_abs()));

  std::vector<double> affine(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v)
    affine[v] = 0.3 - 1.7 * m.vertices[v].x + 0.9 * m.vertices[v].y;
  const std::vector<double> sa = s.apply(affine);
  double energy = 0.0;
  for (int i = 0; i < m.vertex_count(); ++i) energy += affine[i] * sa[i];
  CHECK(std::abs(energy) < 1e-10);
}

TEST_CASE("penalty energy decomposes over facet patches") {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh m = build_structured_mesh(c.box, 0.2);
  const LevelSetFrame f = interpolate_levelset(c.phi, m, 0.0);
  const ActiveMeshData act = build_active_mesh(f, m, 0.3);
  const GhostPenaltyParams p = GhostPenaltyParams::make(2.0, m.h_max, 0.3);
  const DofMap dofs = all_vertices(m);
  const CsrMatrix s = assemble_ghost_penalty(m, act, p, dofs);

  std::mt19937 rng(123);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> u(m.vertex_count());
  for (double& v : u) v = unif(rng);

  const std::vector<double> su = s.apply(u);
  double energy = 0.0;
  for (int i = 0; i < m.vertex_count(); ++i) energy += u[i] * su[i];

  double expected = 0.0;
  for (int fi : act.stabilized_facets) {
    const auto [e1, e2] = m.facet_patch(fi);
    std::array<double, 3> u1{}, u2{};
    for (int k = 0; k < 3; ++k) {
      u1[k] = u[m.elements[e1][k]];
      u2[k] = u[m.elements[e2][k]];
    }
    expected += patch_jump_energy(m, fi, u1, u2);
  }
  expected *= p.gamma() / (p.h * p.h);
  CHECK(energy == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("constant load integrates to the cut measure") {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh m = build_structured_mesh(c.box, 0.1);
  const LevelSetFrame f = interpolate_levelset(c.phi, m, 0.0);
  const CutQuadrature q = build_cut_quadrature(f, m, 4);
  const DofMap dofs = all_vertices(m);
  const auto one = [](Vec2, double) { return 1.0; };
  const std::vector<double> b = assemble_load(m, q, one, 0.0, dofs);
  double total = 0.0;
  for (double v : b) total += v;
  CHECK(total == doctest::Approx(q.measure()).epsilon(1e-13));
}

TEST_CASE("manufactured load agrees with a stratified Monte Carlo estimate") {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh m = build_structured_mesh(c.box, 0.1);
  const LevelSetFrame f = interpolate_levelset(c.phi, m, 0.0);
  const CutQuadrature q = build_cut_quadrature(f, m, 4);
  const DofMap dofs = all_vertices(m);
  const std::vector<double> b = assemble_load(m, q, c.forcing, 0.0, dofs);
  double total = 0.0;
  for (double v : b) total += v;

  // Per sub-simplex uniform sampling so the estimator variance tracks the
  // local cell size instead of the whole box.
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int samples = 4000;
  double mc = 0.0, var = 0.0;
  for (int e = 0; e < m.element_count(); ++e) {
    for (const Triangle& tri : q.cells[e]) {
      const double area = signed_area(tri);
      double sum = 0.0, sum_sq = 0.0;
      for (int s = 0; s < samples; ++s) {
        double a = unif(rng), bb = unif(rng);
        if (a + bb > 1.0) {
          a = 1.0 - a;
          bb = 1.0 - bb;
        }
        const Vec2 x = tri[0] + a * (tri[1] - tri[0]) + bb * (tri[2] - tri[0]);
        const double fv = c.forcing(x, 0.0);
        sum += fv;
        sum_sq += fv * fv;
      }
      const double mean = sum / samples;
      mc += area * mean;
      var += area * area * (sum_sq / samples - mean * mean) / samples;
    }
  }
  const double tol = std::max(1e-3, 6.0 * std::sqrt(std::max(var, 0.0)));
  CHECK(std::abs(total - mc) < tol);
}
