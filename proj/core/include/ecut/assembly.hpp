#pragma once

#include <array>
#include <vector>

#include "ecut/active_mesh.hpp"
#include "ecut/csr.hpp"
#include "ecut/cut_quadrature.hpp"
#include "ecut/dof_map.hpp"
#include "ecut/fields.hpp"

namespace ecut {

// Scaling of the patch jump penalty: gamma = c_gamma * hops, where hops
// grows with the strip width so the penalty keeps control over the whole
// extension region.
struct GhostPenaltyParams {
  double c_gamma = 1.0;
  double h = 0.0;        // mesh size entering the 1/h^2 scaling
  double delta_h = 0.0;  // strip width
  int hops = 1;          // ceil(1 + delta_h / h)
  double gamma() const { return c_gamma * hops; }

  static GhostPenaltyParams make(double c_gamma, double h, double delta_h);
};

// Mass matrix over the negative region of `quad`'s frame. Trial and test
// spaces may belong to different steps; the quadrature frame decides the
// integration domain. Every element with quadrature weight must have all
// three vertices in both maps, otherwise the previous domain sticks out of
// the current active mesh and assembly throws.
CsrMatrix assemble_cut_mass(const BackgroundMesh& mesh,
                            const CutQuadrature& quad, const DofMap& trial,
                            const DofMap& test);

// nu * grad(u).grad(v) - u * w.grad(v) over the negative region.
CsrMatrix assemble_convection_diffusion(const BackgroundMesh& mesh,
                                        const CutQuadrature& quad,
                                        const VectorField& velocity, double t,
                                        double nu, const DofMap& dofs);

// Direct jump penalty sum_F 1/h^2 int_{omega_F} [u][v] over the stabilized
// facets, where [v] is the difference of the affine extensions from the two
// patch elements. Vanishes on globally affine functions, in particular on
// constants, which is what keeps the scheme conservative.
CsrMatrix assemble_ghost_penalty(const BackgroundMesh& mesh,
                                 const ActiveMeshData& act,
                                 const GhostPenaltyParams& params,
                                 const DofMap& dofs);

std::vector<double> assemble_load(const BackgroundMesh& mesh,
                                  const CutQuadrature& quad,
                                  const ScalarField& f, double t,
                                  const DofMap& dofs);

// int_{omega_F} (E(u1) - E(u2))^2 for one interior facet patch, with u1, u2
// given by nodal values on the two elements separately (they need not agree
// on the shared edge). Exposed so the jump kernel can be probed with
// discontinuous data.
double patch_jump_energy(const BackgroundMesh& mesh, int facet,
                         const std::array<double, 3>& u1,
                         const std::array<double, 3>& u2);

}  // namespace ecut
