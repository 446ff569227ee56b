// Microbenchmarks for the hot paths: classification, cut quadrature,
// matrix assembly, and the whole time loop at desk scale. The argument is
// the space refinement level of the travelling-circle mesh.

#include <benchmark/benchmark.h>

#include "ecut/active_mesh.hpp"
#include "ecut/assembly.hpp"
#include "ecut/cases.hpp"
#include "ecut/cut_quadrature.hpp"
#include "ecut/dof_map.hpp"
#include "ecut/levelset.hpp"
#include "ecut/stepping.hpp"

using namespace ecut;

namespace {

struct Scene {
  CaseSpec c;
  BackgroundMesh mesh;
  LevelSetFrame frame;
  ActiveMeshData act;
  DofMap dofs;

  explicit Scene(int level, double delta = 0.1)
      : c(make_case("travelling-circle")),
        mesh(build_case_mesh(c, level)),
        frame(interpolate_levelset(c.phi, mesh, 0.0)),
        act(build_active_mesh(frame, mesh, delta)),
        dofs(DofMap::from_vertices(act.active_dofs, mesh.vertex_count())) {}
};

void BM_Classify(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    LevelSetFrame f = interpolate_levelset(s.c.phi, s.mesh, 0.1);
    benchmark::DoNotOptimize(f.element_class.data());
  }
}
BENCHMARK(BM_Classify)->DenseRange(1, 3);

void BM_CutQuadrature(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CutQuadrature q = build_cut_quadrature(s.frame, s.mesh, 2);
    benchmark::DoNotOptimize(q.points.data());
  }
}
BENCHMARK(BM_CutQuadrature)->DenseRange(1, 3);

void BM_MassAssembly(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  const CutQuadrature quad = build_cut_quadrature(s.frame, s.mesh, 2);
  for (auto _ : state) {
    CsrMatrix m = assemble_cut_mass(s.mesh, quad, s.dofs, s.dofs);
    benchmark::DoNotOptimize(m.values.data());
  }
}
BENCHMARK(BM_MassAssembly)->DenseRange(1, 3);

void BM_TransportAssembly(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  const CutQuadrature quad = build_cut_quadrature(s.frame, s.mesh, 4);
  for (auto _ : state) {
    CsrMatrix k = assemble_convection_diffusion(s.mesh, quad, s.c.velocity,
                                                0.0, s.c.nu, s.dofs);
    benchmark::DoNotOptimize(k.values.data());
  }
}
BENCHMARK(BM_TransportAssembly)->DenseRange(1, 3);

void BM_GhostPenalty(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  const GhostPenaltyParams gp =
      GhostPenaltyParams::make(1.0, s.mesh.h_max, 0.1);
  for (auto _ : state) {
    CsrMatrix m = assemble_ghost_penalty(s.mesh, s.act, gp, s.dofs);
    benchmark::DoNotOptimize(m.values.data());
  }
}
BENCHMARK(BM_GhostPenalty)->DenseRange(1, 3);

void BM_TimeLoop(benchmark::State& state) {
  const CaseSpec c = make_case("travelling-circle");
  const BackgroundMesh mesh = build_case_mesh(c, static_cast<int>(state.range(0)));
  SchemeConfig cfg = make_config(c, 1, 0);
  cfg.compute_errors = false;
  for (auto _ : state) {
    RunReport rep = run(c, cfg, mesh);
    benchmark::DoNotOptimize(rep.steps.data());
  }
}
BENCHMARK(BM_TimeLoop)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
