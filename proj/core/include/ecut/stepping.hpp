#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecut/active_mesh.hpp"
#include "ecut/assembly.hpp"
#include "ecut/cases.hpp"
#include "ecut/cut_quadrature.hpp"
#include "ecut/dof_map.hpp"
#include "ecut/solver.hpp"

namespace ecut {

struct SchemeConfig {
  int bdf_order = 1;  // 1 or 2
  double dt = 0.0;
  double t_end = 0.0;
  double nu = 0.0;
  double w_inf = 0.0;

  // Strip width delta_h = c_delta * w_inf * dt. The default covers one
  // displacement for BDF1 and two for BDF2, since the two-step scheme
  // reaches back over two domains.
  double c_delta = -1.0;  // < 0: pick 1.0 (BDF1) or 2.0 (BDF2)
  double c_gamma = 1.0;

  int quad_mass = 2;
  int quad_transport = 4;  // also the load
  int quad_error = 6;

  SolverOptions solver;
  DilationMode dilation = DilationMode::Proxy;
  bool compute_errors = true;
  bool check_reachability = true;

  double delta_h() const;
  int step_count() const;  // t_end / dt, validated integral
  // Problems are filled in from the case; returns startup warnings.
  std::vector<std::string> validate() const;
};

// Scheme parameters at time refinement level level_t: dt = dt0 / 2^level_t.
SchemeConfig make_config(const CaseSpec& c, int bdf_order, int level_t);

// Background mesh at space refinement level level_x. Cell counts are fixed
// once from h0 and doubled per level, keeping the refinement factor exact.
BackgroundMesh build_case_mesh(const CaseSpec& c, int level_x);

struct MassLedgerRow {
  int n = 0;
  double t = 0.0;
  double mass = 0.0;     // int_{Omega_h^n} u_h
  double source = 0.0;   // sum of the load vector at step n
  double expected = 0.0; // mass propagated exactly through the scheme weights
  double drift = 0.0;    // mass - expected
  double scheme_residual = 0.0;  // discrete identity tested with v = 1
};

struct MassLedger {
  std::vector<MassLedgerRow> rows;
  double max_abs_drift() const;
  double max_abs_scheme_residual() const;
};

struct StepGeometry {
  LevelSetFrame frame;
  ActiveMeshData active;
  DofMap dofs;
  CutQuadrature quad;  // mass-degree rule, kept for the next step's coupling
};

struct TimeSlice {
  StepGeometry geo;
  std::vector<double> u;  // background-vertex indexed, zero off the dofs
  double mass = 0.0;
};

struct SchemeState {
  int n = 0;
  double t = 0.0;
  TimeSlice cur;
  std::optional<TimeSlice> prev;  // one step older than cur
  MassLedger ledger;
};

struct StepRecord {
  int n = 0;
  double t = 0.0;
  int dofs = 0;
  double measure = 0.0;
  double mass = 0.0;
  double drift = 0.0;
  double scheme_residual = 0.0;
  double solver_residual = 0.0;
  double l2_norm = 0.0;
  double err_l2_sq = 0.0;  // step errors, 0 when no exact solution
  double err_h1_sq = 0.0;
  bool touches_boundary = false;
};

// Called after every accepted step; must not mutate the state.
using StepObserver = std::function<void(const SchemeState&, const StepRecord&)>;

struct RunReport {
  std::vector<StepRecord> steps;  // index 0 is the initial state
  std::vector<std::string> warnings;
  MassLedger ledger;
  double l2l2_sq = 0.0;  // sum_n dt * ||u - u_ex||^2, steps 1..N
  double l2h1_sq = 0.0;  // same with the gradient
  double initial_l2_norm = 0.0;
  double max_l2_norm = 0.0;
  double max_solver_residual = 0.0;
  int boundary_touch_steps = 0;

  double l2l2() const;
  double l2h1() const;
};

SchemeState initialize(const CaseSpec& c, const SchemeConfig& cfg,
                       const BackgroundMesh& mesh);

// One implicit Euler step: the new mass matrix couples against the old
// domain's quadrature, no transfer operator anywhere.
StepRecord bdf1_step(SchemeState& state, const CaseSpec& c,
                     const SchemeConfig& cfg, const BackgroundMesh& mesh);

// Two-step backward differentiation, weights 3/2, -2, 1/2 over the three
// most recent domains. Requires state.prev.
StepRecord bdf2_step(SchemeState& state, const CaseSpec& c,
                     const SchemeConfig& cfg, const BackgroundMesh& mesh);

// Full time loop. BDF2 runs its first step as BDF1 on the wide strip.
RunReport run(const CaseSpec& c, const SchemeConfig& cfg,
              const BackgroundMesh& mesh,
              const std::vector<StepObserver>& observers = {});

}  // namespace ecut
