#include "ecut/stepping.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "ecut/analysis.hpp"
#include "ecut/p1.hpp"

namespace ecut {

namespace {

std::string format_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double integrate(const BackgroundMesh& mesh, const CutQuadrature& quad,
                 const std::vector<double>& u_global) {
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (quad.points[e].empty()) continue;
    const auto& v = mesh.elements[e];
    const P1Basis basis(mesh.element_triangle(e));
    double acc = 0.0;
    for (const QuadPoint& q : quad.points[e]) {
      const auto psi = basis.eval(q.x);
      acc += q.w * (u_global[v[0]] * psi[0] + u_global[v[1]] * psi[1] +
                    u_global[v[2]] * psi[2]);
    }
    total += acc;
  }
  return total;
}

double integrate_sq(const BackgroundMesh& mesh, const CutQuadrature& quad,
                    const std::vector<double>& u_global) {
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (quad.points[e].empty()) continue;
    const auto& v = mesh.elements[e];
    const P1Basis basis(mesh.element_triangle(e));
    double acc = 0.0;
    for (const QuadPoint& q : quad.points[e]) {
      const auto psi = basis.eval(q.x);
      const double val = u_global[v[0]] * psi[0] + u_global[v[1]] * psi[1] +
                         u_global[v[2]] * psi[2];
      acc += q.w * val * val;
    }
    total += acc;
  }
  return total;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

StepGeometry build_geometry(const CaseSpec& c, const SchemeConfig& cfg,
                            const BackgroundMesh& mesh, int n, double t) {
  StepGeometry geo;
  geo.frame = interpolate_levelset(c.phi, mesh, t);
  geo.active = build_active_mesh(geo.frame, mesh, cfg.delta_h(), cfg.dilation, n);
  geo.dofs = DofMap::from_vertices(geo.active.active_dofs,
                                   static_cast<int>(mesh.vertices.size()));
  geo.quad = build_cut_quadrature(geo.frame, mesh, cfg.quad_mass);
  if (cfg.check_reachability && !strip_reachable(geo.frame, geo.active, mesh))
    throw std::runtime_error(
        "step " + std::to_string(n) +
        ": a strip element cannot reach the interior through stabilized "
        "facets; the penalty does not control the extension");
  return geo;
}

bool active_touches_boundary(const BackgroundMesh& mesh,
                             const ActiveMeshData& act) {
  for (int e : act.active_elements)
    if (mesh.element_touches_boundary(e)) return true;
  return false;
}

struct StepPieces {
  StepGeometry geo;
  CsrMatrix system;
  std::vector<double> rhs;
  double source = 0.0;  // 1^T load vector
};

// Shared between the one-step and two-step schemes: geometry at t_n, the
// stiffness-like part A + nu S, the new mass block scaled by the leading
// weight, and the load.
StepPieces build_step(const SchemeState& state, const CaseSpec& c,
                      const SchemeConfig& cfg, const BackgroundMesh& mesh,
                      double leading_weight, double t_new) {
  const int n_new = state.n + 1;
  StepPieces p;
  p.geo = build_geometry(c, cfg, mesh, n_new, t_new);

  const CutQuadrature quad_t =
      build_cut_quadrature(p.geo.frame, mesh, cfg.quad_transport);

  const CsrMatrix mass =
      assemble_cut_mass(mesh, p.geo.quad, p.geo.dofs, p.geo.dofs);
  const CsrMatrix conv = assemble_convection_diffusion(
      mesh, quad_t, c.velocity, t_new, cfg.nu, p.geo.dofs);
  const CsrMatrix penalty = assemble_ghost_penalty(
      mesh, p.geo.active,
      GhostPenaltyParams::make(cfg.c_gamma, mesh.h_max, cfg.delta_h()),
      p.geo.dofs);

  p.system = csr_linear_combination({{leading_weight / cfg.dt, &mass},
                                     {1.0, &conv},
                                     {cfg.nu, &penalty}});
  p.rhs = assemble_load(mesh, quad_t, c.forcing, t_new, p.geo.dofs);
  p.source = sum(p.rhs);
  return p;
}

// rhs += (weight / dt) * M_coupling * u_old, where M_coupling integrates
// over the old slice's physical domain against the new test space. The old
// slice's own quadrature is reused verbatim, so the coupling sees exactly
// the region whose mass was recorded.
void add_old_domain_mass(std::vector<double>& rhs, const BackgroundMesh& mesh,
                         const TimeSlice& old_slice, const DofMap& test,
                         double weight, double dt) {
  const CsrMatrix coupling =
      assemble_cut_mass(mesh, old_slice.geo.quad, old_slice.geo.dofs, test);
  std::vector<double> u_local(old_slice.geo.dofs.size());
  for (int l = 0; l < old_slice.geo.dofs.size(); ++l)
    u_local[l] = old_slice.u[old_slice.geo.dofs.to_global[l]];
  const std::vector<double> contribution = coupling.apply(u_local);
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] += (weight / dt) * contribution[i];
}

}  // namespace

double SchemeConfig::delta_h() const {
  const double cd = c_delta < 0.0 ? (bdf_order == 2 ? 2.0 : 1.0) : c_delta;
  return cd * w_inf * dt;
}

int SchemeConfig::step_count() const {
  const double ratio = t_end / dt;
  const int n = static_cast<int>(std::lround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("t_end / dt = " + format_num(ratio) +
                                " is not a positive integer");
  return n;
}

std::vector<std::string> SchemeConfig::validate() const {
  if (bdf_order != 1 && bdf_order != 2)
    throw std::invalid_argument("bdf_order must be 1 or 2");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  if (!(w_inf >= 0.0)) throw std::invalid_argument("w_inf must be >= 0");
  simplex_rule(quad_mass);
  simplex_rule(quad_transport);
  simplex_rule(quad_error);
  step_count();

  std::vector<std::string> warnings;
  if (w_inf > 0.0 && dt >= nu / (w_inf * w_inf))
    warnings.push_back("dt = " + format_num(dt) +
                       " is not below nu / w_inf^2 = " +
                       format_num(nu / (w_inf * w_inf)) +
                       "; the stability theory assumes a smaller step");
  if (c_delta >= 0.0 && c_delta < 1.0)
    warnings.push_back("c_delta = " + format_num(c_delta) +
                       " < 1 cannot cover one step of domain motion; "
                       "containment may fail");
  if (c_delta >= 0.0 && bdf_order == 2 && c_delta < 2.0)
    warnings.push_back("c_delta = " + format_num(c_delta) +
                       " < 2 with the two-step scheme: the n-2 domain may "
                       "leave the strip");
  return warnings;
}

SchemeConfig make_config(const CaseSpec& c, int bdf_order, int level_t) {
  SchemeConfig cfg;
  cfg.bdf_order = bdf_order;
  cfg.dt = c.dt0 / static_cast<double>(1 << level_t);
  cfg.t_end = c.t_end;
  cfg.nu = c.nu;
  cfg.w_inf = c.w_inf;
  return cfg;
}

BackgroundMesh build_case_mesh(const CaseSpec& c, int level_x) {
  if (level_x < 0) throw std::invalid_argument("level_x must be >= 0");
  const double w = c.box.width(), h = c.box.height();
  // Cell counts are fixed at level 0 and doubled per level, so successive
  // levels refine by exactly two and the order computations are clean.
  const int nx0 = static_cast<int>(std::ceil(w / c.h0 - 1e-12));
  const int ny0 = static_cast<int>(std::ceil(h / c.h0 - 1e-12));
  return build_structured_mesh(c.box, nx0 << level_x, ny0 << level_x);
}

double MassLedger::max_abs_drift() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, std::abs(r.drift));
  return m;
}

double MassLedger::max_abs_scheme_residual() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, std::abs(r.scheme_residual));
  return m;
}

double RunReport::l2l2() const { return std::sqrt(l2l2_sq); }
double RunReport::l2h1() const { return std::sqrt(l2h1_sq); }

SchemeState initialize(const CaseSpec& c, const SchemeConfig& cfg,
                       const BackgroundMesh& mesh) {
  SchemeState state;
  state.n = 0;
  state.t = 0.0;
  state.cur.geo = build_geometry(c, cfg, mesh, 0, 0.0);

  state.cur.u.assign(mesh.vertices.size(), 0.0);
  for (int vid : state.cur.geo.active.active_dofs)
    state.cur.u[vid] = c.u_initial(mesh.vertices[vid]);
  state.cur.mass = integrate(mesh, state.cur.geo.quad, state.cur.u);

  MassLedgerRow row;
  row.n = 0;
  row.t = 0.0;
  row.mass = state.cur.mass;
  row.expected = state.cur.mass;
  state.ledger.rows.push_back(row);
  return state;
}

namespace {

StepRecord advance(SchemeState& state, const CaseSpec& c,
                   const SchemeConfig& cfg, const BackgroundMesh& mesh,
                   int order) {
  const int n_new = state.n + 1;
  const double t_new = n_new * cfg.dt;
  const double dt = cfg.dt;

  const double leading = order == 2 ? 1.5 : 1.0;
  StepPieces p = build_step(state, c, cfg, mesh, leading, t_new);

  check_containment(state.cur.geo.frame, p.geo.active, mesh, n_new);
  add_old_domain_mass(p.rhs, mesh, state.cur, p.geo.dofs,
                      order == 2 ? 2.0 : 1.0, dt);
  if (order == 2) {
    if (!state.prev)
      throw std::logic_error("two-step scheme started without history");
    check_containment(state.prev->geo.frame, p.geo.active, mesh, n_new);
    add_old_domain_mass(p.rhs, mesh, *state.prev, p.geo.dofs, -0.5, dt);
  }

  const std::vector<double> u_local = solve({p.system, p.rhs}, cfg.solver);
  const double solver_res = relative_residual(p.system, u_local, p.rhs);

  // Discrete mass identity, i.e. the scheme tested with v = 1, in mass
  // units. Column sums of the transport and penalty blocks vanish, so this
  // reduces to the weighted mass differences minus dt times the source.
  const std::vector<double> ku = p.system.apply(u_local);
  double identity = 0.0;
  for (std::size_t i = 0; i < ku.size(); ++i) identity += ku[i] - p.rhs[i];
  const double scheme_residual = identity * dt;

  std::vector<double> u_global(mesh.vertices.size(), 0.0);
  for (int l = 0; l < p.geo.dofs.size(); ++l)
    u_global[p.geo.dofs.to_global[l]] = u_local[l];

  const double mass = integrate(mesh, p.geo.quad, u_global);

  const MassLedgerRow& last = state.ledger.rows.back();
  MassLedgerRow row;
  row.n = n_new;
  row.t = t_new;
  row.mass = mass;
  row.source = p.source;
  if (order == 2) {
    const MassLedgerRow& older = state.ledger.rows[state.ledger.rows.size() - 2];
    row.expected = (4.0 * last.expected - older.expected + 2.0 * dt * p.source) / 3.0;
  } else {
    row.expected = last.expected + dt * p.source;
  }
  row.drift = mass - row.expected;
  row.scheme_residual = scheme_residual;
  state.ledger.rows.push_back(row);

  StepRecord rec;
  rec.n = n_new;
  rec.t = t_new;
  rec.dofs = p.geo.dofs.size();
  rec.measure = p.geo.quad.measure();
  rec.mass = mass;
  rec.drift = row.drift;
  rec.scheme_residual = scheme_residual;
  rec.solver_residual = solver_res;
  rec.l2_norm = std::sqrt(integrate_sq(mesh, p.geo.quad, u_global));
  rec.touches_boundary = active_touches_boundary(mesh, p.geo.active);

  if (cfg.compute_errors && c.u_exact && c.grad_u_exact) {
    const CutQuadrature quad_err =
        build_cut_quadrature(p.geo.frame, mesh, cfg.quad_error);
    const StepErrors e = step_errors(u_global, *c.u_exact, *c.grad_u_exact,
                                     t_new, mesh, quad_err);
    rec.err_l2_sq = e.l2_sq;
    rec.err_h1_sq = e.h1_sq;
  }

  state.prev = std::move(state.cur);
  state.cur.geo = std::move(p.geo);
  state.cur.u = std::move(u_global);
  state.cur.mass = mass;
  state.n = n_new;
  state.t = t_new;
  return rec;
}

}  // namespace

StepRecord bdf1_step(SchemeState& state, const CaseSpec& c,
                     const SchemeConfig& cfg, const BackgroundMesh& mesh) {
  return advance(state, c, cfg, mesh, 1);
}

StepRecord bdf2_step(SchemeState& state, const CaseSpec& c,
                     const SchemeConfig& cfg, const BackgroundMesh& mesh) {
  return advance(state, c, cfg, mesh, 2);
}

RunReport run(const CaseSpec& c, const SchemeConfig& cfg,
              const BackgroundMesh& mesh,
              const std::vector<StepObserver>& observers) {
  RunReport report;
  report.warnings = cfg.validate();
  const int steps = cfg.step_count();

  SchemeState state = initialize(c, cfg, mesh);

  StepRecord rec0;
  rec0.n = 0;
  rec0.t = 0.0;
  rec0.dofs = state.cur.geo.dofs.size();
  rec0.measure = state.cur.geo.quad.measure();
  rec0.mass = state.cur.mass;
  rec0.l2_norm = std::sqrt(integrate_sq(mesh, state.cur.geo.quad, state.cur.u));
  rec0.touches_boundary = active_touches_boundary(mesh, state.cur.geo.active);
  if (cfg.compute_errors && c.u_exact && c.grad_u_exact) {
    const CutQuadrature quad_err =
        build_cut_quadrature(state.cur.geo.frame, mesh, cfg.quad_error);
    const StepErrors e = step_errors(state.cur.u, *c.u_exact, *c.grad_u_exact,
                                     0.0, mesh, quad_err);
    rec0.err_l2_sq = e.l2_sq;
    rec0.err_h1_sq = e.h1_sq;
  }
  report.initial_l2_norm = rec0.l2_norm;
  report.max_l2_norm = rec0.l2_norm;
  if (rec0.touches_boundary) ++report.boundary_touch_steps;
  report.steps.push_back(rec0);
  for (const auto& obs : observers) obs(state, rec0);

  for (int n = 1; n <= steps; ++n) {
    const bool two_step = cfg.bdf_order == 2 && n > 1;
    const StepRecord rec = advance(state, c, cfg, mesh, two_step ? 2 : 1);
    report.l2l2_sq += cfg.dt * rec.err_l2_sq;
    report.l2h1_sq += cfg.dt * rec.err_h1_sq;
    report.max_l2_norm = std::max(report.max_l2_norm, rec.l2_norm);
    report.max_solver_residual =
        std::max(report.max_solver_residual, rec.solver_residual);
    if (rec.touches_boundary) ++report.boundary_touch_steps;
    report.steps.push_back(rec);
    for (const auto& obs : observers) obs(state, rec);
  }
  if (report.boundary_touch_steps > 0)
    report.warnings.push_back(
        "active mesh touched the background boundary in " +
        std::to_string(report.boundary_touch_steps) + " of " +
        std::to_string(steps + 1) + " steps; enlarge the box if the "
        "extension must stay interior");

  report.ledger = state.ledger;
  return report;
}

}  // namespace ecut
