#pragma once

#include <string>
#include <vector>

#include "ecut/cut_quadrature.hpp"
#include "ecut/fields.hpp"
#include "ecut/mesh.hpp"
#include "ecut/stepping.hpp"

namespace ecut {

struct StepErrors {
  double l2_sq = 0.0;
  double h1_sq = 0.0;
};

// ||u_h - u_ex||^2 and ||grad(u_h - u_ex)||^2 over the quadrature's region.
StepErrors step_errors(const std::vector<double>& u_global,
                       const ScalarField& u_exact,
                       const VectorField& grad_u_exact, double t,
                       const BackgroundMesh& mesh, const CutQuadrature& quad);

struct ErrorAccumulator {
  double l2l2_sq = 0.0;
  double l2h1_sq = 0.0;
  void add(double dt, const StepErrors& e) {
    l2l2_sq += dt * e.l2_sq;
    l2h1_sq += dt * e.h1_sq;
  }
};

// Orders from a sequence refined by a factor 2 per entry:
// eoc_k = log2(e_{k-1} / e_k). Non-finite or non-positive errors give NaN.
std::vector<double> eoc_sequence(const std::vector<double>& errors);

// Least squares slope of log2(e) against log2(h).
double fit_log2_slope(const std::vector<double>& h,
                      const std::vector<double>& e);

// Error grid over (time level, space level) refinement, plus the derived
// order rows and columns in the layout of the reference tables:
//  - eoc_t: per row, between consecutive rows at the finest space column;
//  - eoc_x: per column, between consecutive columns on the finest time row;
//  - eoc_xt: along the simultaneous-refinement diagonal anchored at the
//    bottom-right corner;
//  - eoc_xxt: the same diagonal cells against one time and two space
//    levels coarser, for methods of order dt^2 ~ h^2 measured in the
//    gradient norm.
struct ConvergenceTable {
  std::string title;
  int lt_count = 0;
  int lx_count = 0;
  std::vector<double> errors;  // row-major, NaN = unavailable

  double& at(int lt, int lx) { return errors[lt * lx_count + lx]; }
  double at(int lt, int lx) const { return errors[lt * lx_count + lx]; }

  std::vector<double> eoc_t() const;   // size lt_count, first entry NaN
  std::vector<double> eoc_x() const;   // size lx_count, first entry NaN
  std::vector<double> eoc_xt() const;  // size lx_count
  std::vector<double> eoc_xxt() const; // size lx_count

  // Layout: header row, one row per time level with trailing eoc_t, then
  // footer rows. Values at three significant digits; use full = true for a
  // lossless sidecar.
  std::string render_csv(bool with_xxt = false, bool full = false) const;
};

ConvergenceTable parse_table_csv(const std::string& text);

struct ConservationReport {
  bool pass = true;
  double tolerance = 0.0;
  double max_abs_drift = 0.0;
  double max_abs_scheme_residual = 0.0;
  int worst_step = -1;  // first step over tolerance, -1 if none
};

ConservationReport conservation_report(const MassLedger& ledger,
                                       double tolerance = 1e-10);

}  // namespace ecut
