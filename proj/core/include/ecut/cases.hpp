#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecut/fields.hpp"

namespace ecut {

// One benchmark problem: geometry motion, transport field, data, and the
// reference discretization parameters the convergence studies refine from.
struct CaseSpec {
  std::string name;
  Rect box;
  double t_end = 0.0;
  double nu = 0.0;
  double w_inf = 0.0;  // analytic bound on |velocity| over the box
  double h0 = 0.0;     // coarsest mesh size
  double dt0 = 0.0;    // coarsest time step

  ScalarField phi;
  VectorField velocity;
  ScalarField forcing;
  std::function<double(Vec2)> u_initial;
  std::optional<ScalarField> u_exact;
  std::optional<VectorField> grad_u_exact;

  // Where the smoothness checks may sample; excludes kinks of min-type
  // level sets and switching lines of piecewise velocities.
  std::function<bool(Vec2, double)> smooth_region;
};

// The moving-circle geometry deforming into a kite. The printed variant
// drives the lower tip with (1 - y)^2 t, which pushes the interface out of
// the background box before t = 1; the symmetric variant (1 - y^2) t keeps
// the geometry inside and symmetric and is the default.
enum class KiteVariant { Symmetric, Printed };

CaseSpec travelling_circle();
CaseSpec kite(KiteVariant variant = KiteVariant::Symmetric);
CaseSpec colliding_circles();

// f := 0 and the exact solution dropped; for decay/stability experiments.
CaseSpec zero_forcing(CaseSpec c);

const std::vector<std::string>& case_names();
CaseSpec make_case(const std::string& name);  // throws listing valid names

struct CaseValidation {
  double max_pde_residual = 0.0;       // d_t u + div(u w) - nu lap u - f
  double max_gradient_error = 0.0;     // analytic gradient vs differences
  double max_transport_residual = 0.0; // d_t phi + w . grad phi
  double max_divergence = 0.0;         // div w
};

// Finite-difference spot checks of the analytic data at random sample
// points inside the domain; throws when any residual is out of tolerance.
CaseValidation validate_case(const CaseSpec& c, unsigned seed = 20260819,
                             int samples = 100);

}  // namespace ecut
