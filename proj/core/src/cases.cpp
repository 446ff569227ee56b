#include "ecut/cases.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ecut {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sin(z)/z with the removable singularity expanded.
double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// ---------------------------------------------------------------------------
// Travelling circle: radius 1/2 disk oscillating horizontally. The profile
// cos^2(pi r) rides along, so u_t + w . grad u = 0 and only diffusion needs
// a source. The radial derivative vanishes at r = 1/2, which makes the data
// compatible with the zero-flux boundary.

constexpr double kCircleNu = 1.0;

Vec2 circle_center(double t) { return {std::sin(2.0 * kPi * t) / kPi, 0.0}; }

double circle_u(Vec2 x, double t) {
  const double r = norm(x - circle_center(t));
  const double c = std::cos(kPi * r);
  return c * c;
}

Vec2 circle_grad_u(Vec2 x, double t) {
  const Vec2 d = x - circle_center(t);
  const double r = norm(d);
  // grad cos^2(pi r) = -pi sin(2 pi r) d / r, smooth through r = 0.
  const double factor = -kPi * 2.0 * kPi * sinc(2.0 * kPi * r);
  return factor * d;
}

double circle_f(Vec2 x, double t) {
  const double r = norm(x - circle_center(t));
  // -lap u = 2 pi^2 cos(2 pi r) + pi sin(2 pi r) / r; the value at the
  // center is 4 pi^2.
  return kCircleNu * (2.0 * kPi * kPi * std::cos(2.0 * kPi * r) +
                      2.0 * kPi * kPi * sinc(2.0 * kPi * r));
}

// ---------------------------------------------------------------------------
// Kite: the circle's horizontal shift depends on x2, deforming it. With
// g(y) the shift profile, d = (x1 - t g(x2), x2) and r = |d|:
//   u  = cos(pi r / R) sin(pi t / 2)
//   w  = (g(x2), 0),   d_t r + w . grad r = 0
// so the transport part of f collapses to the explicit time derivative.

struct KiteShift {
  double (*g)(double);
  double (*dg)(double);
  double (*ddg)(double);
};

double kite_sym_g(double y) { return 1.0 - y * y; }
double kite_sym_dg(double y) { return -2.0 * y; }
double kite_sym_ddg(double) { return -2.0; }

double kite_printed_g(double y) { return (1.0 - y) * (1.0 - y); }
double kite_printed_dg(double y) { return -2.0 * (1.0 - y); }
double kite_printed_ddg(double) { return 2.0; }

constexpr double kKiteR = 1.0;
constexpr double kKiteNu = 0.2;

Vec2 kite_d(const KiteShift& s, Vec2 x, double t) {
  return {x.x - t * s.g(x.y), x.y};
}

double kite_u(const KiteShift& s, Vec2 x, double t) {
  const double r = norm(kite_d(s, x, t));
  return std::cos(kPi * r / kKiteR) * std::sin(t * kPi / 2.0);
}

Vec2 kite_grad_u(const KiteShift& s, Vec2 x, double t) {
  const Vec2 d = kite_d(s, x, t);
  const double r = norm(d);
  const double st = std::sin(t * kPi / 2.0);
  // grad r = (d1, d2 - t g' d1) / r; C'(r)/r stays bounded via sinc.
  const double q = d.y - t * s.dg(x.y) * d.x;
  const double cr = -(kPi / kKiteR) * (kPi / kKiteR) * sinc(kPi * r / kKiteR);
  return (st * cr) * Vec2{d.x, q};
}

double kite_f(const KiteShift& s, Vec2 x, double t) {
  const Vec2 d = kite_d(s, x, t);
  const double r = norm(d);
  const double st = std::sin(t * kPi / 2.0);
  const double ct = std::cos(t * kPi / 2.0);
  const double k = kPi / kKiteR;

  const double dg = s.dg(x.y), ddg = s.ddg(x.y);
  const double q = d.y - t * dg * d.x;
  // Material derivative d_t u + w . grad u: r rides with the flow, so only
  // the explicit sin(pi t / 2) factor survives.
  const double mat_u = (kPi / 2.0) * ct * std::cos(k * r);

  // lap u = st [ C'' |grad r|^2 + C' lap r ] with C(r) = cos(k r),
  // |grad r|^2 = (d1^2 + q^2) / r^2,
  // lap r = (2 - t g'' d1 + t^2 g'^2) / r - (d1^2 + q^2) / r^3.
  const double grad_r_sq_num = d.x * d.x + q * q;  // = |grad r|^2 * r^2
  const double cpp = -k * k * std::cos(k * r);
  const double a = 2.0 - t * ddg * d.x + t * t * dg * dg;
  double lap_u;
  if (r < 1e-12) {
    // The direction-dependent terms cancel in the limit: cpp -> -k^2
    // matches k^2 sinc(kr) -> k^2, leaving -k^2 a.
    lap_u = st * (-k * k * a);
  } else {
    const double sinc_kr = sinc(k * r);
    const double cp_lap_r =
        -k * k * sinc_kr * a + k * k * sinc_kr * grad_r_sq_num / (r * r);
    lap_u = st * (cpp * grad_r_sq_num / (r * r) + cp_lap_r);
  }
  return mat_u - kKiteNu * lap_u;
}

// ---------------------------------------------------------------------------
// Colliding circles: two disks translating vertically through each other.
// Top and bottom halves swap direction halfway through; at t = T/2 the
// early branch applies.

constexpr double kCollT = 1.5;
constexpr double kCollR = 0.5;

Vec2 coll_s1(double t) { return {0.0, t - 0.75}; }
Vec2 coll_s2(double t) { return {0.0, 0.75 - t}; }

double coll_phi(Vec2 x, double t) {
  return std::min(norm(x - coll_s1(t)), norm(x - coll_s2(t))) - kCollR;
}

Vec2 coll_w(Vec2 x, double t) {
  const bool early = t <= kCollT / 2.0;
  const bool top = x.y > 0.0;
  const double dir = (top == early) ? -1.0 : 1.0;
  return {0.0, dir};
}

}  // namespace

CaseSpec travelling_circle() {
  CaseSpec c;
  c.name = "travelling-circle";
  c.box = {{-0.7, -0.7}, {0.9, 0.7}};
  c.t_end = 0.2;
  c.nu = kCircleNu;
  c.w_inf = 2.0;
  c.h0 = 0.4;
  c.dt0 = 0.1;
  c.phi = [](Vec2 x, double t) { return norm(x - circle_center(t)) - 0.5; };
  c.velocity = [](Vec2, double t) {
    return Vec2{2.0 * std::cos(2.0 * kPi * t), 0.0};
  };
  c.forcing = circle_f;
  c.u_exact = circle_u;
  c.grad_u_exact = circle_grad_u;
  c.u_initial = [](Vec2 x) { return circle_u(x, 0.0); };
  c.smooth_region = [](Vec2 x, double t) {
    return norm(x - circle_center(t)) > 1e-3;
  };
  return c;
}

CaseSpec kite(KiteVariant variant) {
  const KiteShift shift = variant == KiteVariant::Symmetric
                              ? KiteShift{kite_sym_g, kite_sym_dg, kite_sym_ddg}
                              : KiteShift{kite_printed_g, kite_printed_dg,
                                          kite_printed_ddg};
  CaseSpec c;
  c.name = variant == KiteVariant::Symmetric ? "kite" : "kite-printed";
  c.box = {{-1.5, -1.5}, {2.5, 1.5}};
  c.t_end = 1.0;
  c.nu = kKiteNu;
  // sup over the box of |g|: the symmetric profile peaks at |1 - 1.5^2|.
  c.w_inf = variant == KiteVariant::Symmetric ? 1.25 : 6.25;
  c.h0 = 0.4;
  c.dt0 = 0.5;
  c.phi = [shift](Vec2 x, double t) {
    return norm(kite_d(shift, x, t)) - kKiteR;
  };
  c.velocity = [shift](Vec2 x, double) { return Vec2{shift.g(x.y), 0.0}; };
  c.forcing = [shift](Vec2 x, double t) { return kite_f(shift, x, t); };
  c.u_exact = [shift](Vec2 x, double t) { return kite_u(shift, x, t); };
  c.grad_u_exact = [shift](Vec2 x, double t) {
    return kite_grad_u(shift, x, t);
  };
  c.u_initial = [](Vec2) { return 0.0; };
  c.smooth_region = [shift](Vec2 x, double t) {
    return norm(kite_d(shift, x, t)) > 1e-3;
  };
  return c;
}

CaseSpec colliding_circles() {
  CaseSpec c;
  c.name = "colliding-circles";
  c.box = {{-0.6, -1.35}, {0.6, 1.35}};
  c.t_end = kCollT;
  c.nu = 0.1;
  c.w_inf = 1.0;
  c.h0 = 0.07;
  c.dt0 = kCollT / 80.0;
  c.phi = coll_phi;
  c.velocity = coll_w;
  c.forcing = [](Vec2, double) { return 0.0; };
  c.u_initial = [](Vec2 x) {
    if (x.y > 0.0) return 1.0;
    if (x.y < 0.0) return -1.0;
    return 0.0;
  };
  c.smooth_region = [](Vec2 x, double t) {
    // Stay away from the half-space switch, the min kink, and T/2.
    if (std::abs(x.y) < 0.05) return false;
    if (std::abs(t - kCollT / 2.0) < 1e-3) return false;
    const double d1 = norm(x - coll_s1(t)), d2 = norm(x - coll_s2(t));
    if (std::abs(d1 - d2) < 0.05) return false;
    return std::min(d1, d2) > 1e-3;
  };
  return c;
}

CaseSpec zero_forcing(CaseSpec c) {
  c.name += "-f0";
  c.forcing = [](Vec2, double) { return 0.0; };
  c.u_exact.reset();
  c.grad_u_exact.reset();
  return c;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {
      "travelling-circle", "kite", "kite-printed", "colliding-circles"};
  return names;
}

CaseSpec make_case(const std::string& name) {
  if (name == "travelling-circle") return travelling_circle();
  if (name == "kite") return kite(KiteVariant::Symmetric);
  if (name == "kite-printed") return kite(KiteVariant::Printed);
  if (name == "colliding-circles") return colliding_circles();
  std::string msg = "unknown case '" + name + "', available:";
  for (const auto& n : case_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------

namespace {

double fd_time(const ScalarField& f, Vec2 x, double t, double h) {
  return (f(x, t + h) - f(x, t - h)) / (2.0 * h);
}

Vec2 fd_grad(const ScalarField& f, Vec2 x, double t, double h) {
  return {(f({x.x + h, x.y}, t) - f({x.x - h, x.y}, t)) / (2.0 * h),
          (f({x.x, x.y + h}, t) - f({x.x, x.y - h}, t)) / (2.0 * h)};
}

double fd_laplace(const ScalarField& f, Vec2 x, double t, double h) {
  return (f({x.x + h, x.y}, t) + f({x.x - h, x.y}, t) + f({x.x, x.y + h}, t) +
          f({x.x, x.y - h}, t) - 4.0 * f(x, t)) /
         (h * h);
}

}  // namespace

CaseValidation validate_case(const CaseSpec& c, unsigned seed, int samples) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(c.box.lo.x, c.box.hi.x);
  std::uniform_real_distribution<double> uy(c.box.lo.y, c.box.hi.y);
  // Keep a margin from t = 0 and t = T so central differences stay inside.
  std::uniform_real_distribution<double> ut(0.05 * c.t_end, 0.95 * c.t_end);

  CaseValidation v;
  const double h1 = 1e-6;  // first derivatives
  const double h2 = 1e-4;  // second derivatives
  int accepted = 0;
  int attempts = 0;
  while (accepted < samples && attempts < samples * 1000) {
    ++attempts;
    const Vec2 x{ux(rng), uy(rng)};
    const double t = ut(rng);
    if (!c.smooth_region || !c.smooth_region(x, t)) continue;
    if (c.phi(x, t) > -0.05) continue;  // sample strictly inside

    const Vec2 w = c.velocity(x, t);
    const double divw =
        (c.velocity({x.x + h1, x.y}, t).x - c.velocity({x.x - h1, x.y}, t).x) /
            (2.0 * h1) +
        (c.velocity({x.x, x.y + h1}, t).y - c.velocity({x.x, x.y - h1}, t).y) /
            (2.0 * h1);
    v.max_divergence = std::max(v.max_divergence, std::abs(divw));

    const double dphi = fd_time(c.phi, x, t, h1);
    const Vec2 gphi = fd_grad(c.phi, x, t, h1);
    v.max_transport_residual =
        std::max(v.max_transport_residual, std::abs(dphi + dot(w, gphi)));

    if (c.u_exact) {
      const ScalarField& u = *c.u_exact;
      const double ut_fd = fd_time(u, x, t, h1);
      const Vec2 gu = fd_grad(u, x, t, h1);
      const double lap = fd_laplace(u, x, t, h2);
      const double res =
          ut_fd + dot(w, gu) + u(x, t) * divw - c.nu * lap - c.forcing(x, t);
      v.max_pde_residual = std::max(v.max_pde_residual, std::abs(res));
      if (c.grad_u_exact) {
        const Vec2 ga = (*c.grad_u_exact)(x, t);
        v.max_gradient_error =
            std::max({v.max_gradient_error, std::abs(ga.x - gu.x),
                      std::abs(ga.y - gu.y)});
      }
    }
    ++accepted;
  }
  if (accepted < samples)
    throw std::runtime_error("validate_case: could not sample the domain");

  if (v.max_pde_residual > 1e-4)
    throw std::runtime_error("validate_case(" + c.name +
                             "): forcing is inconsistent with the data, "
                             "residual " +
                             std::to_string(v.max_pde_residual));
  if (v.max_gradient_error > 1e-5)
    throw std::runtime_error("validate_case(" + c.name +
                             "): analytic gradient mismatch");
  if (v.max_transport_residual > 1e-6)
    throw std::runtime_error("validate_case(" + c.name +
                             "): level set does not follow the velocity");
  if (v.max_divergence > 1e-9)
    throw std::runtime_error("validate_case(" + c.name +
                             "): velocity is not divergence free");
  return v;
}

}  // namespace ecut
