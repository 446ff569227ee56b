// Command line driver: single runs with CSV/VTK artifacts and convergence
// sweeps over (time level, space level) grids.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ecut/analysis.hpp"
#include "ecut/cases.hpp"
#include "ecut/io.hpp"
#include "ecut/stepping.hpp"
#include "ecut/vtk.hpp"

using namespace ecut;

namespace {

struct CommonOpts {
  std::string case_name = "travelling-circle";
  int bdf = 1;
  double nu = 0.0;       // 0: keep the case value
  double c_delta = -1.0;  // <0: scheme default
  double c_gamma = 1.0;
  int quad_mass = 2;
  int quad_transport = 4;
  int quad_error = 6;
  double solver_tol = 1e-12;
  std::string solver = "direct";
  bool f_zero = false;
  std::string out = "out";
  bool deterministic = true;
  std::string config_path;
};

// Flat key=value file where keys are the long option names without the
// leading dashes. Values only fill options the command line left untouched,
// so flags always win. Unknown keys are usage errors.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* op = cmd->get_option_no_throw("--" + key);
    if (op == nullptr || key == "config")
      throw std::invalid_argument(path + ": unknown config key '" + key + "'");
    if (op->count() > 0) continue;
    op->add_result(value);
    op->run_callback();
  }
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--case", o.case_name, "benchmark case name")
      ->default_val(o.case_name);
  cmd->add_option("--bdf", o.bdf, "time scheme order, 1 or 2")
      ->check(CLI::Range(1, 2))
      ->default_val(o.bdf);
  cmd->add_option("--nu", o.nu,
                  "diffusion override (manufactured errors become "
                  "meaningless, the scheme itself stays valid)");
  cmd->add_option("--c-delta", o.c_delta,
                  "strip width factor; negative selects the scheme default");
  cmd->add_option("--c-gamma", o.c_gamma, "penalty strength factor")
      ->default_val(o.c_gamma);
  cmd->add_option("--quad-mass", o.quad_mass, "mass/penalty rule degree");
  cmd->add_option("--quad-transport", o.quad_transport,
                  "transport/load rule degree");
  cmd->add_option("--quad-error", o.quad_error, "error norm rule degree");
  cmd->add_option("--solver-tol", o.solver_tol, "relative residual bound");
  cmd->add_option("--solver", o.solver, "linear solver")
      ->check(CLI::IsMember({"direct", "bicgstab"}))
      ->default_val(o.solver);
  cmd->add_flag("--f-zero", o.f_zero, "drop the forcing (decay experiments)");
  cmd->add_option("--out", o.out, "output directory")->default_val(o.out);
  cmd->add_option("--deterministic", o.deterministic,
                  "accepted for config compatibility; outputs are always "
                  "deterministic");
  cmd->add_option("--config", o.config_path,
                  "flat key=value config file, flags override");
}

CaseSpec load_case(const CommonOpts& o) {
  CaseSpec c = make_case(o.case_name);
  if (o.f_zero) c = zero_forcing(std::move(c));
  if (o.nu > 0.0) c.nu = o.nu;
  return c;
}

SchemeConfig build_scheme(const CaseSpec& c, const CommonOpts& o, int lt,
                          double dt_override) {
  SchemeConfig cfg = make_config(c, o.bdf, lt);
  if (dt_override > 0.0) cfg.dt = dt_override;
  cfg.c_delta = o.c_delta;
  cfg.c_gamma = o.c_gamma;
  cfg.quad_mass = o.quad_mass;
  cfg.quad_transport = o.quad_transport;
  cfg.quad_error = o.quad_error;
  cfg.solver.tolerance = o.solver_tol;
  cfg.solver.method =
      o.solver == "bicgstab" ? SolverMethod::BiCgStab : SolverMethod::Direct;
  return cfg;
}

void append_num(std::string& s, double v, bool full) {
  char b[40];
  std::snprintf(b, sizeof b, full ? "%.17g" : "%.2e", v);
  s += b;
}

std::string report_csv(const RunReport& rep, bool full) {
  std::string s =
      "n,t,dofs,measure,mass,drift,scheme_residual,solver_residual,l2_norm,"
      "err_l2,err_h1,touches_boundary\n";
  for (const StepRecord& r : rep.steps) {
    s += std::to_string(r.n) + ',';
    append_num(s, r.t, full);
    s += ',' + std::to_string(r.dofs) + ',';
    append_num(s, r.measure, full);
    s += ',';
    append_num(s, r.mass, full);
    s += ',';
    append_num(s, r.drift, full);
    s += ',';
    append_num(s, r.scheme_residual, full);
    s += ',';
    append_num(s, r.solver_residual, full);
    s += ',';
    append_num(s, r.l2_norm, full);
    s += ',';
    append_num(s, std::sqrt(r.err_l2_sq), full);
    s += ',';
    append_num(s, std::sqrt(r.err_h1_sq), full);
    s += ',';
    s += r.touches_boundary ? '1' : '0';
    s += '\n';
  }
  return s;
}

std::string ledger_csv(const MassLedger& ledger, bool full) {
  std::string s = "n,t,mass,source,expected,drift,scheme_residual\n";
  for (const MassLedgerRow& r : ledger.rows) {
    s += std::to_string(r.n) + ',';
    append_num(s, r.t, full);
    s += ',';
    append_num(s, r.mass, full);
    s += ',';
    append_num(s, r.source, full);
    s += ',';
    append_num(s, r.expected, full);
    s += ',';
    append_num(s, r.drift, full);
    s += ',';
    append_num(s, r.scheme_residual, full);
    s += '\n';
  }
  return s;
}

int cmd_run(const CommonOpts& o, int lt, int lx, double target_h, int dt_steps,
            int vtk_every) {
  const CaseSpec c = load_case(o);
  const BackgroundMesh mesh = target_h > 0.0
                                  ? build_structured_mesh(c.box, target_h)
                                  : build_case_mesh(c, lx);
  const double dt_override = dt_steps > 0 ? c.t_end / dt_steps : 0.0;
  const SchemeConfig cfg = build_scheme(c, o, lt, dt_override);

  ensure_directory(o.out);
  std::vector<StepObserver> observers;
  if (vtk_every > 0) {
    observers.push_back([&](const SchemeState& s, const StepRecord& r) {
      if (r.n % vtk_every != 0) return;
      char name[32];
      std::snprintf(name, sizeof name, "u_%05d.vtk", r.n);
      std::vector<double> physical(mesh.element_count()),
          strip(mesh.element_count()), active(mesh.element_count());
      for (int e = 0; e < mesh.element_count(); ++e) {
        physical[e] =
            s.cur.geo.frame.element_class[e] != ElemClass::Pos ? 1.0 : 0.0;
        strip[e] = s.cur.geo.active.is_strip[e];
        active[e] = s.cur.geo.active.is_active[e];
      }
      write_vtk(o.out + "/" + name, mesh, {{"u_h", s.cur.u}},
                {{"physical", physical}, {"strip", strip}, {"active", active}});
    });
  }

  const RunReport rep = run(c, cfg, mesh, observers);

  atomic_write(o.out + "/report.csv", report_csv(rep, false));
  atomic_write(o.out + "/report_full.csv", report_csv(rep, true));
  atomic_write(o.out + "/ledger.csv", ledger_csv(rep.ledger, false));
  atomic_write(o.out + "/ledger_full.csv", ledger_csv(rep.ledger, true));

  for (const std::string& w : rep.warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  if (!o.deterministic)
    std::fprintf(stderr,
                 "note: deterministic=false has no effect; runs are always "
                 "deterministic\n");

  std::printf("case %s, bdf%d: %zu steps, %d dofs at the final step\n",
              c.name.c_str(), cfg.bdf_order, rep.steps.size() - 1,
              rep.steps.back().dofs);
  std::printf("mass: final %.9e, max |drift| %.3e, max |scheme residual| %.3e\n",
              rep.steps.back().mass, rep.ledger.max_abs_drift(),
              rep.ledger.max_abs_scheme_residual());
  std::printf("solver: max relative residual %.3e\n", rep.max_solver_residual);
  if (c.u_exact)
    std::printf("errors: l2(l2) %.6e, l2(h1) %.6e\n", rep.l2l2(), rep.l2h1());
  std::printf("wrote %s/report.csv and %s/ledger.csv\n", o.out.c_str(),
              o.out.c_str());
  return 0;
}

struct CellResult {
  double l2l2 = std::numeric_limits<double>::quiet_NaN();
  double l2h1 = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

int cmd_convergence(const CommonOpts& o, int lt_max, int lx_max, int jobs) {
  const CaseSpec c = load_case(o);
  const int nt = lt_max + 1, nx = lx_max + 1;
  const int cells = nt * nx;
  std::vector<CellResult> results(cells);

  std::atomic<int> cursor{0};
  const auto worker = [&]() {
    for (int i = cursor.fetch_add(1); i < cells; i = cursor.fetch_add(1)) {
      const int lt = i / nx, lx = i % nx;
      try {
        const SchemeConfig cfg = build_scheme(c, o, lt, 0.0);
        const BackgroundMesh mesh = build_case_mesh(c, lx);
        const RunReport rep = run(c, cfg, mesh);
        results[i].l2l2 = rep.l2l2();
        results[i].l2h1 = rep.l2h1();
      } catch (const std::exception& e) {
        results[i].error = "cell (lt=" + std::to_string(lt) +
                           ", lx=" + std::to_string(lx) + "): " + e.what();
      }
    }
  };
  const int n_threads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < n_threads; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  ConvergenceTable l2l2, l2h1;
  for (ConvergenceTable* t : {&l2l2, &l2h1}) {
    t->lt_count = nt;
    t->lx_count = nx;
    t->errors.assign(static_cast<std::size_t>(cells),
                     std::numeric_limits<double>::quiet_NaN());
  }
  const std::string stem = c.name + "_bdf" + std::to_string(o.bdf);
  l2l2.title = stem + "_l2l2";
  l2h1.title = stem + "_l2h1";
  bool failed = false;
  for (int i = 0; i < cells; ++i) {
    l2l2.errors[i] = results[i].l2l2;
    l2h1.errors[i] = results[i].l2h1;
    if (!results[i].error.empty()) {
      failed = true;
      std::fprintf(stderr, "failed %s\n", results[i].error.c_str());
    }
  }

  const bool with_xxt = o.bdf == 2;
  ensure_directory(o.out);
  atomic_write(o.out + "/" + stem + "_l2l2.csv", l2l2.render_csv(false, false));
  atomic_write(o.out + "/" + stem + "_l2l2_full.csv",
               l2l2.render_csv(false, true));
  atomic_write(o.out + "/" + stem + "_l2h1.csv",
               l2h1.render_csv(with_xxt, false));
  atomic_write(o.out + "/" + stem + "_l2h1_full.csv",
               l2h1.render_csv(with_xxt, true));

  std::printf("%s", l2l2.render_csv(false, false).c_str());
  std::printf("\n%s", l2h1.render_csv(with_xxt, false).c_str());
  std::printf("\nwrote 4 tables under %s/\n", o.out.c_str());
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unfitted finite element solver for scalar transport on "
               "moving domains"};
  app.require_subcommand(1);
  // --h is the mesh size, so help must not own the short -h.
  app.set_help_flag("--help", "print help and exit");

  CommonOpts run_opts;
  int lt = 0, lx = 0, dt_steps = 0, vtk_every = 0;
  double target_h = 0.0;
  CLI::App* run_cmd =
      app.add_subcommand("run", "one simulation, report + ledger CSV");
  run_cmd->set_help_flag("--help", "print help and exit");
  add_common(run_cmd, run_opts);
  run_cmd->add_option("--lt", lt, "time refinement level")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--lx", lx, "space refinement level")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--h", target_h, "mesh size override, replaces --lx")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--dt-steps", dt_steps,
                      "number of time steps, replaces --lt")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--vtk-every", vtk_every,
                      "snapshot cadence in steps, 0 = off")
      ->check(CLI::NonNegativeNumber);

  CommonOpts conv_opts;
  int lt_max = 3, lx_max = 3, jobs = 1;
  CLI::App* conv_cmd = app.add_subcommand(
      "convergence", "sweep refinement levels, write order tables");
  conv_cmd->set_help_flag("--help", "print help and exit");
  add_common(conv_cmd, conv_opts);
  conv_cmd->add_option("--lt-max", lt_max, "deepest time level (from 0)")
      ->check(CLI::NonNegativeNumber)
      ->default_val(lt_max);
  conv_cmd->add_option("--lx-max", lx_max, "deepest space level (from 0)")
      ->check(CLI::NonNegativeNumber)
      ->default_val(lx_max);
  conv_cmd->add_option("--jobs", jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->default_val(jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      if (!run_opts.config_path.empty())
        apply_config_file(run_cmd, run_opts.config_path);
      return cmd_run(run_opts, lt, lx, target_h, dt_steps, vtk_every);
    }
    if (!conv_opts.config_path.empty())
      apply_config_file(conv_cmd, conv_opts.config_path);
    return cmd_convergence(conv_opts, lt_max, lx_max, jobs);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
