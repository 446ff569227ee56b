#include "ecut/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ecut/p1.hpp"

namespace ecut {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio_order(double coarse, double fine) {
  if (!std::isfinite(coarse) || !std::isfinite(fine) || coarse <= 0.0 ||
      fine <= 0.0)
    return kNaN;
  return std::log2(coarse / fine);
}

std::string format_cell(double v, bool full) {
  if (!std::isfinite(v)) return "--";
  char buf[40];
  std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.2e", v);
  return buf;
}

std::string format_order(double v, bool full) {
  if (!std::isfinite(v)) return "--";
  char buf[40];
  std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.2f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& s) {
  if (s.empty() || s == "--") return kNaN;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("table cell '" + s + "' is not a number");
  }
}

}  // namespace

StepErrors step_errors(const std::vector<double>& u_global,
                       const ScalarField& u_exact,
                       const VectorField& grad_u_exact, double t,
                       const BackgroundMesh& mesh, const CutQuadrature& quad) {
  StepErrors err;
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (quad.points[e].empty()) continue;
    const auto& v = mesh.elements[e];
    const P1Basis basis(mesh.element_triangle(e));
    const Vec2 grad_h = u_global[v[0]] * basis.grad[0] +
                        u_global[v[1]] * basis.grad[1] +
                        u_global[v[2]] * basis.grad[2];
    for (const QuadPoint& q : quad.points[e]) {
      const auto psi = basis.eval(q.x);
      const double uh = u_global[v[0]] * psi[0] + u_global[v[1]] * psi[1] +
                        u_global[v[2]] * psi[2];
      const double d = uh - u_exact(q.x, t);
      const Vec2 gd = grad_h - grad_u_exact(q.x, t);
      err.l2_sq += q.w * d * d;
      err.h1_sq += q.w * norm_sq(gd);
    }
  }
  return err;
}

std::vector<double> eoc_sequence(const std::vector<double>& errors) {
  std::vector<double> out(errors.size(), kNaN);
  for (std::size_t k = 1; k < errors.size(); ++k)
    out[k] = ratio_order(errors[k - 1], errors[k]);
  return out;
}

double fit_log2_slope(const std::vector<double>& h,
                      const std::vector<double>& e) {
  if (h.size() != e.size())
    throw std::invalid_argument("slope fit needs matching sequences");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] > 0.0 && e[i] > 0.0 && std::isfinite(e[i])) {
      x.push_back(std::log2(h[i]));
      y.push_back(std::log2(e[i]));
    }
  }
  if (x.size() < 2) return kNaN;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) return kNaN;
  return sxy / sxx;
}

std::vector<double> ConvergenceTable::eoc_t() const {
  std::vector<double> out(lt_count, kNaN);
  for (int lt = 1; lt < lt_count; ++lt)
    out[lt] = ratio_order(at(lt - 1, lx_count - 1), at(lt, lx_count - 1));
  return out;
}

std::vector<double> ConvergenceTable::eoc_x() const {
  std::vector<double> out(lx_count, kNaN);
  for (int lx = 1; lx < lx_count; ++lx)
    out[lx] = ratio_order(at(lt_count - 1, lx - 1), at(lt_count - 1, lx));
  return out;
}

// The simultaneous diagonal runs through the bottom-right corner; with more
// time levels than space levels the top of the diagonal starts below the
// first row.
std::vector<double> ConvergenceTable::eoc_xt() const {
  const int offset = lt_count - lx_count;
  std::vector<double> out(lx_count, kNaN);
  for (int k = 1; k < lx_count; ++k) {
    const int row = k + offset, prev_row = row - 1;
    if (prev_row < 0 || row >= lt_count) continue;
    out[k] = ratio_order(at(prev_row, k - 1), at(row, k));
  }
  return out;
}

std::vector<double> ConvergenceTable::eoc_xxt() const {
  const int offset = lt_count - lx_count;
  std::vector<double> out(lx_count, kNaN);
  for (int k = 2; k < lx_count; ++k) {
    const int row = k + offset, prev_row = row - 1;
    if (prev_row < 0 || row >= lt_count) continue;
    out[k] = ratio_order(at(prev_row, k - 2), at(row, k));
  }
  return out;
}

std::string ConvergenceTable::render_csv(bool with_xxt, bool full) const {
  std::ostringstream os;
  os << title;
  for (int lx = 0; lx < lx_count; ++lx) os << ",lx=" << lx;
  os << ",eoc_t\n";

  const std::vector<double> col_t = eoc_t();
  for (int lt = 0; lt < lt_count; ++lt) {
    os << "lt=" << lt;
    for (int lx = 0; lx < lx_count; ++lx)
      os << ',' << format_cell(at(lt, lx), full);
    os << ',' << format_order(col_t[lt], full) << '\n';
  }

  const auto footer = [&](const char* label, const std::vector<double>& row) {
    os << label;
    for (double v : row) os << ',' << format_order(v, full);
    os << '\n';
  };
  footer("eoc_x", eoc_x());
  footer("eoc_xt", eoc_xt());
  if (with_xxt) footer("eoc_xxt", eoc_xxt());
  return os.str();
}

ConvergenceTable parse_table_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("empty convergence table");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.back() != "eoc_t")
    throw std::invalid_argument("malformed table header: " + line);

  ConvergenceTable table;
  table.title = header.front();
  table.lx_count = static_cast<int>(header.size()) - 2;

  while (std::getline(is, line)) {
    if (line.rfind("lt=", 0) != 0) break;
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != table.lx_count + 2)
      throw std::invalid_argument("row width mismatch: " + line);
    for (int lx = 0; lx < table.lx_count; ++lx)
      table.errors.push_back(parse_cell(cells[lx + 1]));
    ++table.lt_count;
  }
  if (table.lt_count == 0)
    throw std::invalid_argument("convergence table has no data rows");
  return table;
}

ConservationReport conservation_report(const MassLedger& ledger,
                                       double tolerance) {
  ConservationReport rep;
  rep.tolerance = tolerance;
  rep.max_abs_drift = ledger.max_abs_drift();
  rep.max_abs_scheme_residual = ledger.max_abs_scheme_residual();
  for (const auto& row : ledger.rows) {
    if (std::abs(row.drift) > tolerance ||
        std::abs(row.scheme_residual) > tolerance) {
      rep.pass = false;
      rep.worst_step = row.n;
      break;
    }
  }
  return rep;
}

}  // namespace ecut
