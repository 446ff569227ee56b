#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ecut/csr.hpp"

namespace ecut {

enum class SolverMethod { Direct, BiCgStab };

struct SolverOptions {
  SolverMethod method = SolverMethod::Direct;
  double tolerance = 1e-12;  // bound on ||b - Kx|| / ||b||
  int max_iterations = 2000; // iterative method only
};

struct LinearSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
};

struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual = 0.0;
};

// Residual recomputed with our own matrix-vector product, independent of
// whatever the backend reports.
double relative_residual(const CsrMatrix& m, const std::vector<double>& x,
                         const std::vector<double>& b);

// Solves K x = b and verifies the residual a posteriori; throws
// SolverFailure when the bound is missed.
std::vector<double> solve(const LinearSystem& system,
                          const SolverOptions& options = {});

}  // namespace ecut
