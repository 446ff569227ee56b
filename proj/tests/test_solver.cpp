#include "doctest.h"
#include "ecut/solver.hpp"

#include <cmath>
#include <vector>

using namespace ecut;

namespace {

LinearSystem tridiagonal_system() {
  TripletBuffer t;
  const double d[3] = {2.0, 2.0, 2.0};
  for (int i = 0; i < 3; ++i) t.add(i, i, d[i]);
  t.add(0, 1, -1.0);
  t.add(1, 0, -1.0);
  t.add(1, 2, -1.0);
  t.add(2, 1, -1.0);
  LinearSystem s;
  s.matrix = t.compress(3, 3);
  s.rhs = {1.0, 2.0, 1.0};
  return s;
}

}  // namespace

TEST_CASE("direct solve recovers the exact solution") {
  const LinearSystem s = tridiagonal_system();
  const std::vector<double> x = solve(s);
  REQUIRE(x.size() == 3);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(x[2] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(relative_residual(s.matrix, x, s.rhs) <= 1e-12);
}

TEST_CASE("the iterative backend matches the direct one") {
  const LinearSystem s = tridiagonal_system();
  SolverOptions o;
  o.method = SolverMethod::BiCgStab;
  const std::vector<double> x = solve(s, o);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(x[2] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(relative_residual(s.matrix, x, s.rhs) <= 1e-12);
}

TEST_CASE("a singular system is reported, not returned") {
  TripletBuffer t;
  t.add(0, 0, 1.0);
  t.add(0, 1, 1.0);
  t.add(1, 0, 1.0);
  t.add(1, 1, 1.0);
  LinearSystem s;
  s.matrix = t.compress(2, 2);
  s.rhs = {1.0, 0.0};  // inconsistent
  CHECK_THROWS_AS(solve(s), SolverFailure);
}

TEST_CASE("relative residual is the scaled backward error") {
  const LinearSystem s = tridiagonal_system();
  const std::vector<double> exact = {2.0, 3.0, 2.0};
  CHECK(relative_residual(s.matrix, exact, s.rhs) < 1e-15);
  const std::vector<double> off = {2.0, 3.0, 3.0};
  // K*off - b = (0, -1, 2), ||.|| = sqrt(5); ||b|| = sqrt(6).
  CHECK(relative_residual(s.matrix, off, s.rhs) ==
        doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-13));
}

TEST_CASE("mismatched dimensions are rejected") {
  LinearSystem s = tridiagonal_system();
  s.rhs.pop_back();
  CHECK_THROWS(solve(s));
}
