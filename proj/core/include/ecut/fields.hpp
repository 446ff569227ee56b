#pragma once

#include <functional>

#include "ecut/vec.hpp"

namespace ecut {

// Time-dependent analytic fields, evaluated pointwise.
using ScalarField = std::function<double(Vec2, double)>;
using VectorField = std::function<Vec2(Vec2, double)>;

}  // namespace ecut
