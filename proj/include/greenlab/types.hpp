#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace greenlab {

using Point = std::array<double, 3>;

// Per-node scalar values on a mesh (coefficients, weights, solutions).
using ScalarField = std::vector<double>;
using DiscreteField = std::vector<double>;

}  // namespace greenlab
