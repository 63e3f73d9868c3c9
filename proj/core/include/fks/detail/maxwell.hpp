#pragma once

#include <cmath>
#include <numbers>

namespace fks::detail {

// The Maxwellian evaluation recipe, factored to single expressions so every
// caller (pointwise API, solver relaxation sweep) performs identical
// floating-point operations and agrees bit for bit.

inline double maxwellCoef(double rho, double theta, int dim) {
  return rho * std::pow(2.0 * std::numbers::pi_v<double> * theta, -0.5 * dim);
}

inline double maxwellInv2Theta(double theta) { return 1.0 / (2.0 * theta); }

inline double maxwellAxisFactor(double v, double u, double inv2t) {
  const double d = v - u;
  return std::exp(-(d * d) * inv2t);
}

// Node value from the three axis factors; axes above the active dimension
// must supply exactly 1.0, which multiplies without rounding.
inline double maxwellNode(double coef, double e0, double e1, double e2) {
  return ((coef * e0) * e1) * e2;
}

} // namespace fks::detail
