#pragma once

#include "fks/types.hpp"

namespace fks {

/// Conserved cell moments: density, momentum density, total energy density.
/// Total energy is kinetic plus internal, E = rho|u|^2/2 + dim*rho*theta/2,
/// with theta the temperature in energy units (gas constant folded in).
struct ConservedState {
  double rho = 0.0;
  Vec3 mom = {0.0, 0.0, 0.0};
  double energy = 0.0;

  Vec3 velocity() const {
    return {mom[0] / rho, mom[1] / rho, mom[2] / rho};
  }

  double theta(int dim) const {
    const double u2 =
        (mom[0] * mom[0] + mom[1] * mom[1] + mom[2] * mom[2]) / (rho * rho);
    return (2.0 * energy / rho - u2) / dim;
  }
};

} // namespace fks
