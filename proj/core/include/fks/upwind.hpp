#pragma once

#include "fks/field.hpp"
#include "fks/projection.hpp"
#include "fks/solver.hpp"

namespace fks {

/// One donor-cell transport step for a 1D field: each lattice node k advects
/// its row at speed v_k, f_j <- (1 - nu) f_j + nu f_upwind with
/// nu = |v_k| dt / dx.  Requires nu <= 1 for every node and a field that
/// carries no accumulated shifts (rows are read in place).
void upwindTransport(DistributionField& f, double dt);

/// First-order reference integrator: donor-cell transport composed with the
/// same relaxation sweep as the split scheme, same step size rule.
RunStats runUpwind(DistributionField& f, const ProjectionOperator& proj,
                   double tfinal, double tau, double cflSafety);

}  // namespace fks
