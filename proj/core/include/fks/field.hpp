#pragma once

#include <stdexcept>
#include <vector>

#include "fks/spatial_grid.hpp"
#include "fks/velocity_grid.hpp"

namespace fks {

/// Discrete-velocity state: one piecewise-constant spatial profile per
/// velocity node, plus the accumulated translation of each profile.
///
/// `values` is node-major (row k holds the profile of node k over all cells),
/// so transport never touches it: moving a profile only advances its shift.
/// Sampling at cell centers happens at gather time through whole-cell index
/// offsets derived from the shifts.
///
/// Shifts are stored per (axis, 1D lattice index) rather than per node: every
/// node sharing an axis component accumulates exactly the same displacement
/// on that axis, so the compact table is lossless.  shiftOf(k) reconstructs
/// the per-node vector.
struct DistributionField {
  const VelocityGrid* vgrid = nullptr;   // non-owning, must outlive the field
  const SpatialGrid* sgrid = nullptr;
  std::vector<double> values;            // vgrid->count rows of sgrid->cellCount()
  std::array<std::vector<double>, 3> axisShift;  // [axis][lattice index]

  double* row(long k) { return values.data() + k * sgrid->cellCount(); }
  const double* row(long k) const { return values.data() + k * sgrid->cellCount(); }

  Vec3 shiftOf(long k) const {
    Vec3 s = {0.0, 0.0, 0.0};
    for (int a = 0; a < vgrid->dim; ++a) s[a] = axisShift[a][vgrid->axisIndex[a][k]];
    return s;
  }
};

/// Zero-valued field with zero shifts over the given grids.
inline DistributionField makeField(const VelocityGrid& vgrid,
                                   const SpatialGrid& sgrid) {
  if (vgrid.dim != sgrid.dim)
    throw std::invalid_argument("field: velocity and spatial dimensions differ");
  DistributionField f;
  f.vgrid = &vgrid;
  f.sgrid = &sgrid;
  f.values.assign(static_cast<std::size_t>(vgrid.count) * sgrid.cellCount(), 0.0);
  for (int a = 0; a < kMaxDim; ++a) f.axisShift[a].assign(vgrid.perAxis, 0.0);
  return f;
}

} // namespace fks
