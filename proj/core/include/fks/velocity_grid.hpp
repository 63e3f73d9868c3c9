#pragma once

#include <vector>

#include "fks/types.hpp"

namespace fks {

/// Cartesian velocity lattice: the same 1D node set on every axis, tensorized.
/// Nodes are enumerated lexicographically with axis 0 most significant, so the
/// last axis index varies fastest.  The enumeration is the summation order for
/// every moment loop in the project; keeping it fixed is what makes runs
/// bit-reproducible.
struct VelocityGrid {
  int dim = 0;
  int perAxis = 0;         // nodes per axis (K)
  double vmin = 0.0;       // axis bounds, nodes sit on both ends exactly
  double vmax = 0.0;
  double dv = 0.0;         // (vmax - vmin) / (perAxis - 1)
  double weight = 0.0;     // dv^dim, the quadrature weight of one node
  long count = 0;          // perAxis^dim

  // One copy of the 1D lattice.  Filled from both ends so that symmetric
  // bounds give an exactly antisymmetric node set (axis[i] == -axis[K-1-i]
  // bit for bit), which several cancellation properties rely on.
  std::vector<double> axis;

  // Per-node SoA views, all of length `count`.  Axes >= dim hold index 0 /
  // component 0 so dimension-generic loops need no branches.
  std::array<std::vector<std::int32_t>, 3> axisIndex;
  std::array<std::vector<double>, 3> comp;
  std::vector<double> speed2;   // |v_k|^2

  Vec3 node(long k) const {
    return {comp[0][k], comp[1][k], comp[2][k]};
  }

  /// Largest |component| over all nodes and axes; the reference speed for the
  /// CFL step.  Per-axis by design: with cubic cells it is the axis sweep,
  /// not the Euclidean speed, that limits how far a profile moves per step.
  double maxAxisSpeed() const;
};

/// Builds the lattice.  Requires dim in 1..3, perAxis >= 2, vmax > vmin, and
/// at least dim+2 nodes in total (fewer cannot carry the conserved moments).
VelocityGrid buildVelocityGrid(int dim, int perAxis, double vmin, double vmax);

/// dt = safety * dx / maxAxisSpeed.  safety must lie in (0,1]; a lattice with
/// no moving node has no finite sweep time and is rejected.
double cflTimeStep(const VelocityGrid& grid, double dx, double safety);

} // namespace fks
