#pragma once

#include <algorithm>
#include <cmath>

#include "fks/types.hpp"

namespace fks {

/// Uniform Cartesian cell grid with one spacing for all axes (cubic cells).
/// Cells are enumerated lexicographically, axis 0 most significant, matching
/// the velocity lattice convention.
struct SpatialGrid {
  int dim = 0;
  Idx3 cells = {1, 1, 1};     // counts per axis; axes >= dim stay at 1
  double dx = 0.0;
  Vec3 origin = {0.0, 0.0, 0.0};  // coordinates of the center of cell (0,0,0)
  Boundary boundary = Boundary::periodic;

  long cellCount() const {
    return static_cast<long>(cells[0]) * cells[1] * cells[2];
  }

  long lin(const Idx3& i) const {
    return (static_cast<long>(i[0]) * cells[1] + i[1]) * cells[2] + i[2];
  }

  Idx3 delin(long j) const {
    Idx3 i;
    i[2] = static_cast<int>(j % cells[2]);
    j /= cells[2];
    i[1] = static_cast<int>(j % cells[1]);
    i[0] = static_cast<int>(j / cells[1]);
    return i;
  }

  Vec3 center(long j) const {
    const Idx3 i = delin(j);
    return {origin[0] + i[0] * dx, origin[1] + i[1] * dx, origin[2] + i[2] * dx};
  }
};

SpatialGrid buildSpatialGrid(int dim, Idx3 cells, double dx, Vec3 origin,
                             Boundary boundary);

/// Index image of i under the boundary rule: periodic wraps, clamp clips to
/// the nearest interior index (zero-gradient extension).
inline int wrapIndex(long i, int n, Boundary bc) {
  if (bc == Boundary::periodic) {
    long r = i % n;
    return static_cast<int>(r < 0 ? r + n : r);
  }
  return static_cast<int>(std::clamp(i, 0L, static_cast<long>(n - 1)));
}

/// Whole-cell offset of a shifted piecewise-constant profile: the cell center
/// x_i of the shifted profile reads stored value at index i - shiftOffset.
/// Rounds to the nearest integer; exact half-way shifts round up, so a
/// profile moved exactly half a cell is attributed to the next cell over.
inline long shiftOffset(double shift, double dx) {
  return static_cast<long>(std::floor(shift / dx + 0.5));
}

} // namespace fks
