#include "fks/spatial_grid.hpp"

#include <stdexcept>

namespace fks {

SpatialGrid buildSpatialGrid(int dim, Idx3 cells, double dx, Vec3 origin,
                             Boundary boundary) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("spatial grid: dim must be 1, 2, or 3");
  if (!(dx > 0.0))
    throw std::invalid_argument("spatial grid: dx must be positive");
  for (int a = 0; a < dim; ++a)
    if (cells[a] < 1)
      throw std::invalid_argument("spatial grid: cell counts must be positive");

  SpatialGrid g;
  g.dim = dim;
  g.cells = {1, 1, 1};
  g.origin = {0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    g.cells[a] = cells[a];
    g.origin[a] = origin[a];
  }
  g.dx = dx;
  g.boundary = boundary;
  return g;
}

} // namespace fks
