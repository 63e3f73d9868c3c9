#include "fks/velocity_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fks {

double VelocityGrid::maxAxisSpeed() const {
  double vref = 0.0;
  for (double v : axis) vref = std::max(vref, std::fabs(v));
  return vref;
}

VelocityGrid buildVelocityGrid(int dim, int perAxis, double vmin, double vmax) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("velocity grid: dim must be 1, 2, or 3");
  if (perAxis < 2)
    throw std::invalid_argument("velocity grid: need at least 2 nodes per axis");
  if (!(vmax > vmin))
    throw std::invalid_argument("velocity grid: vmax must exceed vmin");

  VelocityGrid g;
  g.dim = dim;
  g.perAxis = perAxis;
  g.vmin = vmin;
  g.vmax = vmax;
  g.dv = (vmax - vmin) / (perAxis - 1);

  long count = 1;
  for (int a = 0; a < dim; ++a) count *= perAxis;
  if (count < dim + 2)
    throw std::invalid_argument(
        "velocity grid: " + std::to_string(count) + " nodes cannot represent " +
        std::to_string(dim + 2) + " conserved moments");
  g.count = count;

  g.weight = 1.0;
  for (int a = 0; a < dim; ++a) g.weight *= g.dv;

  g.axis.resize(perAxis);
  for (int i = 0; i < perAxis; ++i) {
    // Fill from the nearer bound; the midpoint of an odd lattice is averaged.
    // Both bounds are then hit exactly and symmetric bounds mirror exactly.
    if (2 * i == perAxis - 1)
      g.axis[i] = 0.5 * (vmin + vmax);
    else if (2 * i < perAxis - 1)
      g.axis[i] = vmin + i * g.dv;
    else
      g.axis[i] = vmax - (perAxis - 1 - i) * g.dv;
  }

  for (int a = 0; a < kMaxDim; ++a) {
    g.axisIndex[a].assign(count, 0);
    g.comp[a].assign(count, 0.0);
  }
  g.speed2.assign(count, 0.0);

  for (long k = 0; k < count; ++k) {
    long rem = k;
    for (int a = dim - 1; a >= 0; --a) {
      g.axisIndex[a][k] = static_cast<std::int32_t>(rem % perAxis);
      rem /= perAxis;
    }
    double s2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double v = g.axis[g.axisIndex[a][k]];
      g.comp[a][k] = v;
      s2 += v * v;
    }
    g.speed2[k] = s2;
  }
  return g;
}

double cflTimeStep(const VelocityGrid& grid, double dx, double safety) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("cfl safety must be in (0,1]");
  if (!(dx > 0.0))
    throw std::invalid_argument("cfl: dx must be positive");
  const double vref = grid.maxAxisSpeed();
  if (!(vref > 0.0))
    throw std::invalid_argument("cfl: velocity grid has no moving node");
  return safety * dx / vref;
}

} // namespace fks
