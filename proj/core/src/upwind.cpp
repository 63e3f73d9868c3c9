#include "fks/upwind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fks {

void upwindTransport(DistributionField& f, double dt) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  if (vg.dim != 1)
    throw std::invalid_argument("upwind: one space dimension only");
  for (int a = 0; a < kMaxDim; ++a)
    for (double s : f.axisShift[a])
      if (s != 0.0)
        throw std::invalid_argument("upwind: field carries transport shifts");
  if (!(dt >= 0.0)) throw std::invalid_argument("upwind: dt must be >= 0");
  if (dt == 0.0) return;

  const int n = sg.cells[0];
  const long nc = sg.cellCount();
  std::vector<double> old(static_cast<std::size_t>(n));
  for (long k = 0; k < vg.count; ++k) {
    const double v = vg.comp[0][k];
    if (v == 0.0) continue;
    const double nu = std::abs(v) * dt / sg.dx;
    if (nu > 1.0) throw std::invalid_argument("upwind: node CFL exceeds 1");
    double* row = f.values.data() + k * nc;
    std::copy(row, row + n, old.begin());
    if (v > 0.0) {
      for (int j = 0; j < n; ++j)
        row[j] = (1.0 - nu) * old[j] +
                 nu * old[wrapIndex(j - 1, n, sg.boundary)];
    } else {
      for (int j = 0; j < n; ++j)
        row[j] = (1.0 - nu) * old[j] +
                 nu * old[wrapIndex(j + 1, n, sg.boundary)];
    }
  }
}

RunStats runUpwind(DistributionField& f, const ProjectionOperator& proj,
                   double tfinal, double tau, double cflSafety) {
  if (!(tfinal >= 0.0)) throw std::invalid_argument("tfinal must be >= 0");
  RunStats st;
  st.dt = cflTimeStep(*f.vgrid, f.sgrid->dx, cflSafety);
  RelaxWorkspace ws;
  double t = 0.0;
  while (tfinal - t > 1e-12 * tfinal) {
    const double h = std::min(st.dt, tfinal - t);
    upwindTransport(f, h);
    relaxField(f, h, tau, proj, ws);
    t += h;
    ++st.steps;
  }
  st.time = t;
  return st;
}

}  // namespace fks
