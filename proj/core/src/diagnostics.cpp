#include "fks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fks/projection.hpp"
#include "fks/solver.hpp"

namespace fks {

MomentSet momentFields(const DistributionField& f) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  const long nc = sg.cellCount();

  MomentSet m;
  m.grid = f.sgrid;
  m.dim = vg.dim;
  m.rho.resize(nc);
  m.ux.resize(nc);
  m.uy.resize(nc);
  m.uz.resize(nc);
  m.theta.resize(nc);
  m.pressure.resize(nc);

  std::vector<double> buf(vg.count);
  for (long q = 0; q < nc; ++q) {
    gatherCellValues(f, q, buf);
    const ConservedState U = rawMoments(buf, vg);
    m.rho[q] = U.rho;
    if (U.rho > 0.0) {
      const Vec3 u = U.velocity();
      m.ux[q] = u[0];
      m.uy[q] = u[1];
      m.uz[q] = u[2];
      m.theta[q] = U.theta(vg.dim);
      m.pressure[q] = U.rho * m.theta[q];
    } else {
      m.ux[q] = m.uy[q] = m.uz[q] = 0.0;
      m.theta[q] = 0.0;
      m.pressure[q] = 0.0;
      m.vacuumCells.push_back(q);
    }
  }
  return m;
}

ConservedState fieldTotals(const DistributionField& f) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  const long nc = sg.cellCount();
  std::vector<double> buf(vg.count);
  double rho = 0.0, p0 = 0.0, p1 = 0.0, p2 = 0.0, e = 0.0;
  for (long q = 0; q < nc; ++q) {
    gatherCellValues(f, q, buf);
    const ConservedState U = rawMoments(buf, vg);
    rho += U.rho;
    p0 += U.mom[0];
    p1 += U.mom[1];
    p2 += U.mom[2];
    e += U.energy;
  }
  const double vol = std::pow(sg.dx, vg.dim);
  ConservedState total;
  total.rho = rho * vol;
  total.mom = {p0 * vol, p1 * vol, p2 * vol};
  total.energy = e * vol;
  return total;
}

EntropyResult discreteEntropy(const DistributionField& f) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  const long nc = sg.cellCount();
  std::vector<double> buf(vg.count);
  EntropyResult r;
  double acc = 0.0;
  for (long q = 0; q < nc; ++q) {
    gatherCellValues(f, q, buf);
    for (double v : buf) {
      if (v > 0.0)
        acc += v * std::log(v);
      else if (v < 0.0)
        ++r.clamped;
    }
  }
  r.value = acc * vg.weight * std::pow(sg.dx, vg.dim);
  return r;
}

Norms errorNorms(std::span<const double> a, std::span<const double> b,
                 double cellVolume) {
  if (a.size() != b.size())
    throw std::invalid_argument("norms: size mismatch");
  Norms n;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    sum += d;
    n.linf = std::max(n.linf, d);
  }
  n.l1 = sum * cellVolume;
  return n;
}

ConservationLedger::Drift ConservationLedger::maxDrift(double vref) const {
  Drift d;
  if (entries.size() < 2) return d;
  const ConservedState& base = entries.front().totals;
  const double pscale = std::abs(base.rho) * std::max(vref, 1e-300);
  for (const LedgerEntry& e : entries) {
    d.mass = std::max(d.mass, std::abs(e.totals.rho - base.rho) /
                                  std::abs(base.rho));
    for (int a = 0; a < kMaxDim; ++a)
      d.momentum = std::max(
          d.momentum, std::abs(e.totals.mom[a] - base.mom[a]) / pscale);
    d.energy = std::max(d.energy, std::abs(e.totals.energy - base.energy) /
                                      std::abs(base.energy));
  }
  return d;
}

double ConservationLedger::minValue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const LedgerEntry& e : entries) m = std::min(m, e.minValue);
  return m;
}

double ConservationLedger::minEquilibrium() const {
  double m = std::numeric_limits<double>::infinity();
  for (const LedgerEntry& e : entries) m = std::min(m, e.minEquilibrium);
  return m;
}

}  // namespace fks
