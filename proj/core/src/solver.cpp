#include "fks/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fks/detail/maxwell.hpp"

namespace fks {

void transportExact(DistributionField& f, double dt) {
  const VelocityGrid& vg = *f.vgrid;
  for (int a = 0; a < vg.dim; ++a) {
    double* s = f.axisShift[a].data();
    for (int c = 0; c < vg.perAxis; ++c) s[c] += vg.axis[c] * dt;
  }
}

void gatherCellValues(const DistributionField& f, long cell,
                      std::span<double> out) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  if (static_cast<long>(out.size()) != vg.count)
    throw std::invalid_argument("gather: output size mismatch");
  if (cell < 0 || cell >= sg.cellCount())
    throw std::invalid_argument("gather: cell index out of range");
  const Idx3 qc = sg.delin(cell);

  // Source coordinate of this cell for every 1D lattice value, per axis.
  std::array<std::vector<int>, 3> src;
  for (int a = 0; a < kMaxDim; ++a) {
    src[a].resize(vg.perAxis);
    for (int c = 0; c < vg.perAxis; ++c) {
      const long m = shiftOffset(f.axisShift[a][c], sg.dx);
      src[a][c] = wrapIndex(qc[a] - m, sg.cells[a], sg.boundary);
    }
  }
  const long nc = sg.cellCount();
  for (long k = 0; k < vg.count; ++k) {
    const Idx3 j = {src[0][vg.axisIndex[0][k]], src[1][vg.axisIndex[1][k]],
                    src[2][vg.axisIndex[2][k]]};
    out[k] = f.values[k * nc + sg.lin(j)];
  }
}

namespace {

void ensureWorkspace(RelaxWorkspace& ws, const VelocityGrid& vg,
                     const SpatialGrid& sg, int nmom) {
  if (ws.cachedCells == sg.cells && ws.cachedPerAxis == vg.perAxis &&
      ws.cachedDim == vg.dim)
    return;
  const long nc = sg.cellCount();
  ws.macc.assign(nc, 0.0);
  ws.pacc0.assign(nc, 0.0);
  ws.pacc1.assign(nc, 0.0);
  ws.pacc2.assign(nc, 0.0);
  ws.eacc.assign(nc, 0.0);
  ws.coef.assign(nc, 0.0);
  ws.inv2t.assign(nc, 0.0);
  ws.ua0.assign(nc, 0.0);
  ws.ua1.assign(nc, 0.0);
  ws.ua2.assign(nc, 0.0);
  ws.resid.assign(static_cast<std::size_t>(nc) * nmom, 0.0);
  for (int a = 0; a < kMaxDim; ++a) {
    if (a < vg.dim)
      ws.extab[a].assign(static_cast<std::size_t>(vg.perAxis) * nc, 0.0);
    else
      ws.extab[a].assign(nc, 1.0);
    ws.srcOff[a].assign(static_cast<std::size_t>(vg.perAxis) * sg.cells[a], 0);
    ws.dstOff[a].assign(static_cast<std::size_t>(vg.perAxis) * sg.cells[a], 0);
  }
  ws.cachedCells = sg.cells;
  ws.cachedPerAxis = vg.perAxis;
  ws.cachedDim = vg.dim;
}

} // namespace

void relaxField(DistributionField& f, double dt, double tau,
                const ProjectionOperator& proj, RelaxWorkspace& ws,
                RelaxStats* stats) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  if (stats) *stats = RelaxStats{};
  if (proj.dim != vg.dim || proj.count != vg.count)
    throw std::invalid_argument("relaxation: projection built for another lattice");
  if (!(dt >= 0.0)) throw std::invalid_argument("relaxation: dt must be >= 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("relaxation: tau must be >= 0");
  if (dt == 0.0) return;

  double alpha = 0.0;
  if (tau > 0.0) {
    if (std::isinf(tau)) return;  // collisionless limit
    alpha = std::exp(-dt / tau);
    if (alpha == 1.0) return;     // blend weight underflows to identity
  }

  const int n0 = sg.cells[0], n1 = sg.cells[1], n2 = sg.cells[2];
  const long nc = sg.cellCount();
  const long N = vg.count;
  const int K = vg.perAxis;
  const int nm = proj.nmom();
  const double w = vg.weight;
  ensureWorkspace(ws, vg, sg, nm);

  // srcOff: the slot each cell reads (zero-gradient clip or wrap).  dstOff:
  // the cell each slot relaxes toward, the inverse of the read map.  Under
  // clamp the inverse is not one-to-one: the boundary slot feeds every cell
  // the profile can no longer reach, so it must track the wall cell itself
  // (its value is the inflow state); slots that have left the domain are
  // never read again and park at the far edge.
  const long stride[3] = {static_cast<long>(n1) * n2, n2, 1};
  for (int a = 0; a < kMaxDim; ++a) {
    const int na = sg.cells[a];
    for (int c = 0; c < K; ++c) {
      const long m = shiftOffset(f.axisShift[a][c], sg.dx);
      long* srow = ws.srcOff[a].data() + static_cast<long>(c) * na;
      long* drow = ws.dstOff[a].data() + static_cast<long>(c) * na;
      for (int x = 0; x < na; ++x) {
        srow[x] = static_cast<long>(wrapIndex(x - m, na, sg.boundary)) * stride[a];
        long d;
        if (sg.boundary == Boundary::periodic)
          d = wrapIndex(x + m, na, sg.boundary);
        else if (m >= 0)
          d = (x == 0) ? 0 : std::min<long>(x + m, na - 1);
        else
          d = (x == na - 1) ? na - 1 : std::max<long>(x + m, 0L);
        drow[x] = d * stride[a];
      }
    }
  }

  const std::int32_t* ai0 = vg.axisIndex[0].data();
  const std::int32_t* ai1 = vg.axisIndex[1].data();
  const std::int32_t* ai2 = vg.axisIndex[2].data();
  const double* c0 = vg.comp[0].data();
  const double* c1 = vg.comp[1].data();
  const double* c2 = vg.comp[2].data();
  const double* s2 = vg.speed2.data();
  const long slab = stride[0];

  // Moments of the gathered distribution.  Slabs of fixed leading coordinate
  // keep the accumulators hot while each profile row streams through; within
  // one cell the contributions still arrive in node order.
  std::fill(ws.macc.begin(), ws.macc.end(), 0.0);
  std::fill(ws.pacc0.begin(), ws.pacc0.end(), 0.0);
  std::fill(ws.pacc1.begin(), ws.pacc1.end(), 0.0);
  std::fill(ws.pacc2.begin(), ws.pacc2.end(), 0.0);
  std::fill(ws.eacc.begin(), ws.eacc.end(), 0.0);
#pragma omp parallel for schedule(static)
  for (int x0 = 0; x0 < n0; ++x0) {
    const long qb = static_cast<long>(x0) * slab;
    double* pm = ws.macc.data() + qb;
    double* pp0 = ws.pacc0.data() + qb;
    double* pp1 = ws.pacc1.data() + qb;
    double* pp2 = ws.pacc2.data() + qb;
    double* pe = ws.eacc.data() + qb;
    for (long k = 0; k < N; ++k) {
      const double* fk = f.values.data() + k * nc;
      const long b0 = ws.srcOff[0][static_cast<long>(ai0[k]) * n0 + x0];
      const long* o1 = ws.srcOff[1].data() + static_cast<long>(ai1[k]) * n1;
      const long* o2 = ws.srcOff[2].data() + static_cast<long>(ai2[k]) * n2;
      const double v0 = c0[k], v1 = c1[k], v2 = c2[k], vv = s2[k];
      long t = 0;
      for (int x1 = 0; x1 < n1; ++x1) {
        const double* fb = fk + b0 + o1[x1];
        for (int x2 = 0; x2 < n2; ++x2, ++t) {
          const double fv = fb[o2[x2]];
          pm[t] += fv;
          pp0[t] += v0 * fv;
          pp1[t] += v1 * fv;
          pp2[t] += v2 * fv;
          pe[t] += vv * fv;
        }
      }
    }
  }

  // Per-cell equilibrium data; the defect buffer starts as the target moments
  // and has the Maxwellian moments subtracted below.
  double tRho = 0.0, tP0 = 0.0, tP1 = 0.0, tP2 = 0.0, tE = 0.0;
  for (long q = 0; q < nc; ++q) {
    ConservedState U;
    U.rho = ws.macc[q] * w;
    U.mom = {ws.pacc0[q] * w, ws.pacc1[q] * w, ws.pacc2[q] * w};
    U.energy = 0.5 * (ws.eacc[q] * w);
    tRho += U.rho;
    tP0 += U.mom[0];
    tP1 += U.mom[1];
    tP2 += U.mom[2];
    tE += U.energy;
    if (!(U.rho > 0.0))
      throw std::runtime_error("relaxation: non-positive density at cell " +
                               std::to_string(q));
    const double theta = U.theta(vg.dim);
    if (!(theta > 0.0))
      throw std::runtime_error(
          "relaxation: non-positive temperature at cell " + std::to_string(q));
    ws.coef[q] = detail::maxwellCoef(U.rho, theta, vg.dim);
    ws.inv2t[q] = detail::maxwellInv2Theta(theta);
    const Vec3 u = U.velocity();
    ws.ua0[q] = u[0];
    ws.ua1[q] = u[1];
    ws.ua2[q] = u[2];
    double* r = ws.resid.data() + q * nm;
    r[0] = U.rho;
    for (int a = 0; a < vg.dim; ++a) r[1 + a] = U.mom[a];
    r[vg.dim + 1] = U.energy;
  }
  if (stats) {
    const double vol = std::pow(sg.dx, vg.dim);
    stats->totals.rho = tRho * vol;
    stats->totals.mom = {tP0 * vol, tP1 * vol, tP2 * vol};
    stats->totals.energy = tE * vol;
  }

  // Axis factor tables: dim * perAxis exponentials per cell in total, the
  // only transcendentals in the sweep.
  for (int a = 0; a < vg.dim; ++a) {
    const double* ua =
        (a == 0 ? ws.ua0 : a == 1 ? ws.ua1 : ws.ua2).data();
    const double* it = ws.inv2t.data();
#pragma omp parallel for schedule(static)
    for (int c = 0; c < K; ++c) {
      const double av = vg.axis[c];
      double* row = ws.extab[a].data() + static_cast<long>(c) * nc;
      for (long q = 0; q < nc; ++q)
        row[q] = detail::maxwellAxisFactor(av, ua[q], it[q]);
    }
  }

  // Moments of the pointwise Maxwellian, same slab walk and node order.
  std::fill(ws.macc.begin(), ws.macc.end(), 0.0);
  std::fill(ws.pacc0.begin(), ws.pacc0.end(), 0.0);
  std::fill(ws.pacc1.begin(), ws.pacc1.end(), 0.0);
  std::fill(ws.pacc2.begin(), ws.pacc2.end(), 0.0);
  std::fill(ws.eacc.begin(), ws.eacc.end(), 0.0);
#pragma omp parallel for schedule(static)
  for (int x0 = 0; x0 < n0; ++x0) {
    const long qb = static_cast<long>(x0) * slab;
    double* pm = ws.macc.data() + qb;
    double* pp0 = ws.pacc0.data() + qb;
    double* pp1 = ws.pacc1.data() + qb;
    double* pp2 = ws.pacc2.data() + qb;
    double* pe = ws.eacc.data() + qb;
    const double* cf = ws.coef.data() + qb;
    for (long k = 0; k < N; ++k) {
      const double* e0 = ws.extab[0].data() + static_cast<long>(ai0[k]) * nc + qb;
      const double* e1 = ws.extab[1].data() + static_cast<long>(ai1[k]) * nc + qb;
      const double* e2 = ws.extab[2].data() + static_cast<long>(ai2[k]) * nc + qb;
      const double v0 = c0[k], v1 = c1[k], v2 = c2[k], vv = s2[k];
      for (long t = 0; t < slab; ++t) {
        const double mv = detail::maxwellNode(cf[t], e0[t], e1[t], e2[t]);
        pm[t] += mv;
        pp0[t] += v0 * mv;
        pp1[t] += v1 * mv;
        pp2[t] += v2 * mv;
        pe[t] += vv * mv;
      }
    }
  }

#pragma omp parallel for schedule(static)
  for (long q = 0; q < nc; ++q) {
    double* r = ws.resid.data() + q * nm;
    r[0] -= ws.macc[q] * w;
    const double pav[3] = {ws.pacc0[q], ws.pacc1[q], ws.pacc2[q]};
    for (int a = 0; a < vg.dim; ++a) r[1 + a] -= pav[a] * w;
    r[vg.dim + 1] -= 0.5 * (ws.eacc[q] * w);
  }

  // Blend pass: every slot of every profile row is written exactly once,
  // against the equilibrium of the cell the slot currently occupies.
  const bool writeExact = (alpha == 0.0);
  const double oma = 1.0 - alpha;
  double minv = std::numeric_limits<double>::infinity();
  double mineq = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : minv, mineq)
  for (long k = 0; k < N; ++k) {
    double* fk = f.values.data() + k * nc;
    const long* d0 = ws.dstOff[0].data() + static_cast<long>(ai0[k]) * n0;
    const long* d1 = ws.dstOff[1].data() + static_cast<long>(ai1[k]) * n1;
    const long* d2 = ws.dstOff[2].data() + static_cast<long>(ai2[k]) * n2;
    const double* e0 = ws.extab[0].data() + static_cast<long>(ai0[k]) * nc;
    const double* e1 = ws.extab[1].data() + static_cast<long>(ai1[k]) * nc;
    const double* e2 = ws.extab[2].data() + static_cast<long>(ai2[k]) * nc;
    const double* pk = proj.rowP(k);
    long i = 0;
    for (int x0 = 0; x0 < n0; ++x0) {
      const long b0 = d0[x0];
      for (int x1 = 0; x1 < n1; ++x1) {
        const long b01 = b0 + d1[x1];
        for (int x2 = 0; x2 < n2; ++x2, ++i) {
          const long q = b01 + d2[x2];
          const double mv =
              detail::maxwellNode(ws.coef[q], e0[q], e1[q], e2[q]);
          const double* rq = ws.resid.data() + q * nm;
          double corr = 0.0;
          for (int b = 0; b < nm; ++b) corr += pk[b] * rq[b];
          const double eq = mv + corr;
          if (writeExact)
            fk[i] = eq;
          else
            fk[i] += oma * (eq - fk[i]);
          if (eq < mineq) mineq = eq;
          if (fk[i] < minv) minv = fk[i];
        }
      }
    }
  }
  if (stats) {
    stats->swept = true;
    stats->minValue = minv;
    stats->minEquilibrium = mineq;
  }
}

void initField(DistributionField& f, const ProjectionOperator& proj,
               const std::function<ConservedState(const Vec3&)>& stateAt) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  if (!stateAt) throw std::invalid_argument("init: null state function");
  const long nc = sg.cellCount();
  std::vector<double> buf(vg.count);
  for (int a = 0; a < kMaxDim; ++a)
    std::fill(f.axisShift[a].begin(), f.axisShift[a].end(), 0.0);
  for (long q = 0; q < nc; ++q) {
    discreteEquilibrium(stateAt(sg.center(q)), vg, proj, buf);
    for (long k = 0; k < vg.count; ++k) f.values[k * nc + q] = buf[k];
  }
}

void initFieldSampled(
    DistributionField& f, const ProjectionOperator& proj,
    const std::function<double(const Vec3&, const Vec3&)>& ic,
    const std::function<ConservedState(const Vec3&)>& stateAt) {
  const VelocityGrid& vg = *f.vgrid;
  const SpatialGrid& sg = *f.sgrid;
  if (!ic || !stateAt) throw std::invalid_argument("init: null function");
  const long nc = sg.cellCount();
  std::vector<double> buf(vg.count);
  for (int a = 0; a < kMaxDim; ++a)
    std::fill(f.axisShift[a].begin(), f.axisShift[a].end(), 0.0);
  for (long q = 0; q < nc; ++q) {
    const Vec3 x = sg.center(q);
    for (long k = 0; k < vg.count; ++k) buf[k] = ic(x, vg.node(k));
    projectConserveInPlace(buf, stateAt(x), proj);
    for (long k = 0; k < vg.count; ++k) f.values[k * nc + q] = buf[k];
  }
}

RunStats runSplitting(DistributionField& f, const ProjectionOperator& proj,
                      double tfinal, double tau, double cflSafety, int order,
                      const StepObserver& observe, StageTimers* timers) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("splitting order must be 1 or 2");
  if (!(tfinal >= 0.0)) throw std::invalid_argument("tfinal must be >= 0");

  using clock = std::chrono::steady_clock;
  const auto seconds = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };

  RunStats st;
  st.dt = cflTimeStep(*f.vgrid, f.sgrid->dx, cflSafety);
  RelaxWorkspace ws;
  RelaxStats rs;
  double t = 0.0;
  while (tfinal - t > 1e-12 * tfinal) {
    const double h = std::min(st.dt, tfinal - t);
    if (order == 2) {
      const auto t0 = clock::now();
      transportExact(f, 0.5 * h);
      const auto t1 = clock::now();
      relaxField(f, h, tau, proj, ws, &rs);
      const auto t2 = clock::now();
      transportExact(f, 0.5 * h);
      const auto t3 = clock::now();
      if (timers) {
        timers->transportSec += seconds(t0, t1) + seconds(t2, t3);
        timers->relaxSec += seconds(t1, t2);
      }
    } else {
      const auto t0 = clock::now();
      transportExact(f, h);
      const auto t1 = clock::now();
      relaxField(f, h, tau, proj, ws, &rs);
      const auto t2 = clock::now();
      if (timers) {
        timers->transportSec += seconds(t0, t1);
        timers->relaxSec += seconds(t1, t2);
      }
    }
    t += h;
    ++st.steps;
    if (observe) {
      StepRecord rec;
      rec.step = st.steps;
      rec.t = t;
      rec.relax = rs;
      observe(rec, f);
    }
  }
  st.time = t;
  return st;
}

} // namespace fks
