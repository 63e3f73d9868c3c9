#pragma once

#include <functional>

#include "fks/field.hpp"
#include "fks/projection.hpp"

namespace fks {

/// Scratch buffers for the relaxation sweep.  Sized on first use, reused
/// across steps; keep one per concurrently stepped field.
struct RelaxWorkspace {
  // Per-cell moment accumulators, five separate streams summed in node order
  // (the fixed order is what keeps sweep moments bit-identical to the public
  // moment kernel).
  std::vector<double> macc, pacc0, pacc1, pacc2, eacc;
  // Per-cell equilibrium data: Maxwellian prefactor, 1/(2 theta), velocity.
  std::vector<double> coef, inv2t, ua0, ua1, ua2;
  // Per-axis Maxwellian factor tables, row per 1D lattice value; inactive
  // axes hold a single row of exact ones.
  std::array<std::vector<double>, 3> extab;
  // Moment defect (dim+2 entries) per cell.
  std::vector<double> resid;
  // Index-offset tables for the current shifts, premultiplied by the axis
  // stride: source (gather) and writer (scatter) images of each coordinate.
  std::array<std::vector<long>, 3> srcOff, dstOff;

  Idx3 cachedCells = {-1, -1, -1};
  int cachedPerAxis = -1;
  int cachedDim = -1;
};

/// Advances every profile by v dt.  Pure shift accumulation: no value moves,
/// cost is one multiply-add per axis lattice entry.
void transportExact(DistributionField& f, double dt);

/// Physical node values at one cell under the current shifts: each profile is
/// sampled at the whole-cell offset nearest its accumulated translation.
void gatherCellValues(const DistributionField& f, long cell,
                      std::span<double> out);

/// One relaxation sweep over all cells: gather the transported distribution,
/// take its conserved moments, build the discrete equilibrium, and blend
///
///   f <- f + (1 - alpha) (E - f),   alpha = exp(-dt / tau),
///
/// through the shifted index maps so each storage slot is written exactly
/// once.  tau = 0 writes E outright (instant relaxation); when alpha rounds
/// to one (tau huge against dt) the sweep is skipped, leaving f untouched.
///
/// A storage slot relaxes against the cell that reads it.  Under periodic
/// boundaries that is exactly the per-cell update composed with the gather
/// permutation.  Under clamp the read map is many-to-one at the inflow side:
/// the boundary slot supplies every cell the shifted profile can no longer
/// reach, so it tracks the wall cell's equilibrium (zero-gradient inflow),
/// while slots that have drifted out of the domain are never read again and
/// relax harmlessly against the far edge cell.
///
/// Throws when any cell's gathered moments have non-positive density or
/// temperature (negative tails are retained, so this can happen).
///
/// `stats`, when given, receives the diagnostics the sweep sees for free:
/// domain totals of the gathered moments and the extreme values produced.
struct RelaxStats {
  bool swept = false;        // false when the sweep was skipped (identity)
  ConservedState totals;     // dx^d-weighted sum of gathered cell moments
  double minValue = 0.0;     // smallest stored value after the blend
  double minEquilibrium = 0.0;  // smallest equilibrium entry produced
};

void relaxField(DistributionField& f, double dt, double tau,
                const ProjectionOperator& proj, RelaxWorkspace& ws,
                RelaxStats* stats = nullptr);

inline void relaxField(DistributionField& f, double dt, double tau,
                       const ProjectionOperator& proj) {
  RelaxWorkspace ws;
  relaxField(f, dt, tau, proj, ws);
}

/// Fills every cell with the discrete equilibrium of stateAt(cell center)
/// and resets all shifts.
void initField(DistributionField& f, const ProjectionOperator& proj,
               const std::function<ConservedState(const Vec3&)>& stateAt);

/// General datum: samples ic(x_j, v_k) pointwise, then corrects each cell to
/// the analytic moments stateAt(x_j), so conserved totals start exact even
/// when the sampled shape is not a Maxwellian.
void initFieldSampled(
    DistributionField& f, const ProjectionOperator& proj,
    const std::function<double(const Vec3&, const Vec3&)>& ic,
    const std::function<ConservedState(const Vec3&)>& stateAt);

struct RunStats {
  long steps = 0;    // relaxation sweeps taken
  double dt = 0.0;   // nominal step from the sweep condition
  double time = 0.0; // time actually reached
};

/// Wall-clock seconds spent in each stage, accumulated across steps.
struct StageTimers {
  double transportSec = 0.0;
  double relaxSec = 0.0;
};

/// Everything known after one completed step; the field is in a
/// gather-consistent state when the observer runs.
struct StepRecord {
  long step = 0;      // 1-based
  double t = 0.0;
  RelaxStats relax;   // relax.swept is false for skipped sweeps (huge tau)
};
using StepObserver =
    std::function<void(const StepRecord&, const DistributionField& f)>;

/// Integrates to tfinal with the split scheme.  Order 1 composes transport
/// then relaxation each step; order 2 wraps the relaxation in two half
/// transports (symmetric composition).  The step is dt = safety dx / max|v|
/// per axis, with the last step shortened to land on tfinal exactly.
RunStats runSplitting(DistributionField& f, const ProjectionOperator& proj,
                      double tfinal, double tau, double cflSafety, int order,
                      const StepObserver& observe = {},
                      StageTimers* timers = nullptr);

} // namespace fks
