#pragma once

#include <span>
#include <vector>

#include "fks/field.hpp"
#include "fks/state.hpp"

namespace fks {

/// Macroscopic fields on the spatial grid, computed from the gathered
/// (shift-resolved) distribution.  Cells whose density is not positive are
/// recorded in vacuumCells and get zero velocity, temperature and pressure
/// instead of a division by zero.
struct MomentSet {
  const SpatialGrid* grid = nullptr;
  int dim = 0;
  std::vector<double> rho, ux, uy, uz, theta, pressure;
  std::vector<long> vacuumCells;
};

MomentSet momentFields(const DistributionField& f);

/// Space-integrated conserved moments of the gathered distribution.
ConservedState fieldTotals(const DistributionField& f);

struct EntropyResult {
  double value = 0.0;  // dx^d dv^d sum of f log f over positive entries
  long clamped = 0;    // negative entries met; each contributes zero
};

/// Discrete H functional; zero entries contribute zero.
EntropyResult discreteEntropy(const DistributionField& f);

struct Norms {
  double l1 = 0.0;  // cellVolume-weighted sum of absolute differences
  double linf = 0.0;
};

Norms errorNorms(std::span<const double> a, std::span<const double> b,
                 double cellVolume);

/// Per-step conservation record assembled from relaxation-sweep statistics.
struct LedgerEntry {
  long step = 0;
  double t = 0.0;
  ConservedState totals;
  double minValue = 0.0;
  double minEquilibrium = 0.0;
};

struct ConservationLedger {
  std::vector<LedgerEntry> entries;

  struct Drift {
    double mass = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
  };

  /// Largest relative deviation of any entry from the first.  Momentum is
  /// normalized by initial mass times vref because it often starts at zero.
  Drift maxDrift(double vref) const;

  double minValue() const;
  double minEquilibrium() const;
};

}  // namespace fks
