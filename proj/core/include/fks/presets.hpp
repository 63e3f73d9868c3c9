#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fks/riemann.hpp"
#include "fks/spatial_grid.hpp"
#include "fks/state.hpp"
#include "fks/types.hpp"

namespace fks {

/// A fully determined benchmark case: grids, physics constants, initial
/// condition, and the exact 1D reference when one exists.
struct Preset {
  std::string name;
  int dim = 1;
  Idx3 cells = {1, 1, 1};
  double dx = 0.0;
  Vec3 origin = {0.0, 0.0, 0.0};
  Boundary bc = Boundary::periodic;
  int nv = 0;
  double vmin = 0.0, vmax = 0.0;
  double tau = 0.0;
  double tfinal = 0.0;

  /// Analytic conserved moments of the initial condition at a point.
  std::function<ConservedState(const Vec3&)> stateAt;

  /// Pointwise phase-space datum for non-Maxwellian starts; empty means
  /// "discrete equilibrium of stateAt".
  std::function<double(const Vec3&, const Vec3&)> sample;

  bool hasRiemann = false;       // exact profile available along axis 0
  EulerState riemannLeft{}, riemannRight{};
  double interfaceX = 0.0;
};

struct PresetOverrides {
  std::optional<int> nx, nv;
  std::optional<double> vmin, vmax, tau, tfinal;
  std::optional<Boundary> bc;
};

/// Builds one of the named cases with optional knob overrides.  Throws
/// std::invalid_argument for unknown names or inconsistent overrides.
Preset makePreset(const std::string& name, const PresetOverrides& o = {});

const std::vector<std::string>& presetNames();

/// Moments of a gas at rest frame velocity ux along axis 0:
/// E = rho (ux^2 + dim theta) / 2.
ConservedState macroState(int dim, double rho, double ux, double theta);

}  // namespace fks
