#include "fks/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fks {

namespace {

// Shared Sod tube states, given as (rho, u, theta).
constexpr double kSodRhoL = 1.0, kSodThetaL = 5.0;
constexpr double kSodRhoR = 0.125, kSodThetaR = 4.0;

double maxwell1d(double rho, double u, double theta, double v) {
  return rho / std::sqrt(2.0 * std::numbers::pi * theta) *
         std::exp(-(v - u) * (v - u) / (2.0 * theta));
}

int overrideNx(const PresetOverrides& o, int fallback) {
  const int nx = o.nx.value_or(fallback);
  if (nx < 1) throw std::invalid_argument("preset: nx must be positive");
  return nx;
}

void applyVelocityKnobs(Preset& p, const PresetOverrides& o) {
  p.nv = o.nv.value_or(p.nv);
  p.vmin = o.vmin.value_or(p.vmin);
  p.vmax = o.vmax.value_or(p.vmax);
  p.tau = o.tau.value_or(p.tau);
  p.tfinal = o.tfinal.value_or(p.tfinal);
  if (p.nv < 2) throw std::invalid_argument("preset: nv must be at least 2");
  if (!(p.vmax > p.vmin))
    throw std::invalid_argument("preset: vmax must exceed vmin");
  if (!(p.tau >= 0.0)) throw std::invalid_argument("preset: tau must be >= 0");
  if (!(p.tfinal >= 0.0))
    throw std::invalid_argument("preset: tfinal must be >= 0");
}

void attachSodRiemann(Preset& p) {
  p.hasRiemann = true;
  p.riemannLeft = {kSodRhoL, 0.0, kSodRhoL * kSodThetaL};
  p.riemannRight = {kSodRhoR, 0.0, kSodRhoR * kSodThetaR};
  p.interfaceX = 0.5;
}

Preset makeSod1d(const PresetOverrides& o) {
  Preset p;
  p.name = "sod1d";
  p.dim = 1;
  p.bc = o.bc.value_or(Boundary::clamp);
  p.nv = 100;
  p.vmin = -15.0;
  p.vmax = 15.0;
  p.tau = 1e-2;
  p.tfinal = 0.05;
  applyVelocityKnobs(p, o);

  const int nx = overrideNx(o, 300);
  p.dx = 1.0 / nx;
  const ConservedState left = macroState(1, kSodRhoL, 0.0, kSodThetaL);
  const ConservedState right = macroState(1, kSodRhoR, 0.0, kSodThetaR);
  if (p.bc == Boundary::clamp) {
    p.cells = {nx, 1, 1};
    p.origin = {0.5 * p.dx, 0.0, 0.0};
    p.stateAt = [=](const Vec3& x) { return x[0] <= 0.5 ? left : right; };
    attachSodRiemann(p);
  } else {
    // Periodic closure: mirror the tube at x = 1 so the state is continuous
    // across the seam; waves from the two interfaces stay disjoint until
    // well past the default final time.
    p.cells = {2 * nx, 1, 1};
    p.origin = {0.5 * p.dx, 0.0, 0.0};
    p.stateAt = [=](const Vec3& x) {
      return (x[0] <= 0.5 || x[0] > 1.5) ? left : right;
    };
  }
  return p;
}

Preset makeSod2d(const PresetOverrides& o) {
  Preset p;
  p.name = "sod2d";
  p.dim = 2;
  p.bc = o.bc.value_or(Boundary::clamp);
  p.nv = 20;
  p.vmin = -15.0;
  p.vmax = 15.0;
  p.tau = 0.0;
  p.tfinal = 0.07;
  applyVelocityKnobs(p, o);

  const int nx = overrideNx(o, 100);
  if (nx % 2 != 0)
    throw std::invalid_argument(
        "preset: sod2d needs an even nx (domain is twice as long as tall)");
  p.cells = {nx, nx / 2, 1};
  p.dx = 2.0 / nx;
  p.origin = {0.5 * p.dx, 0.5 * p.dx, 0.0};
  const ConservedState left = macroState(2, kSodRhoL, 0.0, kSodThetaL);
  const ConservedState right = macroState(2, kSodRhoR, 0.0, kSodThetaR);
  p.stateAt = [=](const Vec3& x) {
    const double dx0 = x[0] - 1.0, dx1 = x[1] - 1.0;
    return dx0 * dx0 + dx1 * dx1 <= 0.2 * 0.2 ? left : right;
  };
  return p;
}

Preset makeSod3d(const PresetOverrides& o) {
  Preset p;
  p.name = "sod3d";
  p.dim = 3;
  p.bc = o.bc.value_or(Boundary::clamp);
  p.nv = 12;
  p.vmin = -10.0;
  p.vmax = 10.0;
  p.tau = 0.0;
  p.tfinal = 0.1;
  applyVelocityKnobs(p, o);

  const int nx = overrideNx(o, 50);
  p.cells = {nx, nx, nx};
  p.dx = 1.0 / nx;
  p.origin = {0.5 * p.dx, 0.5 * p.dx, 0.5 * p.dx};
  const ConservedState left = macroState(3, kSodRhoL, 0.0, kSodThetaL);
  const ConservedState right = macroState(3, kSodRhoR, 0.0, kSodThetaR);
  p.stateAt = [=](const Vec3& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return r2 <= 0.25 ? left : right;
  };
  return p;
}

Preset makeSod1dIn3d(const PresetOverrides& o) {
  Preset p;
  p.name = "sod1d-in-3d";
  p.dim = 3;
  p.bc = o.bc.value_or(Boundary::clamp);
  // Same node spacing regime as the spherical tube: at affordable 3d node
  // counts, bounds of +-15 leave the Sod temperatures under-resolved and the
  // relaxation guard trips on the quadrature defect.
  p.nv = 13;
  p.vmin = -10.0;
  p.vmax = 10.0;
  p.tau = 0.0;
  p.tfinal = 0.1;
  applyVelocityKnobs(p, o);

  const int nx = overrideNx(o, 100);
  p.cells = {nx, 2, 2};
  p.dx = 1.0 / nx;
  p.origin = {0.5 * p.dx, 0.5 * p.dx, 0.5 * p.dx};
  const ConservedState left = macroState(3, kSodRhoL, 0.0, kSodThetaL);
  const ConservedState right = macroState(3, kSodRhoR, 0.0, kSodThetaR);
  p.stateAt = [=](const Vec3& x) { return x[0] <= 0.5 ? left : right; };
  attachSodRiemann(p);
  return p;
}

Preset makeHomogeneousRelax(const PresetOverrides& o) {
  Preset p;
  p.name = "homogeneous-relax";
  p.dim = 1;
  p.bc = o.bc.value_or(Boundary::periodic);
  p.nv = 48;
  p.vmin = -12.0;
  p.vmax = 12.0;
  p.tau = 0.1;
  p.tfinal = 0.395;
  applyVelocityKnobs(p, o);

  const int nx = overrideNx(o, 1);
  p.cells = {nx, 1, 1};
  p.dx = 0.05;
  p.origin = {0.5 * p.dx, 0.0, 0.0};
  // Symmetric two-stream start: rho = 1, u = 0, E = (4 + 0.8) / 2 = 2.4.
  // A 2% broad background at the target temperature keeps the grid-edge
  // values well above the init-time conservation fixup, so the datum stays
  // strictly positive; it leaves the moments unchanged.
  p.stateAt = [](const Vec3&) { return macroState(1, 1.0, 0.0, 4.8); };
  p.sample = [](const Vec3&, const Vec3& v) {
    return 0.49 * (maxwell1d(1.0, -2.0, 0.8, v[0]) +
                   maxwell1d(1.0, 2.0, 0.8, v[0])) +
           0.02 * maxwell1d(1.0, 0.0, 4.8, v[0]);
  };
  return p;
}

Preset makeSmoothPeriodic(const PresetOverrides& o) {
  Preset p;
  p.name = "smooth-periodic";
  p.dim = 1;
  p.bc = o.bc.value_or(Boundary::periodic);
  p.nv = 32;
  p.vmin = -8.0;
  p.vmax = 8.0;
  p.tau = 0.5;
  p.tfinal = 0.1;
  applyVelocityKnobs(p, o);

  const int nx = overrideNx(o, 32);
  p.cells = {nx, 1, 1};
  p.dx = 1.0 / nx;
  p.origin = {0.5 * p.dx, 0.0, 0.0};
  p.stateAt = [](const Vec3& x) {
    const double s = std::sin(2.0 * std::numbers::pi * x[0]);
    return macroState(1, 1.0 + 0.2 * s, 0.1 * s, 1.0);
  };
  return p;
}

}  // namespace

ConservedState macroState(int dim, double rho, double ux, double theta) {
  ConservedState U;
  U.rho = rho;
  U.mom = {rho * ux, 0.0, 0.0};
  U.energy = 0.5 * rho * ux * ux + 0.5 * dim * rho * theta;
  return U;
}

const std::vector<std::string>& presetNames() {
  static const std::vector<std::string> names = {
      "sod1d",       "sod2d",
      "sod3d",       "sod1d-in-3d",
      "homogeneous-relax", "smooth-periodic"};
  return names;
}

Preset makePreset(const std::string& name, const PresetOverrides& o) {
  if (name == "sod1d") return makeSod1d(o);
  if (name == "sod2d") return makeSod2d(o);
  if (name == "sod3d") return makeSod3d(o);
  if (name == "sod1d-in-3d") return makeSod1dIn3d(o);
  if (name == "homogeneous-relax") return makeHomogeneousRelax(o);
  if (name == "smooth-periodic") return makeSmoothPeriodic(o);
  std::string msg = "unknown preset '" + name + "'; available:";
  for (const std::string& n : presetNames()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace fks
