#pragma once

namespace fks {

/// Primitive state of a 1D ideal gas.
struct EulerState {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

/// Heat-capacity ratio of a gas whose molecules carry only d translational
/// degrees of freedom: 3 in 1D, 2 in 2D, 5/3 in 3D.
constexpr double idealGamma(int dim) { return (dim + 2.0) / dim; }

struct RiemannStar {
  double p = 0.0;  // pressure between the two acoustic waves
  double u = 0.0;  // speed of the contact discontinuity
};

/// Exact solution of the Riemann problem for the 1D Euler equations,
/// self-similar in xi = (x - x0) / t.  Construction solves the star-region
/// pressure to machine precision; sampling classifies each acoustic wave as
/// a shock or a rarefaction fan.  Throws on non-physical input states or
/// when the data open a vacuum region.
class RiemannSolution {
 public:
  RiemannSolution(const EulerState& left, const EulerState& right,
                  double gamma);

  EulerState operator()(double xi) const;
  const RiemannStar& star() const { return star_; }
  double gamma() const { return g_; }

 private:
  EulerState left_, right_;
  double g_ = 0.0;
  double cl_ = 0.0, cr_ = 0.0;  // sound speeds of the outer states
  RiemannStar star_;
};

/// Star state alone, for callers that do not need profiles.
RiemannStar riemannStar(const EulerState& left, const EulerState& right,
                        double gamma);

}  // namespace fks
