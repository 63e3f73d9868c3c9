#pragma once

#include <span>
#include <vector>

#include "fks/state.hpp"
#include "fks/velocity_grid.hpp"

namespace fks {

/// Conservative correction operator for one velocity lattice.
///
/// C is the (dim+2) x N moment matrix: row b of C against a distribution f
/// gives the b-th conserved moment, with collision-invariant weights
/// (1, v, |v|^2/2) times the node quadrature weight.  P = C^T (C C^T)^{-1}
/// maps a moment defect to the unique L2-minimal correction that repairs it:
/// f + P (U - C f) has moments exactly U and is the closest such point to f.
///
/// P rows are stored per node; the moment rows of C are kept as SoA copies of
/// the node data so the operator is self-contained (it can be built from raw
/// node lists, which is how rank deficiencies are unit-tested).
struct ProjectionOperator {
  int dim = 0;
  long count = 0;          // velocity nodes N
  double weight = 0.0;     // quadrature weight per node
  std::vector<double> P;   // N x (dim+2), row-major per node
  std::vector<double> Ainv;  // (dim+2)^2, inverse of C C^T
  double conditionEstimate = 0.0;  // 1-norm estimate of cond(C C^T)

  // Node data backing C, copied at build time.
  std::array<std::vector<double>, 3> comp;
  std::vector<double> speed2;

  int nmom() const { return dim + 2; }
  const double* rowP(long k) const { return P.data() + k * nmom(); }
};

ProjectionOperator buildProjection(const VelocityGrid& grid);

/// Raw-node variant; nodes need not form a lattice.  Throws
/// std::runtime_error("degenerate velocity grid") when C C^T is numerically
/// singular (condition estimate above 1e12).
ProjectionOperator buildProjection(int dim, std::span<const Vec3> nodes,
                                   double weight);

/// Discrete moments of one cell's node values: rho = sum f w, momentum =
/// sum v f w, energy = sum |v|^2/2 f w, accumulated in node order.
/// Throws on non-positive density ("vacuum").
ConservedState computeMoments(std::span<const double> fcell,
                              const VelocityGrid& grid);

/// Same sums without the positivity check; for diagnostics that must not
/// throw on bad cells.
ConservedState rawMoments(std::span<const double> fcell,
                          const VelocityGrid& grid);

/// Point values of the Maxwellian with moments U on the lattice:
/// M_k = rho (2 pi theta)^{-dim/2} exp(-|v_k - u|^2 / (2 theta)).
/// The exponential factorizes over axes, so only dim*perAxis exponentials are
/// evaluated per call; every other code path that needs Maxwellian values
/// reuses this factorization so results agree bit for bit.
/// Throws on rho <= 0 ("vacuum") and theta <= 0 ("cold state").
void maxwellianPointwise(const ConservedState& U, const VelocityGrid& grid,
                         std::span<double> out);

/// out = f + P (U - C f), overwriting f-like input `out`.
/// Returns the smallest corrected entry (negative tails are retained, not
/// clipped; the caller decides whether to care).
double projectConserveInPlace(std::span<double> f, const ConservedState& U,
                              const ProjectionOperator& proj);

std::vector<double> projectConserve(std::span<const double> f,
                                    const ConservedState& U,
                                    const ProjectionOperator& proj);

/// Discrete equilibrium: the Maxwellian sampled on the lattice, then
/// moment-corrected, E[U] = M + P (U - C M).  Returns the minimum entry.
double discreteEquilibrium(const ConservedState& U, const VelocityGrid& grid,
                           const ProjectionOperator& proj, std::span<double> out);

} // namespace fks
