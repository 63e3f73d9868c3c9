#include "fks/projection.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "fks/detail/maxwell.hpp"

namespace fks {

namespace {

// Shared moment sums: five independent accumulators walked in node order.
// Every moment evaluation in the project funnels through here, which is what
// keeps residuals of already-consistent data exactly zero across code paths.
ConservedState accumulateMoments(const double* f, long n, double w,
                                 const double* c0, const double* c1,
                                 const double* c2, const double* s2) {
  double m = 0.0, p0 = 0.0, p1 = 0.0, p2 = 0.0, e = 0.0;
  for (long k = 0; k < n; ++k) {
    const double fk = f[k];
    m += fk;
    p0 += c0[k] * fk;
    p1 += c1[k] * fk;
    p2 += c2[k] * fk;
    e += s2[k] * fk;
  }
  ConservedState U;
  U.rho = m * w;
  U.mom = {p0 * w, p1 * w, p2 * w};
  U.energy = 0.5 * (e * w);
  return U;
}

// Collision-invariant weights of one node, in moment order
// (mass, momentum components, energy).
inline void momentVector(int dim, double v0, double v1, double v2, double s2,
                         double* out) {
  out[0] = 1.0;
  int b = 1;
  out[b++] = v0;
  if (dim > 1) out[b++] = v1;
  if (dim > 2) out[b++] = v2;
  out[b] = 0.5 * s2;
}

// Dense SPD inverse by Cholesky, sized for the (dim+2) normal matrix.
// Returns false on a non-positive pivot.
bool invertSpd(const double* A, int n, double* Ainv) {
  double L[5 * 5] = {0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A[i * n + j];
      for (int t = 0; t < j; ++t) s -= L[i * n + t] * L[j * n + t];
      if (i == j) {
        if (!(s > 0.0)) return false;
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }
  // Solve A x = e_c column by column.
  for (int c = 0; c < n; ++c) {
    double y[5];
    for (int i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (int t = 0; t < i; ++t) s -= L[i * n + t] * y[t];
      y[i] = s / L[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int t = i + 1; t < n; ++t) s -= L[t * n + i] * Ainv[t * n + c];
      Ainv[i * n + c] = s / L[i * n + i];
    }
  }
  return true;
}

double oneNorm(const double* A, int n) {
  double best = 0.0;
  for (int c = 0; c < n; ++c) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += std::fabs(A[r * n + c]);
    best = std::max(best, s);
  }
  return best;
}

ProjectionOperator buildFromSoA(int dim, long count, double weight,
                                std::array<std::vector<double>, 3> comp,
                                std::vector<double> speed2) {
  ProjectionOperator proj;
  proj.dim = dim;
  proj.count = count;
  proj.weight = weight;
  proj.comp = std::move(comp);
  proj.speed2 = std::move(speed2);

  const int n = proj.nmom();
  if (count < n) throw std::runtime_error("degenerate velocity grid: fewer nodes than moments");

  // Normal matrix A = C C^T = w^2 sum_k m_k m_k^T.
  double A[5 * 5] = {0.0};
  const double w2 = weight * weight;
  for (long k = 0; k < count; ++k) {
    double mk[5];
    momentVector(dim, proj.comp[0][k], proj.comp[1][k], proj.comp[2][k],
                 proj.speed2[k], mk);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A[i * n + j] += w2 * (mk[i] * mk[j]);
  }

  proj.Ainv.assign(n * n, 0.0);
  const bool ok = invertSpd(A, n, proj.Ainv.data());
  proj.conditionEstimate =
      ok ? oneNorm(A, n) * oneNorm(proj.Ainv.data(), n)
         : std::numeric_limits<double>::infinity();
  if (!ok || proj.conditionEstimate > 1e12)
    throw std::runtime_error("degenerate velocity grid");

  // P = C^T A^{-1}; applying P to a residual is then one short dot per node.
  proj.P.assign(count * n, 0.0);
  for (long k = 0; k < count; ++k) {
    double mk[5];
    momentVector(dim, proj.comp[0][k], proj.comp[1][k], proj.comp[2][k],
                 proj.speed2[k], mk);
    double* row = proj.P.data() + k * n;
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += (weight * mk[a]) * proj.Ainv[a * n + b];
      row[b] = s;
    }
  }
  return proj;
}

} // namespace

ProjectionOperator buildProjection(const VelocityGrid& grid) {
  return buildFromSoA(grid.dim, grid.count, grid.weight, grid.comp, grid.speed2);
}

ProjectionOperator buildProjection(int dim, std::span<const Vec3> nodes,
                                   double weight) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("projection: dim must be 1, 2, or 3");
  if (!(weight > 0.0))
    throw std::invalid_argument("projection: node weight must be positive");
  const long count = static_cast<long>(nodes.size());
  std::array<std::vector<double>, 3> comp;
  for (int a = 0; a < kMaxDim; ++a) comp[a].assign(count, 0.0);
  std::vector<double> speed2(count, 0.0);
  for (long k = 0; k < count; ++k) {
    double s2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      comp[a][k] = nodes[k][a];
      s2 += nodes[k][a] * nodes[k][a];
    }
    speed2[k] = s2;
  }
  return buildFromSoA(dim, count, weight, std::move(comp), std::move(speed2));
}

ConservedState rawMoments(std::span<const double> fcell,
                          const VelocityGrid& grid) {
  return accumulateMoments(fcell.data(), grid.count, grid.weight,
                           grid.comp[0].data(), grid.comp[1].data(),
                           grid.comp[2].data(), grid.speed2.data());
}

ConservedState computeMoments(std::span<const double> fcell,
                              const VelocityGrid& grid) {
  if (static_cast<long>(fcell.size()) != grid.count)
    throw std::invalid_argument("moments: node count mismatch");
  ConservedState U = rawMoments(fcell, grid);
  if (!(U.rho > 0.0))
    throw std::runtime_error("vacuum: non-positive density in moments");
  return U;
}

void maxwellianPointwise(const ConservedState& U, const VelocityGrid& grid,
                         std::span<double> out) {
  if (static_cast<long>(out.size()) != grid.count)
    throw std::invalid_argument("maxwellian: output size mismatch");
  if (!(U.rho > 0.0))
    throw std::runtime_error("vacuum: non-positive density");
  const double theta = U.theta(grid.dim);
  if (!(theta > 0.0))
    throw std::runtime_error("cold state: non-positive temperature");

  const double coef = detail::maxwellCoef(U.rho, theta, grid.dim);
  const double inv2t = detail::maxwellInv2Theta(theta);
  const Vec3 u = U.velocity();

  // Per-axis factor tables; inactive axes contribute an exact 1.0.
  std::array<std::vector<double>, 3> ex;
  for (int a = 0; a < kMaxDim; ++a) {
    if (a < grid.dim) {
      ex[a].resize(grid.perAxis);
      for (int i = 0; i < grid.perAxis; ++i)
        ex[a][i] = detail::maxwellAxisFactor(grid.axis[i], u[a], inv2t);
    } else {
      ex[a].assign(1, 1.0);
    }
  }

  const std::int32_t* a0 = grid.axisIndex[0].data();
  const std::int32_t* a1 = grid.axisIndex[1].data();
  const std::int32_t* a2 = grid.axisIndex[2].data();
  for (long k = 0; k < grid.count; ++k)
    out[k] = detail::maxwellNode(coef, ex[0][a0[k]], ex[1][a1[k]], ex[2][a2[k]]);
}

double projectConserveInPlace(std::span<double> f, const ConservedState& U,
                              const ProjectionOperator& proj) {
  if (static_cast<long>(f.size()) != proj.count)
    throw std::invalid_argument("projection: node count mismatch");
  const ConservedState have =
      accumulateMoments(f.data(), proj.count, proj.weight, proj.comp[0].data(),
                        proj.comp[1].data(), proj.comp[2].data(),
                        proj.speed2.data());
  double r[5];
  r[0] = U.rho - have.rho;
  for (int a = 0; a < proj.dim; ++a) r[1 + a] = U.mom[a] - have.mom[a];
  r[proj.dim + 1] = U.energy - have.energy;

  const int n = proj.nmom();
  double minv = std::numeric_limits<double>::infinity();
  for (long k = 0; k < proj.count; ++k) {
    const double* row = proj.P.data() + k * n;
    double c = 0.0;
    for (int b = 0; b < n; ++b) c += row[b] * r[b];
    f[k] += c;
    minv = std::min(minv, f[k]);
  }
  return minv;
}

std::vector<double> projectConserve(std::span<const double> f,
                                    const ConservedState& U,
                                    const ProjectionOperator& proj) {
  std::vector<double> out(f.begin(), f.end());
  projectConserveInPlace(out, U, proj);
  return out;
}

double discreteEquilibrium(const ConservedState& U, const VelocityGrid& grid,
                           const ProjectionOperator& proj,
                           std::span<double> out) {
  maxwellianPointwise(U, grid, out);
  return projectConserveInPlace(out, U, proj);
}

} // namespace fks
