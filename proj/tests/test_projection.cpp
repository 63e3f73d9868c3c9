#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fks/projection.hpp"
#include "fks/velocity_grid.hpp"

using namespace fks;

namespace {

double maxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Worst relative moment defect of f against the target U.
double momentDefect(std::span<const double> f, const ConservedState& U,
                    const VelocityGrid& g) {
  const ConservedState have = rawMoments(f, g);
  double num = std::fabs(have.rho - U.rho);
  double den = std::fabs(U.rho);
  for (int a = 0; a < g.dim; ++a) {
    num = std::max(num, std::fabs(have.mom[a] - U.mom[a]));
    den = std::max(den, std::fabs(U.mom[a]));
  }
  num = std::max(num, std::fabs(have.energy - U.energy));
  den = std::max(den, std::fabs(U.energy));
  return num / den;
}

} // namespace

TEST_CASE("three nodes carrying three moments invert exactly") {
  // v in {-1, 0, 1}, unit weight: the normal matrix is [[3,0,1],[0,2,0],
  // [1,0,1/2]] by hand, with inverse [[1,0,-2],[0,1/2,0],[-2,0,6]].
  const std::vector<Vec3> nodes = {{-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0},
                                   {1.0, 0.0, 0.0}};
  const ProjectionOperator proj = buildProjection(1, nodes, 1.0);
  REQUIRE(proj.nmom() == 3);
  const double expect[9] = {1.0, 0.0, -2.0, 0.0, 0.5, 0.0, -2.0, 0.0, 6.0};
  for (int i = 0; i < 9; ++i)
    CHECK(proj.Ainv[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  // With as many nodes as moments the corrected vector is the unique
  // interpolant: f(-1) = E - P/2, f(0) = rho - 2E, f(1) = E + P/2,
  // independent of the starting point.
  ConservedState U;
  U.rho = 0.6;
  U.mom = {0.2, 0.0, 0.0};
  U.energy = 0.25;
  const std::vector<double> ftilde = {0.1, 0.2, 0.3};
  const std::vector<double> fixed = projectConserve(ftilde, U, proj);
  CHECK(fixed[0] == doctest::Approx(0.15).epsilon(1e-13));
  CHECK(fixed[1] == doctest::Approx(0.10).epsilon(1e-13));
  CHECK(fixed[2] == doctest::Approx(0.35).epsilon(1e-13));

  const std::vector<double> other = {9.0, -4.0, 2.5};
  const std::vector<double> fixed2 = projectConserve(other, U, proj);
  for (int k = 0; k < 3; ++k)
    CHECK(fixed2[k] == doctest::Approx(fixed[k]).epsilon(1e-12));
}

TEST_CASE("two nodes cannot carry three moments") {
  // Energy row is half the mass row: rank 2, rejected as degenerate.
  const std::vector<Vec3> nodes = {{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(buildProjection(1, nodes, 1.0), std::runtime_error);
}

TEST_CASE("correction repairs random moment defects to round-off") {
  const VelocityGrid g = buildVelocityGrid(1, 100, -15.0, 15.0);
  const ProjectionOperator proj = buildProjection(g);
  std::mt19937 rng(7121);
  std::uniform_real_distribution<double> fu(0.0, 1.0);
  std::uniform_real_distribution<double> ru(0.1, 2.0);
  std::uniform_real_distribution<double> uu(-3.0, 3.0);
  std::uniform_real_distribution<double> tu(0.5, 5.0);
  std::uniform_real_distribution<double> eta(-0.5, 0.5);
  auto drawState = [&]() {
    ConservedState U;
    const double rho = ru(rng), u = uu(rng), th = tu(rng);
    U.rho = rho;
    U.mom = {rho * u, 0.0, 0.0};
    U.energy = 0.5 * rho * (u * u + th);
    return U;
  };
  std::vector<double> f(g.count), m(g.count);
  // Physically scaled inputs: a noisy maxwellian of one state repaired onto
  // another.  The correction is O(1) and the defect sits at round-off.
  for (int trial = 0; trial < 200; ++trial) {
    const ConservedState U = drawState();
    maxwellianPointwise(drawState(), g, m);
    for (long k = 0; k < g.count; ++k) f[k] = m[k] * (1.0 + eta(rng));
    projectConserveInPlace(f, U, proj);
    CHECK(momentDefect(f, U, g) <= 1e-12);
  }
  // Stress inputs: uniform noise has raw energy ~500 against targets of
  // order one, so round-off grows with the correction magnitude.
  for (int trial = 0; trial < 200; ++trial) {
    const ConservedState U = drawState();
    for (double& x : f) x = fu(rng);
    projectConserveInPlace(f, U, proj);
    CHECK(momentDefect(f, U, g) <= 1e-11);
  }
}

TEST_CASE("correction is L2-minimal: orthogonal to the moment kernel") {
  const VelocityGrid g = buildVelocityGrid(1, 50, -10.0, 10.0);
  const ProjectionOperator proj = buildProjection(g);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> un(-1.0, 1.0);

  std::vector<double> f(g.count), before(g.count);
  for (double& x : f) x = 0.5 + 0.1 * un(rng);
  before = f;
  ConservedState U;
  U.rho = 1.3;
  U.mom = {0.4, 0.0, 0.0};
  U.energy = 2.0;
  projectConserveInPlace(f, U, proj);

  std::vector<double> delta(g.count);
  for (long k = 0; k < g.count; ++k) delta[k] = f[k] - before[k];

  // Kernel vectors: w = x - P C x has zero moments for any x.
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(g.count), w(g.count);
    for (double& v : x) v = un(rng);
    w = projectConserve(x, ConservedState{}, proj);
    const ConservedState mw = rawMoments(w, g);
    REQUIRE(std::fabs(mw.rho) <= 1e-12);
    REQUIRE(std::fabs(mw.mom[0]) <= 1e-12);
    REQUIRE(std::fabs(mw.energy) <= 1e-12);

    double dot = 0.0, nd = 0.0, nw = 0.0;
    for (long k = 0; k < g.count; ++k) {
      dot += delta[k] * w[k];
      nd += delta[k] * delta[k];
      nw += w[k] * w[k];
    }
    CHECK(std::fabs(dot) <= 1e-12 * std::sqrt(nd * nw));
  }
}

TEST_CASE("projection is idempotent") {
  const VelocityGrid g = buildVelocityGrid(2, 20, -8.0, 8.0);
  const ProjectionOperator proj = buildProjection(g);
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  std::vector<double> f(g.count);
  for (double& x : f) x = un(rng);
  ConservedState U;
  U.rho = 1.0;
  U.mom = {0.2, -0.1, 0.0};
  U.energy = 1.7;
  projectConserveInPlace(f, U, proj);
  std::vector<double> again(f);
  projectConserveInPlace(again, U, proj);
  // The second pass sees a round-off residual, not an exact zero, so its
  // correction is a few ulps of the normal-equation scale rather than nothing.
  for (long k = 0; k < g.count; ++k)
    CHECK(std::fabs(again[k] - f[k]) <= 2e-14 * (1.0 + std::fabs(f[k])));
}

TEST_CASE("maxwellian peak values") {
  // 1d standard gas: peak rho (2 pi theta)^{-1/2} at v = u.
  const VelocityGrid g1 = buildVelocityGrid(1, 101, -15.0, 15.0);
  ConservedState U;
  U.rho = 1.0;
  U.mom = {0.0, 0.0, 0.0};
  U.energy = 0.5;  // theta = 1
  std::vector<double> m(g1.count);
  maxwellianPointwise(U, g1, m);
  CHECK(g1.axis[50] == 0.0);
  CHECK(m[50] == doctest::Approx(0.3989422804014327).epsilon(1e-15));

  // 3d, theta = 5: peak (10 pi)^{-3/2}, about 5.68e-3.
  const VelocityGrid g3 = buildVelocityGrid(3, 13, -10.0, 10.0);
  ConservedState U3;
  U3.rho = 1.0;
  U3.mom = {0.0, 0.0, 0.0};
  U3.energy = 7.5;  // theta = 5
  std::vector<double> m3(g3.count);
  maxwellianPointwise(U3, g3, m3);
  const long kc = (6 * 13 + 6) * 13 + 6;
  REQUIRE(g3.speed2[kc] == 0.0);
  const double peak = std::pow(10.0 * std::numbers::pi, -1.5);
  CHECK(peak == doctest::Approx(5.6787e-3).epsilon(2e-4));
  CHECK(m3[kc] == doctest::Approx(peak).epsilon(1e-14));

  ConservedState bad = U;
  bad.rho = 0.0;
  CHECK_THROWS_AS(maxwellianPointwise(bad, g1, m), std::runtime_error);
  ConservedState cold = U;
  cold.energy = 0.0;
  CHECK_THROWS_AS(maxwellianPointwise(cold, g1, m), std::runtime_error);
}

TEST_CASE("discrete equilibrium has the requested moments exactly") {
  const VelocityGrid g = buildVelocityGrid(1, 100, -15.0, 15.0);
  const ProjectionOperator proj = buildProjection(g);
  ConservedState U;
  U.rho = 1.0;
  U.mom = {0.0, 0.0, 0.0};
  U.energy = 2.5;  // rho 1, u 0, theta 5
  std::vector<double> e(g.count);
  discreteEquilibrium(U, g, proj, e);
  const ConservedState have = rawMoments(e, g);
  CHECK(std::fabs(have.rho - 1.0) <= 1e-14);
  CHECK(std::fabs(have.mom[0]) <= 1e-14);
  CHECK(std::fabs(have.energy - 2.5) <= 1e-14);
}

TEST_CASE("quadrature defect of the raw maxwellian shrinks under refinement") {
  ConservedState U;
  U.rho = 1.0;
  U.mom = {0.3, 0.0, 0.0};
  U.energy = 0.5 * (0.3 * 0.3 + 2.0);  // theta = 2
  double last = std::numeric_limits<double>::infinity();
  for (int K : {20, 50, 100}) {
    const VelocityGrid g = buildVelocityGrid(1, K, -15.0, 15.0);
    std::vector<double> m(g.count);
    maxwellianPointwise(U, g, m);
    const ConservedState have = rawMoments(m, g);
    std::vector<double> defect = {have.rho - U.rho, have.mom[0] - U.mom[0],
                                  have.energy - U.energy};
    const double d = maxAbs(defect);
    // Decreases until it bottoms out at accumulation round-off.
    CHECK(d < std::max(last, 5e-15));
    last = d;
  }
}

TEST_CASE("moment kernels reject malformed input") {
  const VelocityGrid g = buildVelocityGrid(1, 10, -5.0, 5.0);
  const ProjectionOperator proj = buildProjection(g);
  std::vector<double> wrong(g.count + 1, 0.5);
  CHECK_THROWS_AS(computeMoments(wrong, g), std::invalid_argument);
  CHECK_THROWS_AS(
      projectConserveInPlace(wrong, ConservedState{}, proj),
      std::invalid_argument);
  std::vector<double> zero(g.count, 0.0);
  CHECK_THROWS_AS(computeMoments(zero, g), std::runtime_error);
  CHECK(rawMoments(zero, g).rho == 0.0);
  CHECK_THROWS_AS(buildProjection(0, std::span<const Vec3>{}, 1.0),
                  std::invalid_argument);
}
