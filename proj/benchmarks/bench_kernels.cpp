#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fks/field.hpp"
#include "fks/presets.hpp"
#include "fks/projection.hpp"
#include "fks/solver.hpp"
#include "fks/velocity_grid.hpp"

namespace {

using namespace fks;

struct Case {
  VelocityGrid vg;
  SpatialGrid sg;
  ProjectionOperator proj;
  DistributionField f;

  Case(int dim, int nv, double vb, Idx3 cells, double dx)
      : vg(buildVelocityGrid(dim, nv, -vb, vb)),
        sg(buildSpatialGrid(dim, cells, dx, {0.5 * dx, 0.5 * dx, 0.5 * dx},
                            Boundary::clamp)),
        proj(buildProjection(vg)),
        f(makeField(vg, sg)) {
    initField(f, proj, [dim](const Vec3& x) {
      return macroState(dim, 1.0 + 0.1 * x[0], 0.2, 2.0);
    });
    transportExact(f, 0.37 * dx / vg.maxAxisSpeed());
  }
};

void BM_Relax1D(benchmark::State& state) {
  Case c(1, 100, 15.0, {300, 1, 1}, 1.0 / 300);
  RelaxWorkspace ws;
  for (auto _ : state) {
    relaxField(c.f, 1e-4, 1e-2, c.proj, ws);
    benchmark::DoNotOptimize(c.f.values.data());
  }
  state.SetItemsProcessed(state.iterations() * c.vg.count *
                          c.sg.cellCount());
}
BENCHMARK(BM_Relax1D);

void BM_Relax2D(benchmark::State& state) {
  Case c(2, 20, 15.0, {64, 32, 1}, 1.0 / 32);
  RelaxWorkspace ws;
  for (auto _ : state) {
    relaxField(c.f, 1e-4, 1e-2, c.proj, ws);
    benchmark::DoNotOptimize(c.f.values.data());
  }
  state.SetItemsProcessed(state.iterations() * c.vg.count *
                          c.sg.cellCount());
}
BENCHMARK(BM_Relax2D);

void BM_Relax3D(benchmark::State& state) {
  Case c(3, 12, 10.0, {16, 16, 16}, 1.0 / 16);
  RelaxWorkspace ws;
  for (auto _ : state) {
    relaxField(c.f, 1e-4, 1e-2, c.proj, ws);
    benchmark::DoNotOptimize(c.f.values.data());
  }
  state.SetItemsProcessed(state.iterations() * c.vg.count *
                          c.sg.cellCount());
}
BENCHMARK(BM_Relax3D);

void BM_Transport3D(benchmark::State& state) {
  Case c(3, 12, 10.0, {16, 16, 16}, 1.0 / 16);
  for (auto _ : state) {
    transportExact(c.f, 9.5e-4);
    benchmark::DoNotOptimize(c.f.axisShift[0].data());
  }
}
BENCHMARK(BM_Transport3D);

void BM_Gather3D(benchmark::State& state) {
  Case c(3, 12, 10.0, {16, 16, 16}, 1.0 / 16);
  std::vector<double> buf(c.vg.count);
  const long mid = c.sg.cellCount() / 2;
  for (auto _ : state) {
    gatherCellValues(c.f, mid, buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(state.iterations() * c.vg.count);
}
BENCHMARK(BM_Gather3D);

void BM_DiscreteEquilibrium(benchmark::State& state) {
  const VelocityGrid vg = buildVelocityGrid(1, 100, -15.0, 15.0);
  const ProjectionOperator proj = buildProjection(vg);
  const ConservedState U = macroState(1, 1.0, 0.3, 2.0);
  std::vector<double> buf(vg.count);
  for (auto _ : state) {
    discreteEquilibrium(U, vg, proj, buf);
    benchmark::DoNotOptimize(buf.data());
  }
}
BENCHMARK(BM_DiscreteEquilibrium);

void BM_ProjectConserve(benchmark::State& state) {
  const VelocityGrid vg = buildVelocityGrid(1, 100, -15.0, 15.0);
  const ProjectionOperator proj = buildProjection(vg);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  std::vector<double> base(vg.count);
  for (double& v : base) v = uni(rng);
  const ConservedState U = macroState(1, 1.0, 0.3, 2.0);
  std::vector<double> buf = base;
  for (auto _ : state) {
    buf = base;
    projectConserveInPlace(buf, U, proj);
    benchmark::DoNotOptimize(buf.data());
  }
}
BENCHMARK(BM_ProjectConserve);

}  // namespace

BENCHMARK_MAIN();
