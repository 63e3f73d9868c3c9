#include "fks/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "fks/diagnostics.hpp"
#include "fks/field.hpp"
#include "fks/io.hpp"
#include "fks/projection.hpp"
#include "fks/solver.hpp"
#include "fks/upwind.hpp"
#include "fks/velocity_grid.hpp"

namespace fks {

RunReport::RunReport()
    : refRhoL1(std::numeric_limits<double>::quiet_NaN()),
      refRhoLinf(std::numeric_limits<double>::quiet_NaN()),
      upwindRhoL1(std::numeric_limits<double>::quiet_NaN()),
      vsUpwindRhoL1(std::numeric_limits<double>::quiet_NaN()) {}

ParseResult parseCommandLine(int argc, const char* const* argv,
                             std::ostream& out, std::ostream& err) {
  ParseResult res;
  RunOptions& o = res.options;
  std::string bc;

  CLI::App app{"Fast kinetic solver for the BGK equation on Cartesian grids"};
  app.name("fks");
  app.set_config("--config", "",
                 "configuration file: one `key = value` per line, # comments");
  app.allow_config_extras(false);

  app.add_option("--preset", o.preset, "benchmark case to run")
      ->required()
      ->check(CLI::IsMember(presetNames()));
  app.add_option("--nx", o.knobs.nx, "cells per spatial axis")
      ->check(CLI::PositiveNumber);
  app.add_option("--nv", o.knobs.nv, "nodes per velocity axis")
      ->check(CLI::PositiveNumber);
  app.add_option("--vmin", o.knobs.vmin, "lower velocity bound");
  app.add_option("--vmax", o.knobs.vmax, "upper velocity bound");
  app.add_option("--tau", o.knobs.tau, "relaxation time")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tfinal", o.knobs.tfinal, "final time")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--cfl", o.cfl,
                 "step as a fraction of the stable sweep time, in (0, 1]")
      ->check(
          [](const std::string& s) -> std::string {
            try {
              const double v = std::stod(s);
              if (v > 0.0 && v <= 1.0) return {};
            } catch (...) {
            }
            return "cfl must lie in (0, 1]";
          },
          "FRACTION");
  app.add_option("--order", o.order, "splitting order, 1 or 2")
      ->check(CLI::Range(1, 2));
  app.add_option("--bc", bc, "boundary rule")
      ->check(CLI::IsMember({"periodic", "clamp"}));
  app.add_option("--out", o.out, "write final macroscopic fields to this path");
  app.add_option("--format", o.format, "field output format")
      ->check(CLI::IsMember({"csv", "vtk"}));
  app.add_option("--ref", o.ref, "compare the final density to a reference")
      ->check(CLI::IsMember({"riemann", "upwind", "none"}));
  app.add_option("--report", o.report, "write a one-row run summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    res.exitCode = app.exit(e, out, err);
    return res;
  }
  if (!bc.empty())
    o.knobs.bc = (bc == "periodic") ? Boundary::periodic : Boundary::clamp;
  return res;
}

ParseResult parseCommandLine(const std::vector<std::string>& args,
                             std::ostream& out, std::ostream& err) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("fks");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return parseCommandLine(static_cast<int>(argv.size()), argv.data(), out,
                          err);
}

namespace {

std::string fmtFull(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cellsLabel(const SpatialGrid& sg) {
  std::string s = std::to_string(sg.cells[0]);
  for (int a = 1; a < sg.dim; ++a) s += "x" + std::to_string(sg.cells[a]);
  return s;
}

void initCase(DistributionField& f, const ProjectionOperator& proj,
              const Preset& p) {
  if (p.sample)
    initFieldSampled(f, proj, p.sample, p.stateAt);
  else
    initField(f, proj, p.stateAt);
}

}  // namespace

RunReport runCase(const RunOptions& opt, std::ostream& log) {
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0))
    throw std::invalid_argument("cfl must lie in (0, 1]");
  if (opt.order != 1 && opt.order != 2)
    throw std::invalid_argument("order must be 1 or 2");
  if (opt.format != "csv" && opt.format != "vtk")
    throw std::invalid_argument("format must be csv or vtk");
  if (opt.ref != "riemann" && opt.ref != "upwind" && opt.ref != "none")
    throw std::invalid_argument("ref must be riemann, upwind or none");

  const Preset p = makePreset(opt.preset, opt.knobs);
  const VelocityGrid vg = buildVelocityGrid(p.dim, p.nv, p.vmin, p.vmax);
  const SpatialGrid sg =
      buildSpatialGrid(p.dim, p.cells, p.dx, p.origin, p.bc);
  const ProjectionOperator proj = buildProjection(vg);
  DistributionField f = makeField(vg, sg);
  initCase(f, proj, p);

  const long nc = sg.cellCount();
  log << "run: " << p.name << ", " << cellsLabel(sg) << " cells, " << p.nv
      << "^" << p.dim << " velocity nodes, tau = " << p.tau
      << ", tfinal = " << p.tfinal << ", order " << opt.order << "\n";

  ConservationLedger ledger;
  {
    LedgerEntry e0;
    e0.totals = fieldTotals(f);
    e0.minValue = *std::min_element(f.values.begin(), f.values.end());
    e0.minEquilibrium = e0.minValue;
    ledger.entries.push_back(e0);
  }

  StageTimers timers;
  const auto w0 = std::chrono::steady_clock::now();
  const RunStats stats = runSplitting(
      f, proj, p.tfinal, p.tau, opt.cfl, opt.order,
      [&ledger](const StepRecord& rec, const DistributionField&) {
        if (!rec.relax.swept) return;
        LedgerEntry e;
        e.step = rec.step;
        e.t = rec.t;
        e.totals = rec.relax.totals;
        e.minValue = rec.relax.minValue;
        e.minEquilibrium = rec.relax.minEquilibrium;
        ledger.entries.push_back(e);
      },
      &timers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - w0)
          .count();

  RunReport r;
  r.preset = p.name;
  r.nx = p.cells[0];
  r.nv = p.nv;
  r.cells = nc;
  r.nodes = vg.count;
  r.ncycle = stats.steps;
  r.wallSec = wall;
  if (stats.steps > 0) {
    r.cycleSec = wall / stats.steps;
    r.cellSec = r.cycleSec / nc;
  }
  const double stageSum = timers.transportSec + timers.relaxSec;
  if (stageSum > 0.0) {
    r.transportPct = 100.0 * timers.transportSec / stageSum;
    r.relaxPct = 100.0 * timers.relaxSec / stageSum;
  }
  const auto drift =
      ledger.maxDrift(std::max(std::abs(p.vmin), std::abs(p.vmax)));
  r.massDrift = drift.mass;
  r.momDrift = drift.momentum;
  r.energyDrift = drift.energy;
  r.minF = ledger.minValue();
  r.minE = ledger.minEquilibrium();
  r.stateBytes =
      sizeof(double) * (static_cast<std::size_t>(vg.count) * nc +
                        3u * vg.perAxis);
  r.workspaceBytes =
      sizeof(double) *
          (static_cast<std::size_t>(10 + proj.nmom()) * nc +
           (static_cast<std::size_t>(vg.dim) * vg.perAxis + (3 - vg.dim)) *
               nc) +
      sizeof(long) * 2u * vg.perAxis *
          (static_cast<std::size_t>(sg.cells[0]) + sg.cells[1] + sg.cells[2]);

  const bool needMoments = !opt.out.empty() || opt.ref != "none";
  MomentSet m;
  if (needMoments) m = momentFields(f);

  if (opt.ref != "none") {
    if (!(stats.time > 0.0))
      throw std::runtime_error("reference comparison needs tfinal > 0");
    const double vol = std::pow(sg.dx, p.dim);
    std::vector<double> exact;
    if (p.hasRiemann) {
      const RiemannSolution sol(p.riemannLeft, p.riemannRight,
                                idealGamma(p.dim));
      exact.resize(nc);
      for (long q = 0; q < nc; ++q)
        exact[q] = sol((sg.center(q)[0] - p.interfaceX) / stats.time).rho;
    }
    if (opt.ref == "riemann") {
      if (!p.hasRiemann)
        throw std::invalid_argument("preset '" + p.name +
                                    "' has no exact profile");
      const Norms n = errorNorms(m.rho, exact, vol);
      r.refRhoL1 = n.l1;
      r.refRhoLinf = n.linf;
      log << "density vs exact profile: L1 = " << n.l1
          << ", Linf = " << n.linf << "\n";
    } else {
      if (p.dim != 1)
        throw std::invalid_argument(
            "the upwind reference runs in one dimension only");
      DistributionField f2 = makeField(vg, sg);
      initCase(f2, proj, p);
      runUpwind(f2, proj, p.tfinal, p.tau, opt.cfl);
      const MomentSet m2 = momentFields(f2);
      r.vsUpwindRhoL1 = errorNorms(m.rho, m2.rho, vol).l1;
      log << "density vs upwind scheme: L1 = " << r.vsUpwindRhoL1 << "\n";
      if (p.hasRiemann) {
        const Norms n = errorNorms(m.rho, exact, vol);
        r.refRhoL1 = n.l1;
        r.refRhoLinf = n.linf;
        r.upwindRhoL1 = errorNorms(m2.rho, exact, vol).l1;
        log << "density vs exact profile: L1 = " << n.l1
            << " (upwind: " << r.upwindRhoL1 << ")\n";
      }
    }
  }

  if (!opt.out.empty()) {
    if (opt.format == "vtk")
      writeVtk(opt.out, m, p.name);
    else
      writeFieldsCsv(opt.out, m);
    log << "fields written to " << opt.out << "\n";
  }
  if (!opt.report.empty()) {
    writeReportCsv(opt.report, r);
    log << "report written to " << opt.report << "\n";
  }
  printReport(log, r);
  return r;
}

void writeReportCsv(const std::string& path, const RunReport& r) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "preset,nx,nv,ncycle,T,Tcycle,Tcell,transport_pct,relax_pct,"
        "mass_drift,mom_drift,energy_drift,min_f,min_E\n";
  os << r.preset << ',' << r.nx << ',' << r.nv << ',' << r.ncycle << ','
     << fmtFull(r.wallSec) << ',' << fmtFull(r.cycleSec) << ','
     << fmtFull(r.cellSec) << ',' << fmtFull(r.transportPct) << ','
     << fmtFull(r.relaxPct) << ',' << fmtFull(r.massDrift) << ','
     << fmtFull(r.momDrift) << ',' << fmtFull(r.energyDrift) << ','
     << fmtFull(r.minF) << ',' << fmtFull(r.minE) << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

void printReport(std::ostream& os, const RunReport& r) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(4);
  os << "summary:\n";
  os << "  cycles              " << r.ncycle << "\n";
  os << "  wall time           " << r.wallSec << " s\n";
  os << "  per cycle           " << r.cycleSec << " s\n";
  os << "  per cycle per cell  " << r.cellSec << " s\n";
  os << "  transport share     " << r.transportPct << " %\n";
  os << "  relaxation share    " << r.relaxPct << " %\n";
  os << "  mass drift          " << r.massDrift << "\n";
  os << "  momentum drift      " << r.momDrift << "\n";
  os << "  energy drift        " << r.energyDrift << "\n";
  os << "  min stored value    " << r.minF << "\n";
  os << "  min equilibrium     " << r.minE << "\n";
  os << "  state memory        " << r.stateBytes / (1024.0 * 1024.0)
     << " MB (workspace " << r.workspaceBytes / (1024.0 * 1024.0) << " MB)\n";
  os.flags(flags);
  os.precision(prec);
}

}  // namespace fks
