#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fks/presets.hpp"

namespace fks {

struct RunOptions {
  std::string preset;
  PresetOverrides knobs;
  double cfl = 0.95;
  int order = 2;
  std::string out;             // field output path, empty for none
  std::string format = "csv";  // csv | vtk
  std::string ref = "none";    // riemann | upwind | none
  std::string report;          // run summary path, empty for none
};

/// exitCode < 0 means "parsed, run it"; otherwise the process should exit
/// with that code (help printed, or a usage error already reported).
struct ParseResult {
  int exitCode = -1;
  RunOptions options;
};

/// Flags as documented in the CLI help; --config FILE reads line-oriented
/// `key = value` entries with # comments, command-line flags take
/// precedence, unknown keys are rejected.
ParseResult parseCommandLine(int argc, const char* const* argv,
                             std::ostream& out, std::ostream& err);

/// Convenience for tests: args without the program name.
ParseResult parseCommandLine(const std::vector<std::string>& args,
                             std::ostream& out, std::ostream& err);

struct RunReport {
  std::string preset;
  int nx = 0, nv = 0;
  long cells = 0;   // spatial cells
  long nodes = 0;   // velocity nodes
  long ncycle = 0;
  double wallSec = 0.0;
  double cycleSec = 0.0;      // wallSec / ncycle
  double cellSec = 0.0;       // wallSec / ncycle / cells
  double transportPct = 0.0;  // share of summed stage time
  double relaxPct = 0.0;
  double massDrift = 0.0;
  double momDrift = 0.0;
  double energyDrift = 0.0;
  double minF = 0.0;
  double minE = 0.0;
  std::size_t stateBytes = 0;      // value storage
  std::size_t workspaceBytes = 0;  // relaxation scratch estimate

  // Filled when --ref produced them; NaN otherwise.
  double refRhoL1, refRhoLinf;  // solver density vs exact profile
  double upwindRhoL1;           // reference scheme density vs exact profile
  double vsUpwindRhoL1;         // solver density vs reference scheme density

  RunReport();
};

/// Builds the preset, runs it, writes any requested outputs, and returns the
/// summary.  Progress and the human-readable summary go to `log`.
RunReport runCase(const RunOptions& opt, std::ostream& log);

/// One header line plus one data row with the fixed column set.
void writeReportCsv(const std::string& path, const RunReport& r);

void printReport(std::ostream& os, const RunReport& r);

}  // namespace fks
