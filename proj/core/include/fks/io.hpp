#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fks/diagnostics.hpp"

namespace fks {

/// Cell-centered fields, one row per cell in lexicographic cell order.
/// Header: x[,y[,z]],rho,ux[,uy[,uz]],theta,pressure.  Values carry 17
/// significant digits so a read-back is bit-exact.
void writeFieldsCsv(std::ostream& os, const MomentSet& m);
void writeFieldsCsv(const std::string& path, const MomentSet& m);

/// Legacy ASCII structured-points layout, 3D fields only: scalar blocks for
/// rho, theta, pressure and a velocity vector block, x-fastest ordering,
/// origin at the first cell center.
void writeVtk(std::ostream& os, const MomentSet& m, const std::string& title);
void writeVtk(const std::string& path, const MomentSet& m,
              const std::string& title);

/// Minimal numeric CSV reader (header line, then all-double rows).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable readCsv(const std::string& path);

}  // namespace fks
