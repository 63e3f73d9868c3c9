#include "fks/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fks {

namespace {

void printNum(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

std::ofstream openOut(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

}  // namespace

void writeFieldsCsv(std::ostream& os, const MomentSet& m) {
  const SpatialGrid& sg = *m.grid;
  const int d = m.dim;

  os << "x";
  if (d > 1) os << ",y";
  if (d > 2) os << ",z";
  os << ",rho,ux";
  if (d > 1) os << ",uy";
  if (d > 2) os << ",uz";
  os << ",theta,pressure\n";

  const long nc = sg.cellCount();
  for (long q = 0; q < nc; ++q) {
    const Vec3 x = sg.center(q);
    double row[9];
    int n = 0;
    for (int a = 0; a < d; ++a) row[n++] = x[a];
    row[n++] = m.rho[q];
    row[n++] = m.ux[q];
    if (d > 1) row[n++] = m.uy[q];
    if (d > 2) row[n++] = m.uz[q];
    row[n++] = m.theta[q];
    row[n++] = m.pressure[q];
    for (int i = 0; i < n; ++i) {
      if (i) os << ',';
      printNum(os, row[i]);
    }
    os << '\n';
  }
}

void writeFieldsCsv(const std::string& path, const MomentSet& m) {
  std::ofstream os = openOut(path);
  writeFieldsCsv(os, m);
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace {

// Emits one value per cell in x-fastest order (our storage is z-fastest).
void vtkScalarBlock(std::ostream& os, const SpatialGrid& sg,
                    const std::vector<double>& v) {
  for (int i2 = 0; i2 < sg.cells[2]; ++i2)
    for (int i1 = 0; i1 < sg.cells[1]; ++i1)
      for (int i0 = 0; i0 < sg.cells[0]; ++i0) {
        printNum(os, v[sg.lin({i0, i1, i2})]);
        os << '\n';
      }
}

}  // namespace

void writeVtk(std::ostream& os, const MomentSet& m, const std::string& title) {
  if (m.dim != 3)
    throw std::invalid_argument("vtk: three-dimensional fields only");
  const SpatialGrid& sg = *m.grid;
  const long nc = sg.cellCount();

  os << "# vtk DataFile Version 3.0\n";
  os << (title.empty() ? "fields" : title) << '\n';
  os << "ASCII\n";
  os << "DATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << sg.cells[0] << ' ' << sg.cells[1] << ' '
     << sg.cells[2] << '\n';
  os << "ORIGIN ";
  printNum(os, sg.origin[0]);
  os << ' ';
  printNum(os, sg.origin[1]);
  os << ' ';
  printNum(os, sg.origin[2]);
  os << '\n';
  os << "SPACING ";
  for (int a = 0; a < 3; ++a) {
    if (a) os << ' ';
    printNum(os, sg.dx);
  }
  os << '\n';
  os << "POINT_DATA " << nc << '\n';

  const std::vector<double>* scalars[3] = {&m.rho, &m.theta, &m.pressure};
  const char* names[3] = {"rho", "theta", "pressure"};
  for (int s = 0; s < 3; ++s) {
    os << "SCALARS " << names[s] << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    vtkScalarBlock(os, sg, *scalars[s]);
  }

  os << "VECTORS velocity double\n";
  for (int i2 = 0; i2 < sg.cells[2]; ++i2)
    for (int i1 = 0; i1 < sg.cells[1]; ++i1)
      for (int i0 = 0; i0 < sg.cells[0]; ++i0) {
        const long q = sg.lin({i0, i1, i2});
        printNum(os, m.ux[q]);
        os << ' ';
        printNum(os, m.uy[q]);
        os << ' ';
        printNum(os, m.uz[q]);
        os << '\n';
      }
}

void writeVtk(const std::string& path, const MomentSet& m,
              const std::string& title) {
  std::ofstream os = openOut(path);
  writeVtk(os, m, title);
  if (!os) throw std::runtime_error("write failed: " + path);
}

CsvTable readCsv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty csv: " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.header.size())
      throw std::runtime_error("ragged csv row in " + path);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace fks
