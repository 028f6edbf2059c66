#include "epm/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace epm {

void write_snapshot_csv(const ParticleSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot: " + path);
  const bool d3 = sys.dim == 3;
  out << (d3 ? "id,kind,x,y,z,u,v,w,p,V\n" : "id,kind,x,y,u,v,p,V\n");
  char buf[512];
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const int kind = sys.kind[i] == ParticleKind::Fluid ? 0 : 1;
    if (d3) {
      std::snprintf(buf, sizeof buf,
                    "%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, kind,
                    sys.pos[0][i], sys.pos[1][i], sys.pos[2][i], sys.vel[0][i], sys.vel[1][i],
                    sys.vel[2][i], sys.pressure[i], sys.volume[i]);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, kind,
                    sys.pos[0][i], sys.pos[1][i], sys.vel[0][i], sys.vel[1][i], sys.pressure[i],
                    sys.volume[i]);
    }
    out << buf;
  }
}

ParticleSystem read_snapshot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read snapshot: " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error(path + ": empty snapshot");
  const bool d3 = header.find(",z,") != std::string::npos;
  ParticleSystem sys;
  sys.dim = d3 ? 3 : 2;
  std::vector<double> row;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    row.clear();
    std::string s = line;
    for (char& c : s)
      if (c == ',') c = ' ';
    std::istringstream is(s);
    double v;
    while (is >> v) row.push_back(v);
    const std::size_t want = d3 ? 10 : 8;
    if (row.size() != want)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed snapshot row");
    const std::size_t i = sys.size();
    for (int a = 0; a < 3; ++a) {
      sys.pos[a].push_back(0.0);
      sys.vel[a].push_back(0.0);
    }
    sys.pressure.push_back(0.0);
    sys.volume.push_back(0.0);
    sys.kind.push_back(row[1] == 0.0 ? ParticleKind::Fluid : ParticleKind::Boundary);
    if (d3) {
      sys.pos[0][i] = row[2];
      sys.pos[1][i] = row[3];
      sys.pos[2][i] = row[4];
      sys.vel[0][i] = row[5];
      sys.vel[1][i] = row[6];
      sys.vel[2][i] = row[7];
      sys.pressure[i] = row[8];
      sys.volume[i] = row[9];
    } else {
      sys.pos[0][i] = row[2];
      sys.pos[1][i] = row[3];
      sys.vel[0][i] = row[4];
      sys.vel[1][i] = row[5];
      sys.pressure[i] = row[6];
      sys.volume[i] = row[7];
    }
  }
  return sys;
}

void write_snapshot_vtk(const ParticleSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot: " + path);
  const std::size_t n = sys.size();
  out << "# vtk DataFile Version 3.0\nparticle snapshot\nASCII\nDATASET POLYDATA\n";
  char buf[256];
  out << "POINTS " << n << " double\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", sys.pos[0][i], sys.pos[1][i],
                  sys.pos[2][i]);
    out << buf;
  }
  out << "VERTICES " << n << " " << 2 * n << "\n";
  for (std::size_t i = 0; i < n; ++i) out << "1 " << i << "\n";
  out << "POINT_DATA " << n << "\n";
  out << "SCALARS kind int 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n; ++i)
    out << (sys.kind[i] == ParticleKind::Fluid ? 0 : 1) << "\n";
  out << "SCALARS p double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", sys.pressure[i]);
    out << buf;
  }
  out << "SCALARS V double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", sys.volume[i]);
    out << buf;
  }
  out << "VECTORS u double\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", sys.vel[0][i], sys.vel[1][i],
                  sys.vel[2][i]);
    out << buf;
  }
}

}  // namespace epm
