#include "epm/reference_profile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epm {

namespace {

bool parse_two_doubles(const std::string& line, double& a, double& b) {
  std::string s = line;
  for (char& c : s)
    if (c == ',' || c == ';' || c == '\t') c = ' ';
  std::istringstream is(s);
  return static_cast<bool>(is >> a >> b);
}

}  // namespace

ReferenceProfile load_reference_profile(const std::string& path, ProfileKind kind) {
  (void)kind;  // both kinds share the format; kind is for caller bookkeeping
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference profile: " + path);
  ReferenceProfile p;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    double a, b;
    if (!parse_two_doubles(line, a, b)) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
    }
    header_allowed = false;
    if (!p.abscissa.empty() && !(a > p.abscissa.back()))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": abscissae must be strictly increasing");
    p.abscissa.push_back(a);
    p.value.push_back(b);
  }
  if (p.abscissa.empty()) throw std::runtime_error(path + ": no data rows");
  return p;
}

void save_reference_profile(const ReferenceProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write reference profile: " + path);
  char buf[128];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.abscissa[i], p.value[i]);
    out << buf;
  }
}

}  // namespace epm
