#include "epm/neighbor_list.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "epm/parallel.hpp"

namespace epm {

namespace {

struct Grid {
  int dim;
  std::array<int, 3> ncell{1, 1, 1};
  std::array<double, 3> lo{};
  std::array<double, 3> cell{};
  std::array<bool, 3> periodic{};

  int clamp_coord(double x, int a) const {
    int c = static_cast<int>(std::floor((x - lo[a]) / cell[a]));
    if (c < 0) c = 0;
    if (c >= ncell[a]) c = ncell[a] - 1;
    return c;
  }

  std::size_t flat(int cx, int cy, int cz) const {
    return (static_cast<std::size_t>(cx) * ncell[1] + cy) * ncell[2] + cz;
  }

  std::size_t total() const {
    return static_cast<std::size_t>(ncell[0]) * ncell[1] * ncell[2];
  }
};

struct Candidate {
  std::int32_t j;
  double dx, dy, dz, r;
  bool operator<(const Candidate& o) const { return j < o.j; }
};

// Unique wrapped ring cells along one axis (handles ncell == 2 duplicates).
int ring_cells(const Grid& g, int a, int c, int out[3]) {
  int n = 0;
  for (int s = -1; s <= 1; ++s) {
    int cc = c + s;
    if (g.periodic[a]) {
      cc = (cc + g.ncell[a]) % g.ncell[a];
    } else {
      if (cc < 0 || cc >= g.ncell[a]) continue;
    }
    bool dup = false;
    for (int k = 0; k < n; ++k)
      if (out[k] == cc) dup = true;
    if (!dup) out[n++] = cc;
  }
  return n;
}

}  // namespace

void build_neighbor_list(const ParticleSystem& sys, const DomainSpec& dom, double h,
                         NeighborList& out) {
  if (!(h > 0.0)) throw std::invalid_argument("neighbor list: h must be > 0");
  for (int a = 0; a < dom.dim; ++a)
    if (dom.periodic[a] && !(h < 0.5 * dom.edge(a)))
      throw std::invalid_argument("neighbor list: h must be < half a periodic edge");

  const std::size_t n = sys.size();
  out.h = h;
  out.offsets.assign(n + 1, 0);
  if (n == 0) {
    out.idx.clear();
    out.dx.clear();
    out.dy.clear();
    out.dz.clear();
    out.r.clear();
    out.vj.clear();
    return;
  }

  Grid g;
  g.dim = dom.dim;
  for (int a = 0; a < dom.dim; ++a) {
    g.periodic[a] = dom.periodic[a];
    if (dom.periodic[a]) {
      const double e = dom.edge(a);
      g.ncell[a] = std::max(1, static_cast<int>(std::floor(e / h)));
      g.lo[a] = dom.box_lo[a];
      g.cell[a] = e / g.ncell[a];
    } else {
      const double lo = dom.expanded_lo(a), hi = dom.expanded_hi(a);
      g.ncell[a] = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
      g.lo[a] = lo;
      g.cell[a] = h;
    }
  }
  out.cell_size = g.cell[0];

  // Bucket particles by cell (counting sort; stable in particle order).
  std::vector<std::int32_t> cell_of(n);
  std::vector<std::uint32_t> cell_count(g.total() + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int cx = g.clamp_coord(sys.pos[0][i], 0);
    const int cy = g.clamp_coord(sys.pos[1][i], 1);
    const int cz = (dom.dim == 3) ? g.clamp_coord(sys.pos[2][i], 2) : 0;
    cell_of[i] = static_cast<std::int32_t>(g.flat(cx, cy, cz));
    ++cell_count[cell_of[i] + 1];
  }
  std::partial_sum(cell_count.begin(), cell_count.end(), cell_count.begin());
  std::vector<std::int32_t> bucket(n);
  {
    std::vector<std::uint32_t> cursor(cell_count.begin(), cell_count.end() - 1);
    for (std::size_t i = 0; i < n; ++i) bucket[cursor[cell_of[i]]++] = static_cast<std::int32_t>(i);
  }

  const double h2 = h * h;
  bool any_periodic = false;
  for (int a = 0; a < dom.dim; ++a)
    if (dom.periodic[a]) any_periodic = true;

  auto scan_particle = [&](std::size_t i, auto&& emit) {
    const Vec3 xi = sys.position(i);
    const int cx = g.clamp_coord(xi[0], 0);
    const int cy = g.clamp_coord(xi[1], 1);
    const int cz = (dom.dim == 3) ? g.clamp_coord(xi[2], 2) : 0;
    int rx[3], ry[3], rz[3];
    const int nx = ring_cells(g, 0, cx, rx);
    const int ny = ring_cells(g, 1, cy, ry);
    int nz = 1;
    rz[0] = 0;
    if (dom.dim == 3) nz = ring_cells(g, 2, cz, rz);
    for (int ax = 0; ax < nx; ++ax) {
      for (int ay = 0; ay < ny; ++ay) {
        for (int az = 0; az < nz; ++az) {
          const std::size_t c = g.flat(rx[ax], ry[ay], rz[az]);
          for (std::uint32_t b = cell_count[c]; b < cell_count[c + 1]; ++b) {
            const std::size_t j = static_cast<std::size_t>(bucket[b]);
            if (j == i) continue;
            Vec3 d{sys.pos[0][j] - xi[0], sys.pos[1][j] - xi[1], sys.pos[2][j] - xi[2]};
            if (any_periodic) {
              for (int a = 0; a < dom.dim; ++a) {
                if (dom.periodic[a]) {
                  const double e = dom.edge(a);
                  d[a] -= e * std::round(d[a] / e);
                }
              }
            }
            const double r2 = norm2(d);
            if (r2 < h2) emit(j, d, std::sqrt(r2));
          }
        }
      }
    }
  };

  // Pass 1: degrees.
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      std::uint64_t cnt = 0;
      scan_particle(i, [&](std::size_t, const Vec3&, double) { ++cnt; });
      out.offsets[i + 1] = cnt;
    }
  });
  for (std::size_t i = 0; i < n; ++i) out.offsets[i + 1] += out.offsets[i];

  const std::uint64_t total = out.offsets[n];
  out.idx.resize(total);
  out.dx.resize(total);
  out.dy.resize(total);
  if (dom.dim == 3) out.dz.resize(total);
  out.r.resize(total);
  out.vj.resize(total);

  // Pass 2: fill, sorted by neighbor index.
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    thread_local std::vector<Candidate> cand;
    for (std::size_t i = b; i < e; ++i) {
      cand.clear();
      scan_particle(i, [&](std::size_t j, const Vec3& d, double r) {
        cand.push_back({static_cast<std::int32_t>(j), d[0], d[1], d[2], r});
      });
      std::sort(cand.begin(), cand.end());
      std::uint64_t k = out.offsets[i];
      for (const Candidate& c : cand) {
        out.idx[k] = c.j;
        out.dx[k] = c.dx;
        out.dy[k] = c.dy;
        if (dom.dim == 3) out.dz[k] = c.dz;
        out.r[k] = c.r;
        out.vj[k] = sys.volume[static_cast<std::size_t>(c.j)];
        ++k;
      }
    }
  });
}

}  // namespace epm
