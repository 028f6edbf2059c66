#include "epm/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace epm {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fv[15];
  for (int k = 0; k < 7; ++k) {
    fv[k] = f(c - hw * kXgk[k]);
    fv[14 - k] = f(c + hw * kXgk[k]);
  }
  fv[7] = f(c);
  double resk = 0.0, resg = 0.0;
  for (int k = 0; k < 8; ++k) {
    resk += kWgk[k] * (k == 7 ? fv[7] : fv[k] + fv[14 - k]);
  }
  // Gauss nodes are the odd-index Kronrod nodes.
  for (int k = 0; k < 4; ++k) {
    const int m = 2 * k + 1;
    resg += kWg[k] * (m == 7 ? fv[7] : fv[m] + fv[14 - m]);
  }
  return {resk * hw, std::abs((resk - resg) * hw)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  const Panel p = gk15(f, a, b);
  if (p.error <= tol || depth <= 0) return p.value;
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, depth - 1) + adapt(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints, double abs_tol, int max_depth) {
  std::vector<double> pts{a, b};
  for (double x : breakpoints)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  double sum = 0.0;
  const double tol_per = abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    sum += adapt(f, pts[k], pts[k + 1], tol_per, max_depth);
  return sum;
}

}  // namespace epm
