#include "epm/weight_optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "epm/quadrature.hpp"
#include "epm/simd_backend.hpp"

namespace epm {

namespace {

double poly_eval(const std::vector<double>& c, double q) {
  double v = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) v = v * q + c[i];
  return v;
}

std::vector<double> poly_deriv(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

bool poly_positive(const std::vector<double>& c, int samples = 2048) {
  for (int i = 1; i < samples; ++i) {
    const double q = static_cast<double>(i) / samples;
    if (!(poly_eval(c, q) > 0.0)) return false;
  }
  return c[0] > 0.0;
}

double radial_F(const std::function<double(double)>& w, const std::function<double(double)>& dw,
                int d, const std::vector<double>& breakpoints) {
  const double num = integrate(
      [&](double q) { return std::pow(q, d - 1) * (w(q) + 2.0 * std::abs(dw(q))); }, 0.0, 1.0,
      breakpoints, 1e-12);
  const double den = integrate(
      [&](double q) { return std::pow(q, d + 1) * std::abs(w(q)); }, 0.0, 1.0, breakpoints,
      1e-12);
  if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

double objective_F(const ReferenceWeight& w, int d) {
  if (!w.differentiable())
    throw std::domain_error("objective_F requires a C^1 kernel (MPS is not)");
  const CompiledWeight& cw = w.compiled();
  bool pure_poly = true;
  for (int p = 0; p < cw.npieces; ++p)
    if (cw.degB[p] >= 0 || cw.c2[p] != 0.0) pure_poly = false;
  std::vector<double> brk(cw.knots.begin() + 1, cw.knots.begin() + cw.npieces);
  auto value = [&](double q) { return scalar_eval_compiled(cw, q); };
  if (pure_poly) {
    // Differentiate each polynomial piece analytically.
    CompiledWeight dw = cw;
    for (int p = 0; p < cw.npieces; ++p) {
      const int deg = cw.degA[p];
      for (int i = 1; i <= deg; ++i) dw.A[p][i - 1] = static_cast<double>(i) * cw.A[p][i];
      if (deg >= 0) dw.A[p][deg] = 0.0;
      dw.degA[p] = std::max(deg - 1, 0);
    }
    dw.w0 = dw.degA[0] >= 0 ? dw.A[0][0] : 0.0;
    auto deriv = [&, dw](double q) { return scalar_eval_compiled(dw, q); };
    return radial_F(value, deriv, d, brk);
  }
  auto deriv = [&](double q) {
    const double e = 1e-7;
    const double lo = std::max(q - e, 0.0), hi = std::min(q + e, 1.0 - 1e-15);
    return (scalar_eval_compiled(cw, hi) - scalar_eval_compiled(cw, lo)) / (hi - lo);
  };
  return radial_F(value, deriv, d, brk);
}

double objective_F_poly(const std::vector<double>& coeffs, int d) {
  if (!poly_positive(coeffs)) return std::numeric_limits<double>::infinity();
  const std::vector<double> dcoef = poly_deriv(coeffs);
  return radial_F([&](double q) { return poly_eval(coeffs, q); },
                  [&](double q) { return poly_eval(dcoef, q); }, d, {});
}

std::vector<double> polynomial_from_free(const std::vector<double>& free_tail) {
  const int n = static_cast<int>(free_tail.size()) + 2;
  double s0 = 0.0, s1 = 0.0;
  for (int k = 3; k <= n; ++k) {
    s0 += free_tail[k - 3];
    s1 += k * free_tail[k - 3];
  }
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  c[1] = -2.0 - 2.0 * s0 + s1;
  c[2] = 1.0 + s0 - s1;
  for (int k = 3; k <= n; ++k) c[k] = free_tail[k - 3];
  return c;
}

namespace {

// Deterministic Nelder-Mead on the free coefficients.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (int i = 0; i <= n; ++i) val[i] = f(pts[i]);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] < val[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = val[order[i]];
    }
    pts = std::move(p2);
    val = std::move(v2);
    if (std::abs(val[n] - val[0]) < 1e-13 * (1.0 + std::abs(val[0]))) break;
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (int k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
      return x;
    };
    const std::vector<double> xr = blend(-1.0);
    const double fr = f(xr);
    if (fr < val[0]) {
      const std::vector<double> xe = blend(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        val[n] = fe;
      } else {
        pts[n] = xr;
        val[n] = fr;
      }
    } else if (fr < val[n - 1]) {
      pts[n] = xr;
      val[n] = fr;
    } else {
      const std::vector<double> xc = blend(0.5);
      const double fc = f(xc);
      if (fc < val[n]) {
        pts[n] = xc;
        val[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int k = 0; k < n; ++k) pts[i][k] = 0.5 * (pts[i][k] + pts[0][k]);
          val[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (val[i] < val[best]) best = i;
  return pts[best];
}

}  // namespace

std::vector<double> optimize_polynomial(int n, int d) {
  if (n < 2) throw std::invalid_argument("optimize_polynomial: degree must be >= 2");
  if (d != 2 && d != 3) throw std::invalid_argument("optimize_polynomial: dim must be 2 or 3");
  if (n + 1 > kMaxCoef) throw std::invalid_argument("optimize_polynomial: degree too large");
  if (n == 2) return {1.0, -2.0, 1.0};

  auto cost = [&](const std::vector<double>& free_tail) {
    return objective_F_poly(polynomial_from_free(free_tail), d);
  };
  std::vector<double> best_free(n - 2, 0.0);
  double best_val = cost(best_free);
  for (const double step : {0.5, -0.5, 0.15}) {
    const std::vector<double> cand = nelder_mead(cost, best_free, step, 4000);
    const double v = cost(cand);
    if (v < best_val) {
      best_val = v;
      best_free = cand;
    }
  }
  return polynomial_from_free(best_free);
}

}  // namespace epm
