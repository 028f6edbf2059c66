#include "epm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "epm/quadrature.hpp"
#include "epm/simd_backend.hpp"

namespace epm {

namespace {

using Poly = std::vector<double>;  // ascending coefficients

Poly scale(Poly p, double s) {
  for (double& c : p) c *= s;
  return p;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
  return out;
}

// (a + b q)^n
Poly binom_pow(double a, double b, int n) {
  Poly out(n + 1, 0.0);
  double coef = 1.0;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    out[k] = coef * std::pow(a, n - k) * std::pow(b, k);
    coef = coef * (n - k) / (k + 1);
  }
  return out;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

struct RawPiece {
  double lo, hi;
  Poly a;  // polynomial part
  Poly b;  // coefficient of 1/q part
  double c2 = 0.0;
};

std::vector<RawPiece> base_pieces(WeightKind kind, const Poly& coeffs) {
  switch (kind) {
    case WeightKind::Spike:
      return {{0.0, 1.0, {1.0, -2.0, 1.0}, {}, 0.0}};
    case WeightKind::CubicBSpline:
      return {{0.0, 0.5, {1.0, 0.0, -6.0, 6.0}, {}, 0.0},
              {0.5, 1.0, scale(binom_pow(1.0, -1.0, 3), 2.0), {}, 0.0}};
    case WeightKind::QuinticBSpline: {
      const Poly p3 = binom_pow(3.0, -3.0, 5);
      const Poly p2 = scale(binom_pow(2.0, -3.0, 5), -6.0);
      const Poly p1 = scale(binom_pow(1.0, -3.0, 5), 15.0);
      return {{0.0, 1.0 / 3.0, add(add(p3, p2), p1), {}, 0.0},
              {1.0 / 3.0, 2.0 / 3.0, add(p3, p2), {}, 0.0},
              {2.0 / 3.0, 1.0, p3, {}, 0.0}};
    }
    case WeightKind::Wendland:
      return {{0.0, 1.0, multiply(binom_pow(1.0, -1.0, 4), {1.0, 4.0}), {}, 0.0}};
    case WeightKind::Mps:
      return {{0.0, 1.0, {-1.0}, {1.0}, 0.0}};
    case WeightKind::Polynomial:
      if (coeffs.empty()) throw std::invalid_argument("polynomial weight needs coefficients");
      if (coeffs.size() > kMaxCoef) throw std::invalid_argument("polynomial degree too large");
      return {{0.0, 1.0, coeffs, {}, 0.0}};
  }
  throw std::logic_error("unreachable");
}

bool is_sph_base(WeightKind kind) {
  return kind == WeightKind::CubicBSpline || kind == WeightKind::QuinticBSpline ||
         kind == WeightKind::Wendland;
}

std::vector<RawPiece> apply_transform(std::vector<RawPiece> pieces, RoleTransform t) {
  switch (t) {
    case RoleTransform::Identity:
      return pieces;
    case RoleTransform::NegDerivative:
      for (auto& p : pieces) {
        if (!p.b.empty() || p.c2 != 0.0)
          throw std::invalid_argument("NegDerivative requires a polynomial kernel");
        p.a = scale(derivative(p.a), -1.0);
      }
      return pieces;
    case RoleTransform::NegDerivativeOverR:
      for (auto& p : pieces) {
        if (!p.b.empty() || p.c2 != 0.0)
          throw std::invalid_argument("NegDerivativeOverR requires a polynomial kernel");
        p.b = scale(derivative(p.a), -1.0);
        p.a.clear();
      }
      return pieces;
    case RoleTransform::OverR:
      for (auto& p : pieces) {
        if (p.c2 != 0.0) throw std::invalid_argument("OverR cannot be applied twice");
        if (!p.b.empty()) {
          if (p.b.size() > 1) throw std::invalid_argument("OverR on general 1/q part unsupported");
          p.c2 = p.b.empty() ? 0.0 : p.b[0];
        }
        p.b = p.a;
        p.a.clear();
      }
      return pieces;
  }
  throw std::logic_error("unreachable");
}

CompiledWeight compile(const std::vector<RawPiece>& pieces) {
  if (pieces.size() > static_cast<std::size_t>(kMaxPieces))
    throw std::invalid_argument("too many kernel pieces");
  CompiledWeight w;
  w.npieces = static_cast<int>(pieces.size());
  w.knots[0] = pieces.front().lo;
  for (int p = 0; p < w.npieces; ++p) {
    const RawPiece& rp = pieces[p];
    w.knots[p + 1] = rp.hi;
    if (rp.a.size() > kMaxCoef || rp.b.size() > kMaxCoef)
      throw std::invalid_argument("kernel piece degree too large");
    w.degA[p] = static_cast<int>(rp.a.size()) - 1;
    w.degB[p] = static_cast<int>(rp.b.size()) - 1;
    for (std::size_t i = 0; i < rp.a.size(); ++i) w.A[p][i] = rp.a[i];
    for (std::size_t i = 0; i < rp.b.size(); ++i) w.B[p][i] = rp.b[i];
    w.c2[p] = rp.c2;
  }
  const RawPiece& first = pieces.front();
  const bool first_singular =
      (!first.b.empty() && first.b[0] != 0.0 && first.lo == 0.0) || first.c2 != 0.0;
  w.singular_at_origin = first_singular;
  if (first_singular) {
    w.w0 = 0.0;  // the 1/r conventions define w(0) := 0
  } else if (first.lo == 0.0) {
    double v = first.a.empty() ? 0.0 : first.a[0];
    // b with zero constant term contributes b[1] at q -> 0
    if (first.b.size() >= 2) v += first.b[1];
    w.w0 = v;
  }
  return w;
}

}  // namespace

double surface_measure(int dim) {
  if (dim == 2) return 2.0 * std::numbers::pi;
  if (dim == 3) return 4.0 * std::numbers::pi;
  throw std::invalid_argument("surface_measure: dim must be 2 or 3");
}

ReferenceWeight::ReferenceWeight(WeightKind kind, RoleTransform transform, int dim,
                                 std::vector<double> poly_coeffs)
    : kind_(kind), transform_(transform), dim_(dim), poly_coeffs_(std::move(poly_coeffs)) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("weight: dim must be 2 or 3");
  if (kind == WeightKind::Mps &&
      (transform == RoleTransform::NegDerivative || transform == RoleTransform::NegDerivativeOverR))
    throw std::invalid_argument("MPS kernel is not differentiable");

  auto raw = base_pieces(kind, poly_coeffs_);
  if (is_sph_base(kind)) {
    // Unity condition C_0(w) = 1 fixes the normalization; computed, not
    // hard-coded, and verified against closed forms in tests.
    CompiledWeight base = compile(raw);
    const double c0 = [&] {
      const std::vector<double> brk(base.knots.begin() + 1, base.knots.begin() + base.npieces);
      return surface_measure(dim) * integrate(
                                        [&](double q) {
                                          double v = scalar_eval_compiled(base, q);
                                          return std::pow(q, dim - 1) * v;
                                        },
                                        0.0, 1.0, brk);
    }();
    normalization_ = 1.0 / c0;
    for (auto& p : raw) {
      p.a = scale(p.a, normalization_);
      p.b = scale(p.b, normalization_);
      p.c2 *= normalization_;
    }
  }
  compiled_ = compile(apply_transform(std::move(raw), transform));
}

double ReferenceWeight::eval(double r) const {
  return scalar_eval_compiled(compiled_, r);
}

double ReferenceWeight::scaled_eval(double h, double r) const {
  if (!(h > 0.0)) throw std::invalid_argument("scaled_eval: h must be > 0");
  double hd = h;
  for (int a = 1; a < dim_; ++a) hd *= h;
  double out;
  const double inv_h = 1.0 / h, inv_hd = 1.0 / hd;
  batch_ops(Backend::Scalar).eval_wh(compiled_, h, inv_h, inv_hd, &r, 1, &out);
  return out;
}

double ReferenceWeight::moment(int k, int d) const {
  if (k < 0) throw std::invalid_argument("moment: k must be >= 0");
  if (kind_ == WeightKind::Mps || transform_ == RoleTransform::OverR ||
      transform_ == RoleTransform::NegDerivativeOverR) {
    // Radial integrand carries q^{k+d-1}; the 1/q (and 1/q^2) parts stay
    // integrable for k + d >= 2 (and >= 3).
    int worst = 0;
    for (int p = 0; p < compiled_.npieces; ++p) {
      if (compiled_.degB[p] >= 0 && compiled_.B[p][0] != 0.0) worst = std::max(worst, 1);
      if (compiled_.c2[p] != 0.0) worst = std::max(worst, 2);
    }
    if (k + d - 1 - worst < 0) throw std::domain_error("moment: radial integral diverges");
  }
  std::vector<double> brk(compiled_.knots.begin() + 1, compiled_.knots.begin() + compiled_.npieces);
  const double radial = integrate(
      [&](double q) { return std::pow(q, k + d - 1) * scalar_eval_compiled(compiled_, q); }, 0.0,
      1.0, brk);
  return surface_measure(d) * radial;
}

bool ReferenceWeight::positive_on_support(int samples) const {
  for (int i = 1; i < samples; ++i) {
    const double q = static_cast<double>(i) / samples;
    if (!(eval(q) > 0.0)) return false;
  }
  return true;
}

WeightTriple make_preset(PresetTag tag, int dim) {
  switch (tag) {
    case PresetTag::GS:
      return {ReferenceWeight(WeightKind::Spike, RoleTransform::Identity, dim),
              ReferenceWeight(WeightKind::Spike, RoleTransform::Identity, dim),
              ReferenceWeight(WeightKind::Spike, RoleTransform::Identity, dim), tag};
    case PresetTag::SC:
      return {ReferenceWeight(WeightKind::CubicBSpline, RoleTransform::Identity, dim),
              ReferenceWeight(WeightKind::CubicBSpline, RoleTransform::NegDerivative, dim),
              ReferenceWeight(WeightKind::CubicBSpline, RoleTransform::NegDerivativeOverR, dim),
              tag};
    case PresetTag::SQ:
      return {ReferenceWeight(WeightKind::QuinticBSpline, RoleTransform::Identity, dim),
              ReferenceWeight(WeightKind::QuinticBSpline, RoleTransform::NegDerivative, dim),
              ReferenceWeight(WeightKind::QuinticBSpline, RoleTransform::NegDerivativeOverR, dim),
              tag};
    case PresetTag::SW:
      return {ReferenceWeight(WeightKind::Wendland, RoleTransform::Identity, dim),
              ReferenceWeight(WeightKind::Wendland, RoleTransform::NegDerivative, dim),
              ReferenceWeight(WeightKind::Wendland, RoleTransform::NegDerivativeOverR, dim), tag};
    case PresetTag::M:
      return {ReferenceWeight(WeightKind::Mps, RoleTransform::Identity, dim),
              ReferenceWeight(WeightKind::Mps, RoleTransform::OverR, dim),
              ReferenceWeight(WeightKind::Mps, RoleTransform::Identity, dim), tag};
    case PresetTag::Custom:
      break;
  }
  throw std::invalid_argument("make_preset: custom triples need explicit coefficients");
}

WeightTriple make_polynomial_triple(const std::vector<double>& coeffs, int dim) {
  return {ReferenceWeight(WeightKind::Polynomial, RoleTransform::Identity, dim, coeffs),
          ReferenceWeight(WeightKind::Polynomial, RoleTransform::Identity, dim, coeffs),
          ReferenceWeight(WeightKind::Polynomial, RoleTransform::Identity, dim, coeffs),
          PresetTag::Custom};
}

PresetTag parse_preset(const std::string& name) {
  if (name == "g-s") return PresetTag::GS;
  if (name == "s-c") return PresetTag::SC;
  if (name == "s-q") return PresetTag::SQ;
  if (name == "s-w") return PresetTag::SW;
  if (name == "m") return PresetTag::M;
  throw std::invalid_argument("unknown preset '" + name + "' (expected g-s, s-c, s-q, s-w, m)");
}

std::string preset_name(PresetTag tag) {
  switch (tag) {
    case PresetTag::GS: return "g-s";
    case PresetTag::SC: return "s-c";
    case PresetTag::SQ: return "s-q";
    case PresetTag::SW: return "s-w";
    case PresetTag::M: return "m";
    case PresetTag::Custom: return "custom";
  }
  return "?";
}

}  // namespace epm
