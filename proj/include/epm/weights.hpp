#pragma once

#include <array>
#include <string>
#include <vector>

namespace epm {

// Reference weight functions live in reference coordinates: support [0, 1),
// positive inside, scaled into physics as w_h(r) = h^{-d} w(r/h).
enum class WeightKind { Spike, CubicBSpline, QuinticBSpline, Wendland, Mps, Polynomial };

// How a base kernel maps into the interpolant/gradient/Laplacian role.
enum class RoleTransform { Identity, NegDerivative, NegDerivativeOverR, OverR };

constexpr int kMaxPieces = 3;
constexpr int kMaxCoef = 16;

// Piecewise rational form A(q) + (B(q) + c2/q)/q on knot intervals. All
// supported kernels and their role transforms fit this shape; both kernel
// backends evaluate it with an identical arithmetic sequence.
struct CompiledWeight {
  int npieces = 0;
  std::array<double, kMaxPieces + 1> knots{};            // knots[0] = 0, knots[npieces] = 1
  std::array<std::array<double, kMaxCoef>, kMaxPieces> A{};
  std::array<std::array<double, kMaxCoef>, kMaxPieces> B{};
  std::array<int, kMaxPieces> degA{};                    // -1 when the part is absent
  std::array<int, kMaxPieces> degB{};
  std::array<double, kMaxPieces> c2{};
  bool singular_at_origin = false;                       // value at q=0 defined as 0
  double w0 = 0.0;                                       // value at q=0 (0 when singular)
};

class ReferenceWeight {
 public:
  ReferenceWeight(WeightKind kind, RoleTransform transform, int dim,
                  std::vector<double> poly_coeffs = {});

  WeightKind kind() const { return kind_; }
  RoleTransform transform() const { return transform_; }
  int dim() const { return dim_; }
  const CompiledWeight& compiled() const { return compiled_; }
  // SPH normalization a_d (1 for non-SPH kinds), cached at construction.
  double normalization() const { return normalization_; }
  const std::vector<double>& poly_coeffs() const { return poly_coeffs_; }
  bool singular_at_origin() const { return compiled_.singular_at_origin; }
  bool differentiable() const { return kind_ != WeightKind::Mps; }

  // Value in reference coordinates; 0 for r >= 1; 0 at r = 0 for /r kinds.
  double eval(double r) const;
  // h^{-d} eval(r/h)
  double scaled_eval(double h, double r) const;
  // C_k = surface(d) * int_0^1 r^{k+d-1} w(r) dr by adaptive quadrature.
  double moment(int k, int d) const;
  double moment(int k) const { return moment(k, dim_); }

  // Positivity on (0,1), checked by sampling; used by tests and the optimizer.
  bool positive_on_support(int samples = 1000) const;

 private:
  WeightKind kind_;
  RoleTransform transform_;
  int dim_;
  std::vector<double> poly_coeffs_;
  double normalization_ = 1.0;
  CompiledWeight compiled_;
};

double surface_measure(int dim);  // 2*pi (d=2), 4*pi (d=3)

enum class PresetTag { GS, SC, SQ, SW, M, Custom };

struct WeightTriple {
  ReferenceWeight wpi;    // interpolant role
  ReferenceWeight wgrad;  // gradient role
  ReferenceWeight wlap;   // Laplacian role
  PresetTag tag = PresetTag::Custom;
};

// Preset names: g-s, s-c, s-q, s-w, m.
WeightTriple make_preset(PresetTag tag, int dim);
WeightTriple make_polynomial_triple(const std::vector<double>& coeffs, int dim);
PresetTag parse_preset(const std::string& name);
std::string preset_name(PresetTag tag);

}  // namespace epm
