#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopf/eval_point.hpp"
#include "hopf/extrapolate.hpp"
#include "hopf/quadrature.hpp"

namespace hopf {

using ThetaFunction = std::function<double(const EvalPoint&)>;

// Flow speed a r1 + b r2 + c, with -a/b = 2n + 3.
struct HopfParams {
  double a = -4.0;
  double b = 1.0;
  double c = 1.0;

  static HopfParams from_n(double n, double b, double c);
  static HopfParams from_a(double a, double b, double c);
  double n() const { return (-a / b - 3.0) / 2.0; }
  void validate() const;
};

// Closed-form function of theta with optional derivatives; missing
// derivatives fall back to fourth-order central differences.
struct SmoothFunction {
  ThetaFunction f, df, d2f;

  double value(const EvalPoint& p) const { return f(p); }
  double d1(const EvalPoint& p) const;
  double d2(const EvalPoint& p) const;
};

using Astigmatism = SmoothFunction;
using SupportFunction = SmoothFunction;

double central_d1(const ThetaFunction& f, const EvalPoint& p);
double central_d2(const ThetaFunction& f, const EvalPoint& p);

// s = amp sin^m (bias + tilt cos)
Astigmatism sinpow_astigmatism(double m, double amp = 1.0, double tilt = 0.0, double bias = 1.0);
// s = C0 sin^{2n+2}
Astigmatism hopf_astigmatism(double n, double C0);
// Rational interpolant of samples at increasing theta, continued past the end
// nodes as a power of sin fitted to the two outermost samples.
Astigmatism sampled_astigmatism(std::vector<double> theta, std::vector<double> s);

class ConvexityError : public std::runtime_error {
 public:
  ConvexityError(std::size_t node, double theta, double r1, double r2);
  std::size_t node;
  double theta;
};

class ExtrapolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Surface of revolution given by its astigmatism and C1 = r1(0), C2 = r(0) - r1(0):
//   r = C2 cos + C1 - cos I + J,  I = int_0^theta s/sin,  J = int_0^theta s cot.
class AstigmaticSurface {
 public:
  AstigmaticSurface(Astigmatism s, double C1, double C2);

  const Astigmatism& astigmatism() const { return s_; }
  double C1() const { return C1_; }
  double C2() const { return C2_; }

  double s(const EvalPoint& p) const { return s_.value(p); }
  double r(const EvalPoint& p) const;
  double dr(const EvalPoint& p) const;
  double d2r(const EvalPoint& p) const;
  double r1(const EvalPoint& p) const;
  double r2(const EvalPoint& p) const { return r1(p) + s(p); }
  // r1(p) - r1 at the nearer pole
  double r1_increment(const EvalPoint& p) const;

  double r_at(Pole pole) const;
  double r1_at(Pole pole) const;
  // int_0^pi s / sin
  double focal_integral() const { return I_total_; }

  SupportFunction support() const;

 private:
  double I(const EvalPoint& p) const;
  double J(const EvalPoint& p) const;
  double from_pole_I(const EvalPoint& p) const;
  double from_pole_J(const EvalPoint& p) const;

  Astigmatism s_;
  double C1_, C2_;
  double I_total_ = 0.0, J_total_ = 0.0;
};

struct SurfaceProfile {
  std::vector<EvalPoint> nodes;
  std::vector<double> r, dr, r1, r2, s;
  double C1 = 0.0, C2 = 0.0;
  std::shared_ptr<const AstigmaticSurface> exact;

  std::size_t size() const { return nodes.size(); }
  // Index of the first node with r1 <= 0 or r2 <= 0.
  std::optional<std::size_t> first_nonconvex() const;
};

SurfaceProfile sample_surface(std::shared_ptr<const AstigmaticSurface> surf,
                              const std::vector<EvalPoint>& nodes);
std::vector<EvalPoint> grid_points(const ThetaGrid& grid);

struct Radii {
  std::vector<double> r1, r2;
};
// r1 = r + r' cot, r2 = r'' + r
Radii radii_from_support(const SupportFunction& r, const std::vector<EvalPoint>& nodes);

SurfaceProfile support_from_astigmatism(const Astigmatism& s, double C1, double C2,
                                        const std::vector<EvalPoint>& nodes);
SurfaceProfile support_from_astigmatism(const Astigmatism& s, double C1, double C2,
                                        const ThetaGrid& grid);

// max |dr1/dtheta - s cot| over the nodes, r1 differentiated numerically.
double codazzi_residual(const AstigmaticSurface& surf, const std::vector<EvalPoint>& nodes);

SurfaceProfile hopf_sphere(double n, double C0, double C1, double C2,
                           const std::vector<EvalPoint>& nodes);

struct FocalData {
  double f0 = 0.0, fpi = 0.0;
  double err0 = 0.0, errpi = 0.0;
};
FocalData focal_points(const AstigmaticSurface& surf);
FocalData focal_points(const SurfaceProfile& p);

struct SlopeEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
  bool divergent = false;  // value is then +-inf
};
SlopeEstimate umbilic_slope(const AstigmaticSurface& surf, Pole pole);
SlopeEstimate umbilic_slope(const SurfaceProfile& p, Pole pole);

enum class SlopeOrder { zero, infinite, finite_nonzero, inconclusive };
const char* to_string(SlopeOrder o);
// Behaviour of s / sin^alpha at the pole.
SlopeOrder slope_order_test(const ThetaFunction& s, double alpha, Pole pole);

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> faces;  // 0-based
};
Mesh embed(const SurfaceProfile& p, std::size_t phi_count);

}  // namespace hopf
