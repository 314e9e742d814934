#pragma once

#include <string>
#include <vector>

#include "hopf/extrapolate.hpp"
#include "hopf/geometry.hpp"
#include "hopf/quadrature.hpp"

namespace hopf {

struct SturmThresholds {
  double boundary = 1e-6;  // |boundary residual| < boundary * scale
  double orthogonality = 1e-9;
  double eigen_residual = 1e-7;
  double limit_tolerance = 1e-9;  // relative spread of accelerated pole limits
};

// -(2n + 1 + m) m
double eigenvalue(double n, int m);

enum class Integrability { finite, divergent, inconclusive };
const char* to_string(Integrability v);

// Partial integrals of a non-negative integrand over (eps_k, pi - eps_k),
// eps_k = 10^-k, with a verdict on the limit eps -> 0.
struct NestedIntegral {
  std::vector<double> eps;
  std::vector<double> partial;
  Integrability verdict = Integrability::inconclusive;
};
NestedIntegral nested_integral(const TermFunction& integrand, int k_min = 2, int k_max = 8);

enum class EndpointClass { limit_circle, limit_point };
const char* to_string(EndpointClass c);

struct LcReport {
  double n = 0.0;
  EndpointClass cls = EndpointClass::limit_point;
  NestedIntegral first, second;  // squared norms of the two solutions of L u = 0
};
LcReport lc_classify(double n);

struct BoundaryResidual {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
};
// lim sin^{2n+1} d/dtheta (u / sin^n) at the pole.
BoundaryResidual bc_residual(const SmoothFunction& u, double n, Pole pole);
// Same limit for the basis element e_m, via the order-lowering identity.
BoundaryResidual basis_bc_residual(double n, int m, Pole pole);
// Typical size of u away from the poles, used to scale residual thresholds.
double function_scale(const ThetaFunction& u);

struct DomainCheck {
  double n = 0.0;
  SturmThresholds thresholds;
  bool in_L2 = false;
  double norm_u = 0.0;  // || s / sin^{n+2} ||
  bool op_in_L2 = false;
  double norm_Lu = 0.0;  // || L (s / sin^{n+2}) ||
  NestedIntegral u_witness, Lu_witness;
  double bc_north = 0.0, bc_south = 0.0;  // condition (II) limits
  bool bc_north_ok = false, bc_south_ok = false;
  double bc_scale = 0.0;
  double cond2_north = 0.0, cond2_south = 0.0;  // n lim s / sin^2

  bool condition_I() const { return in_L2 && op_in_L2; }
  bool condition_II() const { return bc_north_ok && bc_south_ok; }
  bool passed() const { return condition_I() && condition_II(); }
  std::vector<std::string> failures() const;
};
DomainCheck check_domain(const Astigmatism& s, double n, const SturmThresholds& th = {});

// e_0 = sin^n, e_m = P^{-n}_{n+m}(cos theta) and theta-derivatives, m = 0 .. M.
struct BasisValues {
  std::vector<double> e, de, d2e;
};
BasisValues basis_at(double n, int M, const EvalPoint& pt);

double basis_norm(double n, int m);
std::vector<double> basis_norms(double n, int M, const ThetaGrid& grid);
// <e_i, e_j> / (||e_i|| ||e_j||)
std::vector<std::vector<double>> basis_gram(double n, int M, const ThetaGrid& grid);
// max over nodes of |L e_m - lambda_m e_m| relative to the size of its terms
double eigen_residual(double n, int m, const std::vector<EvalPoint>& nodes);

struct SpectralCoeffs {
  double n = 0.0;
  std::vector<double> gamma;  // gamma_0 .. gamma_M
  double C1 = 0.0, C2 = 0.0;
  double tail = 0.0;  // || u - sum ||, Parseval estimate

  int M() const { return static_cast<int>(gamma.size()) - 1; }
  void validate() const;
};

SpectralCoeffs project(const Astigmatism& s, double n, int M, double C1, double C2,
                       const ThetaGrid& grid);
SpectralCoeffs project(const AstigmaticSurface& surf, double n, int M, const ThetaGrid& grid);

double gamma0_identity(double n, double f0, double fpi);
double gamma1_identity(double n, double r1_0, double r1_pi);

// Precomputed pieces of the expansions of s, r1, r at fixed nodes.
class ExpansionTable {
 public:
  ExpansionTable(double n, int M, std::vector<EvalPoint> nodes);

  double n() const { return n_; }
  int M() const { return M_; }
  const std::vector<EvalPoint>& nodes() const { return nodes_; }

  struct Fields {
    std::vector<double> s, r1, r, dr;
  };
  Fields expand(const SpectralCoeffs& c) const;

 private:
  double n_;
  int M_;
  std::vector<EvalPoint> nodes_;
  // per node: kernel parts, then per mode m = 1..M
  std::vector<double> k_s_, k_r1_, k_r_, k_dr_;
  std::vector<double> m_s_, m_r1_, m_r_, m_dr_;
};

ExpansionTable::Fields expand_r1_and_r(const SpectralCoeffs& c, const std::vector<EvalPoint>& nodes);

}  // namespace hopf
