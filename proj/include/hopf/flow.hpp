#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hopf/geometry.hpp"
#include "hopf/sturm.hpp"

namespace hopf {

struct FdSettings {
  std::size_t nodes = 2000;
  double dt = 1e-4;
  double eps = 1e-3;  // distance of the end nodes from the poles

  void validate() const;
};

struct FlowConfig {
  HopfParams params;
  double t_end = 1.0;
  std::vector<double> sample_times{0.1, 0.5, 1.0};
  FdSettings fd;
  int M = 40;

  void validate() const;
};

// gamma_m exp(lambda_m b t); C1 relaxes to c / (2(n+1)b); C2 fixed.
SpectralCoeffs evolve_spectral(const SpectralCoeffs& c0, const HopfParams& params, double t);

ExpansionTable::Fields profiles_at(const SpectralCoeffs& c, const std::vector<EvalPoint>& nodes);

struct LimitSurface {
  double C0 = 0.0, C1 = 0.0, C2 = 0.0;
  bool round = false;
  bool convex = false;
  SurfaceProfile profile;
};
LimitSurface limit_surface(const SpectralCoeffs& c0, const HopfParams& params,
                           const std::vector<EvalPoint>& nodes);

// Uniform nodes theta_i = eps + i h, i = 0 .. N-1, ending at pi - eps.
struct FdGrid {
  double eps = 0.0, h = 0.0;
  std::vector<EvalPoint> nodes;
};
FdGrid fd_grid(const FdSettings& s);

class FdInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FdSolution {
  std::vector<double> times;
  std::vector<std::vector<double>> r;   // per time, on the FdGrid nodes
  std::vector<double> r_north, r_south;  // pole values of the boundary fits
  std::size_t steps = 0;
};

// Crank-Nicolson for r_t = b r'' + a cot r' + (a+b) r + c.
FdSolution fd_oracle(const std::vector<double>& r0, const FdGrid& grid, const HopfParams& params,
                     const std::vector<double>& times, double dt);

struct ErrorMetrics {
  double sup = 0.0;
  double l2 = 0.0;  // weighted by sin
};
// Errors on nodes at least 5 eps from either pole.
ErrorMetrics compare(const std::vector<double>& spectral, const std::vector<double>& oracle,
                     const FdGrid& grid);

// s = r'' - cot r' by central differences; end values are left at zero.
std::vector<double> fd_astigmatism(const std::vector<double>& r, const FdGrid& grid);

// Weighted least-squares coefficients of s / sin^{n+2} on e_0 .. e_M over the trusted interior.
std::vector<double> oracle_modes(const std::vector<double>& s, const FdGrid& grid, double n, int M);

struct RateFit {
  double rate = 0.0;      // fitted exponential decay rate (positive = decay)
  double expected = 0.0;
  double residual = 0.0;  // rms of the log-linear fit
  std::size_t samples = 0;

  double relative_error() const { return std::abs(rate - expected) / std::abs(expected); }
};
// Least squares on log|v| over the samples with |v| > 1e-10 |v_0|.
RateFit fit_decay(const std::vector<double>& times, const std::vector<double>& values);

struct EvolutionReport {
  std::vector<double> times;
  std::vector<SpectralCoeffs> coeffs;
  std::vector<ExpansionTable::Fields> spectral;
  std::vector<std::vector<double>> oracle;  // empty unless the oracle ran
  std::vector<ErrorMetrics> errors;
  std::vector<int> rate_modes;
  std::vector<RateFit> mode_rates;
  RateFit c1_rate;
  double limit_C1 = 0.0, limit_C2 = 0.0, limit_gamma0 = 0.0;
};

}  // namespace hopf
