#pragma once

#include <functional>
#include <vector>

#include "hopf/eval_point.hpp"

namespace hopf {

struct Extrapolation {
  double value = 0.0;
  double error = 0.0;  // difference of the last two diagonal estimates
  bool converged = false;
  std::vector<double> samples;
};

// Neville extrapolation of f(t_k) to t = 0.
Extrapolation extrapolate_to_zero(const std::vector<double>& t, const std::vector<double>& f,
                                  double tol);

// Limit of f at a pole from samples at pole distances t0 2^-k, k = 0 .. levels-1.
Extrapolation pole_limit(const std::function<double(const EvalPoint&)>& f, Pole pole,
                         double tol = 1e-7, double t0 = 0.05, int levels = 7);

}  // namespace hopf

namespace hopf {

// Value of an expression together with the sum of magnitudes of its terms;
// values below the rounding level of that sum are treated as exact zeros.
struct Term {
  double value;
  double magnitude;
};
using TermFunction = std::function<Term(const EvalPoint&)>;

double cleaned(const Term& t);

struct DeepLimit {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  std::vector<double> samples;  // at pole distances 10^-k
};

// Limit at a pole from samples at pole distances 10^-k, k = k_min .. k_max,
// accelerated by Aitken's process (handles any power-law approach).
DeepLimit deep_pole_limit(const TermFunction& f, Pole pole, int k_min = 1, int k_max = 40);

}  // namespace hopf
