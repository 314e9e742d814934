#pragma once

#include <cstddef>
#include <vector>

#include "hopf/eval_point.hpp"

namespace hopf {

// 1/Gamma(x); exactly zero at 0, -1, -2, ...
double gamma_recip(double x);

// sin(pi x) with exact argument reduction.
double sin_pi(double x);

// Gauss hypergeometric 2F1(a, b; c; z) for 0 <= z < 1.
double hyp2f1(double a, double b, double c, double z);

// Power series of 2F1 summed in extended precision; the caller guarantees
// convergence (|z| small enough or the series terminates).
long double hyp2f1_series(long double a, long double b, long double c, long double z);

struct LegendreIndex {
  double mu;
  double nu;
};

inline constexpr double kMaxLegendreOrder = 10.0;
inline constexpr double kMaxLegendreDegree = 64.0;

// Ferrers function P^mu_nu(cos theta).
double legendre_p(LegendreIndex idx, const EvalPoint& pt);
double legendre_p_dtheta(LegendreIndex idx, const EvalPoint& pt);
double legendre_p_d2theta(LegendreIndex idx, const EvalPoint& pt);

// P^mu_{nu0 + k}(cos theta) for k = 0 .. count-1.
std::vector<double> legendre_p_sequence(double mu, double nu0, std::size_t count,
                                        const EvalPoint& pt);

// Same family with first and second theta-derivatives.
struct LegendreFamily {
  std::vector<double> p, dp, d2p;
};
LegendreFamily legendre_p_family(double mu, double nu0, std::size_t count, const EvalPoint& pt);

// P^mu_nu ~ coef_neg * sin^{-|mu|} + coef_pos * sin^{|mu|} near the pole.
struct PoleAsymptote {
  double coef_neg;
  double coef_pos;
};
PoleAsymptote legendre_pole_asymptote(LegendreIndex idx, Pole pole);

}  // namespace hopf
