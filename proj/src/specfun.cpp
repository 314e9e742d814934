#include "hopf/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hopf {

namespace {

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

bool is_nonpositive_integer(double x) { return x <= 0.0 && is_integer(x); }

// Nearest integer to x when x is an integer up to accumulated rounding.
bool near_integer(double x, double scale, long& k) {
  double r = std::nearbyint(x);
  if (std::abs(x - r) > 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale))
    return false;
  k = static_cast<long>(r);
  return true;
}

double gamma_value(double x) {
  if (is_nonpositive_integer(x)) throw std::domain_error("gamma: pole");
  return std::tgamma(x);
}

void check_index(double mu, double nu) {
  if (!std::isfinite(mu) || !std::isfinite(nu))
    throw std::domain_error("legendre_p: non-finite index");
  if (mu > 0.0 && is_integer(mu))
    throw std::domain_error("legendre_p: positive integer order is not supported");
  if (std::abs(mu) > kMaxLegendreOrder || std::abs(nu) > kMaxLegendreDegree + 3.0)
    throw std::domain_error("legendre_p: index outside the supported envelope");
}

// P^mu_nu and its theta-derivatives from the series in sin^2(theta/2); z <= 1/2.
struct Triple {
  double v, d1, d2;
};

Triple direct_series(double mu, double nu, const EvalPoint& pt) {
  const double z = pt.sin2_half();
  const double s = pt.sin(), c = pt.cos();
  const double mu_plus_cos = (mu + 1.0) - 2.0 * z;
  const long double a = nu + 1.0, b = -nu, cc = 1.0 - mu;
  long double f0 = hyp2f1_series(a, b, cc, z);
  long double f1 = a * b / cc * hyp2f1_series(a + 1, b + 1, cc + 1, z);
  long double f2 = a * b * (a + 1) * (b + 1) / (cc * (cc + 1)) *
                   hyp2f1_series(a + 2, b + 2, cc + 2, z);
  const double k = gamma_recip(1.0 - mu) * std::pow(pt.cot_half(), mu);
  const double F = static_cast<double>(f0), F1 = static_cast<double>(f1),
               F2 = static_cast<double>(f2);
  Triple t;
  t.v = k * F;
  t.d1 = k * (-mu * F / s + 0.5 * s * F1);
  t.d2 = k * (mu * mu_plus_cos * F / (s * s) + (0.5 * c - mu) * F1 + 0.25 * s * s * F2);
  return t;
}

// Value only, any point; |nu| small.
double direct_value(double mu, double nu, const EvalPoint& pt) {
  if (pt.sin2_half() <= 0.5) return direct_series(mu, nu, pt).v;
  long k;
  if (near_integer(nu + mu, std::abs(nu) + std::abs(mu), k) && k >= 0) {
    double v = direct_series(mu, nu, pt.reflected()).v;
    return (k % 2 == 0) ? v : -v;
  }
  const double w = pt.cos2_half();
  if (!is_integer(mu)) {
    long double t1 = hyp2f1_series(nu + 1.0, -nu, 1.0 + mu, w);
    long double t2 = hyp2f1_series(-mu - nu, 1.0 - mu + nu, 1.0 - mu, w);
    double c1 = gamma_value(-mu) * gamma_recip(-mu - nu) * gamma_recip(1.0 - mu + nu);
    double c2 = gamma_value(mu) * gamma_recip(nu + 1.0) * gamma_recip(-nu);
    double v = c1 * static_cast<double>(t1);
    if (c2 != 0.0) v += c2 * std::pow(w, -mu) * static_cast<double>(t2);
    return std::pow(pt.cot_half(), mu) * v;
  }
  if (is_integer(nu) && nu >= 0.0) {
    long double f = hyp2f1_series(nu + 1.0, -nu, 1.0 - mu, pt.sin2_half());
    return std::pow(pt.cot_half(), mu) * gamma_recip(1.0 - mu) * static_cast<double>(f);
  }
  throw std::domain_error("legendre_p: integer order with non-integer degree past pi/2");
}

// Largest degree for which the series at this point keeps enough digits.
bool series_is_accurate(double nu, const EvalPoint& pt) {
  double chord = 2.0 * std::sqrt(pt.sin2_half());
  return std::abs(nu + 0.5) * chord <= 16.0;
}

struct FamilyWork {
  std::vector<double> v, d1, d2;
  std::vector<bool> analytic;
};

// Family on the northern half (z <= 1/2), count + 2 values.
FamilyWork family_upper(double mu, double nu0, std::size_t count, const EvalPoint& pt) {
  const std::size_t total = count + 2;
  FamilyWork w{std::vector<double>(total), std::vector<double>(total),
               std::vector<double>(total), std::vector<bool>(total, false)};
  std::size_t last_direct = 0;
  for (std::size_t k = 0; k < total; ++k) {
    double nu = nu0 + static_cast<double>(k);
    if (k > 1 && !series_is_accurate(nu, pt)) break;
    Triple t = direct_series(mu, nu, pt);
    w.v[k] = t.v;
    w.d1[k] = t.d1;
    w.d2[k] = t.d2;
    w.analytic[k] = true;
    last_direct = k;
  }
  const double x = pt.cos();
  for (std::size_t k = last_direct; k + 1 < total; ++k) {
    double nu = nu0 + static_cast<double>(k);
    double lead = nu - mu + 1.0;
    if (lead == 0.0) throw std::domain_error("legendre_p: degenerate recurrence");
    w.v[k + 1] = ((2.0 * nu + 1.0) * x * w.v[k] - (nu + mu) * w.v[k - 1]) / lead;
  }
  return w;
}

// Family at a southern point without a parity relation: connection formula
// per degree while it is well conditioned, then upward recurrence.
FamilyWork family_lower(double mu, double nu0, std::size_t count, const EvalPoint& pt) {
  const std::size_t total = count + 2;
  FamilyWork w{std::vector<double>(total), std::vector<double>(total),
               std::vector<double>(total), std::vector<bool>(total, false)};
  const EvalPoint mirror = pt.reflected();
  std::size_t last_direct = 0;
  for (std::size_t k = 0; k < total; ++k) {
    double nu = nu0 + static_cast<double>(k);
    if (k > 1 && !series_is_accurate(nu, mirror)) break;
    w.v[k] = direct_value(mu, nu, pt);
    last_direct = k;
  }
  const double x = pt.cos();
  for (std::size_t k = last_direct; k + 1 < total; ++k) {
    double nu = nu0 + static_cast<double>(k);
    double lead = nu - mu + 1.0;
    if (lead == 0.0) throw std::domain_error("legendre_p: degenerate recurrence");
    w.v[k + 1] = ((2.0 * nu + 1.0) * x * w.v[k] - (nu + mu) * w.v[k - 1]) / lead;
  }
  return w;
}

FamilyWork family_any(double mu, double nu0, std::size_t count, const EvalPoint& pt) {
  if (pt.nearest_pole() == Pole::north) return family_upper(mu, nu0, count, pt);
  long k0;
  if (near_integer(nu0 + mu, std::abs(nu0) + std::abs(mu), k0)) {
    FamilyWork w = family_upper(mu, nu0, count, pt.reflected());
    for (std::size_t k = 0; k < w.v.size(); ++k) {
      long parity = k0 + static_cast<long>(k);
      if (parity < 0) {
        w.v[k] = direct_value(mu, nu0 + static_cast<double>(k), pt);
        w.analytic[k] = false;
      } else {
        double sg = (parity % 2 == 0) ? 1.0 : -1.0;
        w.v[k] *= sg;
        w.d1[k] *= -sg;
        w.d2[k] *= sg;
      }
    }
    return w;
  }
  return family_lower(mu, nu0, count, pt);
}

void check_family(double mu, double nu0, std::size_t count) {
  check_index(mu, nu0);
  check_index(mu, nu0 + static_cast<double>(count == 0 ? 0 : count - 1));
}

}  // namespace

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0)
    r -= 2.0;
  else if (r < -1.0)
    r += 2.0;
  if (r > 0.5)
    r = 1.0 - r;
  else if (r < -0.5)
    r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double gamma_recip(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0) return 1.0 / std::tgamma(x);
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  return sin_pi(x) * std::tgamma(1.0 - x) / std::numbers::pi;
}

long double hyp2f1_series(long double a, long double b, long double c, long double z) {
  long double term = 1.0L, sum = 1.0L;
  const long double tol = std::numeric_limits<long double>::epsilon();
  int quiet = 0;
  for (int k = 0; k < 20000; ++k) {
    long double ak = a + k, bk = b + k;
    if (ak == 0.0L || bk == 0.0L) return sum;
    long double ck = c + k;
    if (ck == 0.0L) throw std::domain_error("hyp2f1: c is a non-positive integer");
    term *= ak * bk / (ck * (k + 1)) * z;
    sum += term;
    if (std::abs(term) <= tol * std::abs(sum)) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw std::runtime_error("hyp2f1: series did not converge");
}

double hyp2f1(double a, double b, double c, double z) {
  if (!(z >= 0.0 && z < 1.0)) throw std::domain_error("hyp2f1: z must lie in [0, 1)");
  if (is_nonpositive_integer(c)) throw std::domain_error("hyp2f1: c is a non-positive integer");
  bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (z <= 0.5 || terminating) return static_cast<double>(hyp2f1_series(a, b, c, z));
  const double w = 1.0 - z;
  const double d = c - a - b;
  if (is_integer(d))
    throw std::domain_error("hyp2f1: integer c - a - b with z > 1/2 is not supported");
  double t1 = gamma_value(c) * gamma_value(d) * gamma_recip(c - a) * gamma_recip(c - b);
  double t2 = gamma_value(c) * gamma_value(-d) * gamma_recip(a) * gamma_recip(b);
  double v = 0.0;
  if (t1 != 0.0) v += t1 * static_cast<double>(hyp2f1_series(a, b, 1.0 - d, w));
  if (t2 != 0.0) v += t2 * std::pow(w, d) * static_cast<double>(hyp2f1_series(c - a, c - b, 1.0 + d, w));
  return v;
}

std::vector<double> legendre_p_sequence(double mu, double nu0, std::size_t count,
                                        const EvalPoint& pt) {
  check_family(mu, nu0, count);
  if (count == 0) return {};
  FamilyWork w = family_any(mu, nu0, count, pt);
  w.v.resize(count);
  return w.v;
}

LegendreFamily legendre_p_family(double mu, double nu0, std::size_t count, const EvalPoint& pt) {
  check_family(mu, nu0, count);
  LegendreFamily out;
  if (count == 0) return out;
  FamilyWork w = family_any(mu, nu0, count, pt);
  const double s = pt.sin(), c = pt.cos();
  out.p.assign(w.v.begin(), w.v.begin() + static_cast<long>(count));
  out.dp.resize(count);
  out.d2p.resize(count);
  // sin P'_nu = (1 - mu + nu) P_{nu+1} - (nu + 1) cos P_nu
  auto slope = [&](std::size_t k) {
    double nu = nu0 + static_cast<double>(k);
    return ((1.0 - mu + nu) * w.v[k + 1] - (nu + 1.0) * c * w.v[k]) / s;
  };
  for (std::size_t k = 0; k < count; ++k) {
    if (w.analytic[k]) {
      out.dp[k] = w.d1[k];
      out.d2p[k] = w.d2[k];
      continue;
    }
    double nu = nu0 + static_cast<double>(k);
    double a = 1.0 - mu + nu, b = nu + 1.0;
    double d0 = slope(k);
    double d1 = w.analytic[k + 1] ? w.d1[k + 1] : slope(k + 1);
    out.dp[k] = d0;
    out.d2p[k] = (a * d1 + b * s * w.v[k] - (b + 1.0) * c * d0) / s;
  }
  return out;
}

namespace {

LegendreFamily single(LegendreIndex idx, const EvalPoint& pt) {
  double nu = idx.nu < -0.5 ? -idx.nu - 1.0 : idx.nu;
  double steps = std::max(0.0, std::floor(nu + 0.5));
  double nu0 = nu - steps;
  LegendreFamily f = legendre_p_family(idx.mu, nu0, static_cast<std::size_t>(steps) + 1, pt);
  return f;
}

}  // namespace

double legendre_p(LegendreIndex idx, const EvalPoint& pt) {
  check_index(idx.mu, idx.nu);
  return single(idx, pt).p.back();
}

double legendre_p_dtheta(LegendreIndex idx, const EvalPoint& pt) {
  check_index(idx.mu, idx.nu);
  return single(idx, pt).dp.back();
}

double legendre_p_d2theta(LegendreIndex idx, const EvalPoint& pt) {
  check_index(idx.mu, idx.nu);
  return single(idx, pt).d2p.back();
}

PoleAsymptote legendre_pole_asymptote(LegendreIndex idx, Pole pole) {
  check_index(idx.mu, idx.nu);
  const double mu = idx.mu, nu = idx.nu;
  if (pole == Pole::north) {
    double lead = std::pow(2.0, mu) * gamma_recip(1.0 - mu);
    if (mu > 0.0) return {lead, 0.0};
    return {0.0, lead};
  }
  long k;
  if (near_integer(nu + mu, std::abs(nu) + std::abs(mu), k) && k >= 0) {
    PoleAsymptote a = legendre_pole_asymptote(idx, Pole::north);
    if (k % 2 != 0) a = {-a.coef_neg, -a.coef_pos};
    return a;
  }
  if (is_integer(mu))
    throw std::domain_error("legendre_pole_asymptote: logarithmic case at the south pole");
  // coefficient of sin^{mu} and of sin^{-mu}
  double on_pos_mu = std::pow(2.0, -mu) * gamma_value(-mu) * gamma_recip(-mu - nu) *
                     gamma_recip(1.0 - mu + nu);
  double on_neg_mu = std::pow(2.0, mu) * gamma_value(mu) * gamma_recip(nu + 1.0) * gamma_recip(-nu);
  if (mu > 0.0) return {on_neg_mu, on_pos_mu};
  return {on_pos_mu, on_neg_mu};
}

}  // namespace hopf
