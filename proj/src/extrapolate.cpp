#include "hopf/extrapolate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hopf {

Extrapolation extrapolate_to_zero(const std::vector<double>& t, const std::vector<double>& f,
                                  double tol) {
  if (t.size() != f.size() || t.size() < 2)
    throw std::invalid_argument("extrapolate_to_zero: need at least two samples");
  const std::size_t n = t.size();
  std::vector<double> prev(f), cur(n);
  std::vector<double> diag{f[0]};
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i)
      cur[i] = (t[i] * prev[i - 1] - t[i - j] * prev[i]) / (t[i] - t[i - j]);
    diag.push_back(cur[j]);
    prev = cur;
  }
  // The last row of the table also gives a sequence of estimates; take the
  // consecutive pair that agrees best.
  Extrapolation out;
  out.samples = f;
  out.error = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (!std::isfinite(diag[i]) || !std::isfinite(diag[i - 1])) continue;
    double e = std::abs(diag[i] - diag[i - 1]);
    if (e < out.error) {
      out.error = e;
      out.value = diag[i];
    }
  }
  out.converged = out.error <= tol * std::max(1.0, std::abs(out.value));
  return out;
}

Extrapolation pole_limit(const std::function<double(const EvalPoint&)>& f, Pole pole, double tol,
                         double t0, int levels) {
  std::vector<double> t, v;
  double tk = t0;
  for (int k = 0; k < levels; ++k, tk *= 0.5) {
    t.push_back(tk);
    v.push_back(f(EvalPoint::near(pole, tk)));
  }
  return extrapolate_to_zero(t, v, tol);
}

}  // namespace hopf

namespace hopf {

double cleaned(const Term& t) {
  if (std::abs(t.value) <= 64.0 * std::numeric_limits<double>::epsilon() * t.magnitude) return 0.0;
  return t.value;
}

DeepLimit deep_pole_limit(const TermFunction& f, Pole pole, int k_min, int k_max) {
  if (k_max - k_min < 4) throw std::invalid_argument("deep_pole_limit: need at least five samples");
  DeepLimit out;
  for (int k = k_min; k <= k_max; ++k)
    out.samples.push_back(cleaned(f(EvalPoint::near(pole, std::pow(10.0, -k)))));
  const auto& v = out.samples;
  const std::size_t n = v.size();
  for (double x : v)
    if (!std::isfinite(x)) {
      out.divergent = true;
      out.value = x;
      out.error = std::numeric_limits<double>::infinity();
      return out;
    }
  bool growing = true;
  for (std::size_t k = n - 6; k + 1 < n; ++k)
    if (!(std::abs(v[k + 1]) > 2.0 * std::abs(v[k]))) growing = false;
  if (growing) {
    out.divergent = true;
    out.value = std::copysign(std::numeric_limits<double>::infinity(), v.back());
    out.error = std::numeric_limits<double>::infinity();
    return out;
  }
  auto aitken = [&](std::size_t k) {
    double d1 = v[k] - v[k - 1], den = v[k] - 2.0 * v[k - 1] + v[k - 2];
    if (den == 0.0) return v[k];
    return v[k] - d1 * d1 / den;
  };
  double a2 = aitken(n - 1), a1 = aitken(n - 2), a0 = aitken(n - 3);
  out.value = a2;
  out.error = std::max(std::abs(a2 - a1), std::abs(a1 - a0));
  return out;
}

}  // namespace hopf
