#include "hopf/sturm.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "hopf/specfun.hpp"

namespace hopf {

double eigenvalue(double n, int m) { return -(2.0 * n + 1.0 + m) * m; }

const char* to_string(Integrability v) {
  switch (v) {
    case Integrability::finite: return "finite";
    case Integrability::divergent: return "divergent";
    case Integrability::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(EndpointClass c) {
  return c == EndpointClass::limit_circle ? "LC" : "LP";
}

namespace {

double integrate_rule(const std::vector<QuadNode>& rule, const std::function<double(const EvalPoint&)>& g) {
  double sum = 0.0;
  for (const auto& q : rule) sum += q.weight * g(q.pt);
  return sum;
}

Integrability judge(const std::vector<double>& partial) {
  const std::size_t n = partial.size();
  if (n < 4) return Integrability::inconclusive;
  std::vector<double> d;
  for (std::size_t k = 1; k < n; ++k) d.push_back(partial[k] - partial[k - 1]);
  const double last = partial.back();
  if (!std::isfinite(last)) return Integrability::divergent;
  if (d.back() <= 1e-13 * std::abs(last) || last == 0.0) return Integrability::finite;
  bool shrinking = true, steady = true;
  for (std::size_t j = d.size() - 3; j + 1 < d.size(); ++j) {
    double rho = d[j] > 0.0 ? d[j + 1] / d[j] : std::numeric_limits<double>::infinity();
    if (!(rho < 0.999)) shrinking = false;
    if (!(rho >= 0.9999)) steady = false;
  }
  if (shrinking) return Integrability::finite;
  if (steady) return Integrability::divergent;
  return Integrability::inconclusive;
}

}  // namespace

NestedIntegral nested_integral(const TermFunction& integrand, int k_min, int k_max) {
  if (k_min < 1 || k_max - k_min < 3) throw std::invalid_argument("nested_integral: bad range");
  auto g = [&integrand](const EvalPoint& p) { return cleaned(integrand(p)); };
  NestedIntegral out;
  double sum = 0.0;
  const double half = 0.5 * std::numbers::pi;
  for (Pole pole : {Pole::north, Pole::south})
    sum += integrate_rule(shell_rule(pole, std::pow(10.0, -k_min), half), g);
  out.eps.push_back(std::pow(10.0, -k_min));
  out.partial.push_back(sum);
  auto extend = [&](int from, int to) {
    for (int k = from; k <= to; ++k) {
      double lo = std::pow(10.0, -k), hi = std::pow(10.0, -(k - 1));
      for (Pole pole : {Pole::north, Pole::south}) sum += integrate_rule(shell_rule(pole, lo, hi), g);
      out.eps.push_back(lo);
      out.partial.push_back(sum);
    }
  };
  extend(k_min + 1, k_max);
  out.verdict = judge(out.partial);
  if (out.verdict == Integrability::inconclusive && k_max < 16) {
    extend(k_max + 1, 16);
    out.verdict = judge(out.partial);
  }
  return out;
}

LcReport lc_classify(double n) {
  if (!std::isfinite(n)) throw std::invalid_argument("lc_classify: n must be finite");
  LcReport rep;
  rep.n = n;
  auto square = [](double v) { return Term{v * v, v * v}; };
  if (n == 0.0) {
    rep.first = nested_integral([&](const EvalPoint& p) {
      Term t = square(std::log(p.cot_half()));
      return Term{t.value * p.sin(), t.magnitude * p.sin()};
    });
    rep.second = nested_integral([](const EvalPoint& p) { return Term{p.sin(), p.sin()}; });
  } else {
    rep.first = nested_integral([n](const EvalPoint& p) {
      double v = std::pow(p.cot_half(), 2.0 * n) * p.sin();
      return Term{v, v};
    });
    rep.second = nested_integral([n](const EvalPoint& p) {
      double v = std::pow(p.cot_half(), -2.0 * n) * p.sin();
      return Term{v, v};
    });
  }
  auto a = rep.first.verdict, b = rep.second.verdict;
  if (a == Integrability::divergent || b == Integrability::divergent)
    rep.cls = EndpointClass::limit_point;
  else if (a == Integrability::finite && b == Integrability::finite)
    rep.cls = EndpointClass::limit_circle;
  else
    throw std::runtime_error("lc_classify: integrability test inconclusive up to eps = 1e-16");
  return rep;
}

namespace {

BoundaryResidual from_limit(const DeepLimit& d) { return {d.value, d.error, d.divergent}; }

}  // namespace

BoundaryResidual bc_residual(const SmoothFunction& u, double n, Pole pole) {
  return from_limit(deep_pole_limit(
      [&u, n](const EvalPoint& p) {
        double sn = std::sin(p.pole_distance());
        double a = std::pow(sn, n + 1.0) * u.d1(p);
        double b = n * p.cos() * std::pow(sn, n) * u.value(p);
        return Term{a - b, std::abs(a) + std::abs(b)};
      },
      pole));
}

BoundaryResidual basis_bc_residual(double n, int m, Pole pole) {
  if (m < 0) throw std::invalid_argument("basis_bc_residual: m must be non-negative");
  if (m == 0) return {0.0, 0.0, false};
  // d/dtheta (sin^mu P^mu_nu) = -(nu + mu)(nu - mu + 1) sin^mu P^{mu-1}_nu with mu = -n
  const double nu = n + m;
  const double k = -(nu - n) * (nu + n + 1.0);
  return from_limit(deep_pole_limit(
      [n, nu, k](const EvalPoint& p) {
        double v = k * std::pow(p.sin(), n + 1.0) * legendre_p_sequence(-n - 1.0, nu, 1, p)[0];
        return Term{v, std::abs(v)};
      },
      pole));
}

double function_scale(const ThetaFunction& u) {
  double m = 0.0;
  for (const auto& p : midpoint_nodes(64)) m = std::max(m, std::abs(u(p)));
  return m;
}

std::vector<std::string> DomainCheck::failures() const {
  std::vector<std::string> out;
  if (!in_L2) out.push_back("s/sin^(n+2) is not in L2 (witness norm " + std::to_string(norm_u) + ")");
  if (!op_in_L2)
    out.push_back("L(s/sin^(n+2)) is not in L2 (witness norm " + std::to_string(norm_Lu) + ")");
  if (!bc_north_ok)
    out.push_back("boundary condition fails at theta=0 (residual " + std::to_string(bc_north) + ")");
  if (!bc_south_ok)
    out.push_back("boundary condition fails at theta=pi (residual " + std::to_string(bc_south) + ")");
  return out;
}

DomainCheck check_domain(const Astigmatism& s, double n, const SturmThresholds& th) {
  if (!(n > -1.0 && n < 1.0)) throw std::domain_error("check_domain: n must lie in (-1, 1)");
  DomainCheck dc;
  dc.n = n;
  dc.thresholds = th;
  const double p = n + 2.0;

  dc.u_witness = nested_integral([&s, p](const EvalPoint& q) {
    double sn = q.sin();
    double u = s.value(q) / std::pow(sn, p);
    return Term{u * u * sn, u * u * sn};
  });
  dc.in_L2 = dc.u_witness.verdict == Integrability::finite;
  dc.norm_u = std::sqrt(dc.u_witness.partial.back());

  // L(s / sin^{n+2}) = s''/sin^{n+2} - (2n+3) cos s'/sin^{n+3} + 2(n+1)(1+cos^2) s/sin^{n+4}
  dc.Lu_witness = nested_integral([&s, n, p](const EvalPoint& q) {
    double sn = q.sin(), c = q.cos();
    double a = s.d2(q) / std::pow(sn, p);
    double b = (2.0 * n + 3.0) * c * s.d1(q) / std::pow(sn, p + 1.0);
    double d = 2.0 * (n + 1.0) * (1.0 + c * c) * s.value(q) / std::pow(sn, p + 2.0);
    double v = cleaned({a - b + d, std::abs(a) + std::abs(b) + std::abs(d)});
    return Term{v * v * sn, v * v * sn};
  });
  dc.op_in_L2 = dc.Lu_witness.verdict == Integrability::finite;
  dc.norm_Lu = std::sqrt(dc.Lu_witness.partial.back());

  dc.bc_scale = function_scale(s.f);
  const double tol = th.boundary * std::max(dc.bc_scale, std::numeric_limits<double>::min());
  for (Pole pole : {Pole::north, Pole::south}) {
    DeepLimit d = deep_pole_limit(
        [&s, n](const EvalPoint& q) {
          double sn = q.sin();
          double a = s.d1(q) / sn;
          double b = 2.0 * (n + 1.0) * q.cos() * s.value(q) / (sn * sn);
          return Term{a - b, std::abs(a) + std::abs(b)};
        },
        pole);
    bool ok = !d.divergent && std::abs(d.value) < tol && d.error < tol;
    DeepLimit c2 = deep_pole_limit(
        [&s, n](const EvalPoint& q) {
          double v = n * s.value(q) / (q.sin() * q.sin());
          return Term{v, std::abs(v)};
        },
        pole);
    if (pole == Pole::north) {
      dc.bc_north = d.value;
      dc.bc_north_ok = ok;
      dc.cond2_north = c2.value;
    } else {
      dc.bc_south = d.value;
      dc.bc_south_ok = ok;
      dc.cond2_south = c2.value;
    }
  }
  return dc;
}

BasisValues basis_at(double n, int M, const EvalPoint& pt) {
  if (M < 0) throw std::invalid_argument("basis_at: M must be non-negative");
  LegendreFamily f = legendre_p_family(-n, n, static_cast<std::size_t>(M) + 1, pt);
  BasisValues b{std::move(f.p), std::move(f.dp), std::move(f.d2p)};
  const double sn = pt.sin(), c = pt.cos();
  b.e[0] = std::pow(sn, n);
  b.de[0] = n * std::pow(sn, n - 1.0) * c;
  b.d2e[0] = n * (n - 1.0) * std::pow(sn, n - 2.0) * c * c - n * std::pow(sn, n);
  return b;
}

namespace {

struct NormKey {
  double n;
  std::size_t panels, points, levels;
  double ratio;
  bool operator<(const NormKey& o) const {
    return std::tie(n, panels, points, levels, ratio) <
           std::tie(o.n, o.panels, o.points, o.levels, o.ratio);
  }
};

std::mutex norm_mutex;
std::map<NormKey, std::vector<double>> norm_cache;

std::vector<double> compute_norms(double n, int M, const ThetaGrid& grid) {
  std::vector<double> acc(static_cast<std::size_t>(M) + 1, 0.0);
  for (const auto& q : grid.nodes()) {
    BasisValues b = basis_at(n, M, q.pt);
    double w = q.weight * q.pt.sin();
    for (int m = 0; m <= M; ++m) acc[m] += w * b.e[m] * b.e[m];
  }
  for (double& v : acc) v = std::sqrt(v);
  return acc;
}

}  // namespace

std::vector<double> basis_norms(double n, int M, const ThetaGrid& grid) {
  if (M < 0) throw std::invalid_argument("basis_norms: M must be non-negative");
  const auto& o = grid.options();
  NormKey key{n, o.panels, o.points, o.grading_levels, o.grading_ratio};
  {
    std::lock_guard<std::mutex> lock(norm_mutex);
    auto it = norm_cache.find(key);
    if (it != norm_cache.end() && it->second.size() > static_cast<std::size_t>(M))
      return {it->second.begin(), it->second.begin() + M + 1};
  }
  std::vector<double> v = compute_norms(n, M, grid);
  for (double x : v)
    if (!std::isfinite(x) || !(x > 0.0)) throw std::runtime_error("basis_norms: quadrature failed");
  std::lock_guard<std::mutex> lock(norm_mutex);
  auto& slot = norm_cache[key];
  if (slot.size() < v.size()) slot = v;
  return v;
}

double basis_norm(double n, int m) {
  if (m < 0) throw std::invalid_argument("basis_norm: m must be non-negative");
  return basis_norms(n, m, ThetaGrid{})[static_cast<std::size_t>(m)];
}

std::vector<std::vector<double>> basis_gram(double n, int M, const ThetaGrid& grid) {
  const std::size_t k = static_cast<std::size_t>(M) + 1;
  std::vector<std::vector<double>> g(k, std::vector<double>(k, 0.0));
  for (const auto& q : grid.nodes()) {
    BasisValues b = basis_at(n, M, q.pt);
    double w = q.weight * q.pt.sin();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) g[i][j] += w * b.e[i] * b.e[j];
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      g[i][j] /= std::sqrt(g[i][i] * g[j][j]);
      g[j][i] = g[i][j];
    }
  for (std::size_t i = 0; i < k; ++i) g[i][i] = 1.0;
  return g;
}

double eigen_residual(double n, int m, const std::vector<EvalPoint>& nodes) {
  const double lambda = eigenvalue(n, m);
  double worst = 0.0;
  for (const auto& p : nodes) {
    BasisValues b = basis_at(n, m, p);
    const double sn = p.sin();
    double e = b.e[m], t1 = b.d2e[m], t2 = p.cot() * b.de[m];
    double t3 = n * (n + 1.0) * e, t4 = n * n * e / (sn * sn), t5 = lambda * e;
    double mag = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
    if (mag == 0.0) continue;
    worst = std::max(worst, std::abs(t1 + t2 + t3 - t4 - t5) / mag);
  }
  return worst;
}

void SpectralCoeffs::validate() const {
  if (!(n > -1.0 && n < 1.0)) throw std::domain_error("SpectralCoeffs: n must lie in (-1, 1)");
  if (gamma.size() < 2) throw std::invalid_argument("SpectralCoeffs: need M >= 1");
  for (double g : gamma)
    if (!std::isfinite(g)) throw std::invalid_argument("SpectralCoeffs: non-finite coefficient");
  if (!std::isfinite(C1) || !std::isfinite(C2))
    throw std::invalid_argument("SpectralCoeffs: non-finite constant");
}

SpectralCoeffs project(const Astigmatism& s, double n, int M, double C1, double C2,
                       const ThetaGrid& grid) {
  if (M < 1) throw std::invalid_argument("project: M must be at least 1");
  if (!(n > -1.0 && n < 1.0)) throw std::domain_error("project: n must lie in (-1, 1)");
  const double p = n + 2.0;
  NestedIntegral u_norm = nested_integral([&s, p](const EvalPoint& q) {
    double sn = q.sin();
    double u = s.value(q) / std::pow(sn, p);
    return Term{u * u * sn, u * u * sn};
  });
  if (u_norm.verdict != Integrability::finite)
    throw std::domain_error("project: s/sin^(n+2) is not square integrable");
  std::vector<double> norms = basis_norms(n, M, grid);
  std::vector<double> acc(static_cast<std::size_t>(M) + 1, 0.0);
  double uu = 0.0;
  for (const auto& q : grid.nodes()) {
    BasisValues b = basis_at(n, M, q.pt);
    const double sn = q.pt.sin();
    const double u = s.value(q.pt) / std::pow(sn, p);
    const double w = q.weight * sn;
    uu += w * u * u;
    for (int m = 0; m <= M; ++m) acc[m] += w * u * b.e[m];
  }
  SpectralCoeffs c;
  c.n = n;
  c.C1 = C1;
  c.C2 = C2;
  c.gamma.resize(acc.size());
  double captured = 0.0;
  for (std::size_t m = 0; m < acc.size(); ++m) {
    c.gamma[m] = acc[m] / (norms[m] * norms[m]);
    captured += c.gamma[m] * c.gamma[m] * norms[m] * norms[m];
  }
  c.tail = std::sqrt(std::max(0.0, uu - captured));
  return c;
}

SpectralCoeffs project(const AstigmaticSurface& surf, double n, int M, const ThetaGrid& grid) {
  return project(surf.astigmatism(), n, M, surf.C1(), surf.C2(), grid);
}

double gamma0_identity(double n, double f0, double fpi) {
  return std::tgamma(n + 1.5) / (std::sqrt(std::numbers::pi) * std::tgamma(n + 1.0)) * (f0 - fpi);
}

double gamma1_identity(double n, double r1_0, double r1_pi) {
  // r1(pi) - r1(0) = gamma_1 2^{n+2} Gamma(n+2) / Gamma(2n+4)
  return std::tgamma(2.0 * n + 4.0) / (std::pow(2.0, n + 2.0) * std::tgamma(n + 2.0)) *
         (r1_pi - r1_0);
}

ExpansionTable::ExpansionTable(double n, int M, std::vector<EvalPoint> nodes)
    : n_(n), M_(M), nodes_(std::move(nodes)) {
  if (M < 1) throw std::invalid_argument("ExpansionTable: M must be at least 1");
  if (!(n > -1.0 && n < 1.0)) throw std::domain_error("ExpansionTable: n must lie in (-1, 1)");
  const std::size_t N = nodes_.size(), K = static_cast<std::size_t>(M);
  k_s_.resize(N);
  k_r1_.resize(N);
  k_r_.resize(N);
  k_dr_.resize(N);
  m_s_.resize(N * K);
  m_r1_.resize(N * K);
  m_r_.resize(N * K);
  m_dr_.resize(N * K);
  auto kernel_weight = [n](const EvalPoint& q) { return std::pow(q.sin(), 2.0 * n + 1.0); };
  const double half = 0.5 * std::numbers::pi;
  const double total = integrate_from_pole(kernel_weight, Pole::north, half) +
                       integrate_from_pole(kernel_weight, Pole::south, half);
  for (std::size_t i = 0; i < N; ++i) {
    const EvalPoint& q = nodes_[i];
    const double sn = q.sin(), c = q.cos();
    double partial = integrate_from_pole(kernel_weight, q.nearest_pole(), q.pole_distance());
    double B = q.nearest_pole() == Pole::north ? partial : total - partial;
    double k = std::pow(sn, 2.0 * n + 2.0);
    k_s_[i] = k;
    k_r1_[i] = k / (2.0 * n + 2.0);
    k_r_[i] = k / (2.0 * n + 2.0) - c * B;
    k_dr_[i] = sn * B;
    std::vector<double> p0 = legendre_p_sequence(-n, n + 1.0, K, q);
    std::vector<double> p1 = legendre_p_sequence(-n - 1.0, n + 1.0, K, q);
    std::vector<double> p2 = legendre_p_sequence(-n - 2.0, n + 1.0, K, q);
    const double a2 = std::pow(sn, n + 2.0), a1 = std::pow(sn, n + 1.0) * c;
    for (std::size_t m = 0; m < K; ++m) {
      m_s_[i * K + m] = a2 * p0[m];
      m_r_[i * K + m] = a2 * p2[m];
      m_dr_[i * K + m] = a2 * p1[m];
      m_r1_[i * K + m] = a2 * p2[m] + a1 * p1[m];
    }
  }
}

ExpansionTable::Fields ExpansionTable::expand(const SpectralCoeffs& c) const {
  if (c.n != n_) throw std::invalid_argument("ExpansionTable: coefficient n does not match table");
  if (c.M() > M_) throw std::invalid_argument("ExpansionTable: too many coefficients for table");
  const std::size_t N = nodes_.size(), K = static_cast<std::size_t>(M_);
  Fields f{std::vector<double>(N), std::vector<double>(N), std::vector<double>(N),
           std::vector<double>(N)};
  const double g0 = c.gamma[0];
  for (std::size_t i = 0; i < N; ++i) {
    double s = g0 * k_s_[i], r1 = c.C1 + g0 * k_r1_[i], r = c.C2 * nodes_[i].cos() + c.C1 + g0 * k_r_[i];
    double dr = -c.C2 * nodes_[i].sin() + g0 * k_dr_[i];
    for (int m = 1; m <= c.M(); ++m) {
      const double g = c.gamma[static_cast<std::size_t>(m)];
      const std::size_t j = i * K + static_cast<std::size_t>(m - 1);
      s += g * m_s_[j];
      r1 += g * m_r1_[j];
      r += g * m_r_[j];
      dr += g * m_dr_[j];
    }
    f.s[i] = s;
    f.r1[i] = r1;
    f.r[i] = r;
    f.dr[i] = dr;
  }
  return f;
}

ExpansionTable::Fields expand_r1_and_r(const SpectralCoeffs& c, const std::vector<EvalPoint>& nodes) {
  c.validate();
  return ExpansionTable(c.n, c.M(), nodes).expand(c);
}

}  // namespace hopf
