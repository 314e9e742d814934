#include "hopf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/interpolators/barycentric_rational.hpp>

namespace hopf {

HopfParams HopfParams::from_n(double n, double b, double c) {
  HopfParams p{-b * (2.0 * n + 3.0), b, c};
  p.validate();
  return p;
}

HopfParams HopfParams::from_a(double a, double b, double c) {
  HopfParams p{a, b, c};
  p.validate();
  return p;
}

void HopfParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw std::invalid_argument("HopfParams: non-finite parameter");
  if (!(b > 0.0)) throw std::invalid_argument("HopfParams: b must be positive");
}

namespace {

double fd_step(const EvalPoint& p) { return std::min(5e-3, 0.25 * p.pole_distance()); }

}  // namespace

double central_d1(const ThetaFunction& f, const EvalPoint& p) {
  const double h = fd_step(p);
  return (-f(p.shifted(2 * h)) + 8.0 * f(p.shifted(h)) - 8.0 * f(p.shifted(-h)) +
          f(p.shifted(-2 * h))) /
         (12.0 * h);
}

double central_d2(const ThetaFunction& f, const EvalPoint& p) {
  const double h = fd_step(p);
  return (-f(p.shifted(2 * h)) + 16.0 * f(p.shifted(h)) - 30.0 * f(p) + 16.0 * f(p.shifted(-h)) -
          f(p.shifted(-2 * h))) /
         (12.0 * h * h);
}

double SmoothFunction::d1(const EvalPoint& p) const { return df ? df(p) : central_d1(f, p); }

double SmoothFunction::d2(const EvalPoint& p) const { return d2f ? d2f(p) : central_d2(f, p); }

Astigmatism sinpow_astigmatism(double m, double amp, double tilt, double bias) {
  if (!std::isfinite(m) || !std::isfinite(amp) || !std::isfinite(tilt) || !std::isfinite(bias))
    throw std::invalid_argument("sinpow: non-finite parameter");
  Astigmatism s;
  s.f = [=](const EvalPoint& p) {
    return amp * std::pow(p.sin(), m) * (bias + tilt * p.cos());
  };
  // d/dtheta sin^m (bias + tilt cos) = sin^{m-1} (m cos (bias + tilt cos) - tilt sin^2)
  s.df = [=](const EvalPoint& p) {
    double sn = p.sin(), c = p.cos();
    return amp * std::pow(sn, m - 1.0) * (m * c * (bias + tilt * c) - tilt * sn * sn);
  };
  s.d2f = [=](const EvalPoint& p) {
    double sn = p.sin(), c = p.cos();
    double g = m * c * bias + tilt * (m * c * c - sn * sn);
    double dg = -m * sn * bias + tilt * (-2.0 * m * c * sn - 2.0 * sn * c);
    return amp * ((m - 1.0) * std::pow(sn, m - 2.0) * c * g + std::pow(sn, m - 1.0) * dg);
  };
  return s;
}

Astigmatism hopf_astigmatism(double n, double C0) {
  return sinpow_astigmatism(2.0 * n + 2.0, C0, 0.0, 1.0);
}

namespace {

struct PowerTail {
  double theta0 = 0.0, s0 = 0.0, p = 1.0;

  static PowerTail fit(double t0, double s0, double t1, double s1) {
    PowerTail pt{t0, s0, 1.0};
    if (s0 != 0.0 && s1 != 0.0 && (s0 > 0.0) == (s1 > 0.0)) {
      double p = std::log(s1 / s0) / std::log(std::sin(t1) / std::sin(t0));
      if (std::isfinite(p)) pt.p = std::max(1.0, p);
    }
    return pt;
  }
  // sin and cos measured from the pole the tail belongs to
  double value(double sn) const { return s0 * std::pow(sn / std::sin(theta0), p); }
};

}  // namespace

Astigmatism sampled_astigmatism(std::vector<double> theta, std::vector<double> s) {
  const std::size_t n = theta.size();
  if (n < 8 || s.size() != n) throw std::invalid_argument("sampled_astigmatism: need 8 or more samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(theta[i] > 0.0 && theta[i] < std::numbers::pi) || !std::isfinite(s[i]))
      throw std::invalid_argument("sampled_astigmatism: samples must lie in (0, pi) and be finite");
    if (i > 0 && !(theta[i] > theta[i - 1]))
      throw std::invalid_argument("sampled_astigmatism: theta must increase");
  }
  const double lo = theta.front(), hi = theta.back();
  const PowerTail north = PowerTail::fit(lo, s[0], theta[1], s[1]);
  const PowerTail south =
      PowerTail::fit(std::numbers::pi - hi, s[n - 1], std::numbers::pi - theta[n - 2], s[n - 2]);
  auto interp = std::make_shared<const boost::math::barycentric_rational<double>>(
      std::move(theta), std::move(s), 3);
  const double step = 1e-5;
  auto tail = [=](const EvalPoint& q) -> const PowerTail* {
    double t = q.theta();
    if (t < lo) return &north;
    if (t > hi) return &south;
    return nullptr;
  };
  // derivatives in the pole distance d, converted to theta
  Astigmatism out;
  out.f = [=](const EvalPoint& q) {
    const PowerTail* pt = tail(q);
    return pt ? pt->value(q.sin()) : (*interp)(q.theta());
  };
  out.df = [=](const EvalPoint& q) {
    const PowerTail* pt = tail(q);
    if (!pt) return interp->prime(q.theta());
    double sign = q.theta() < lo ? 1.0 : -1.0;
    double d = q.pole_distance();
    return sign * pt->p * pt->value(q.sin()) * std::cos(d) / std::sin(d);
  };
  out.d2f = [=](const EvalPoint& q) {
    const PowerTail* pt = tail(q);
    if (!pt) {
      double t = q.theta();
      return (interp->prime(t + step) - interp->prime(t - step)) / (2.0 * step);
    }
    double d = q.pole_distance(), ct = std::cos(d) / std::sin(d);
    return pt->p * pt->value(q.sin()) * ((pt->p - 1.0) * ct * ct - 1.0);
  };
  return out;
}

ConvexityError::ConvexityError(std::size_t node_, double theta_, double r1, double r2)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "surface is not strictly convex at node " << node_ << " (theta = " << theta_
           << ", r1 = " << r1 << ", r2 = " << r2 << ")";
        return os.str();
      }()),
      node(node_),
      theta(theta_) {}

namespace {

void check_pole_vanishing(const Astigmatism& s) {
  for (Pole pole : {Pole::north, Pole::south}) {
    double head = 0.0, tail = 0.0;
    for (int k = 2; k <= 8; ++k) {
      double t = std::pow(10.0, -k);
      double v = s.value(EvalPoint::near(pole, t));
      if (!std::isfinite(v)) throw std::domain_error("astigmatism is not finite near a pole");
      double q = std::abs(v) / t;
      if (k <= 3) head = std::max(head, q);
      if (k >= 6) tail = std::max(tail, q);
    }
    if (tail > 4.0 * head + 1e-300)
      throw std::domain_error("astigmatism must vanish at least linearly at the poles");
  }
}

}  // namespace

AstigmaticSurface::AstigmaticSurface(Astigmatism s, double C1, double C2)
    : s_(std::move(s)), C1_(C1), C2_(C2) {
  if (!s_.f) throw std::invalid_argument("AstigmaticSurface: missing astigmatism");
  check_pole_vanishing(s_);
  const double half = 0.5 * std::numbers::pi;
  auto over_sin = [this](const EvalPoint& p) { return s_.value(p) / p.sin(); };
  auto times_cot = [this](const EvalPoint& p) { return s_.value(p) * p.cot(); };
  I_total_ = integrate_from_pole(over_sin, Pole::north, half) +
             integrate_from_pole(over_sin, Pole::south, half);
  J_total_ = integrate_from_pole(times_cot, Pole::north, half) +
             integrate_from_pole(times_cot, Pole::south, half);
}

double AstigmaticSurface::from_pole_I(const EvalPoint& p) const {
  return integrate_from_pole([this](const EvalPoint& q) { return s_.value(q) / q.sin(); },
                             p.nearest_pole(), p.pole_distance());
}

double AstigmaticSurface::from_pole_J(const EvalPoint& p) const {
  return integrate_from_pole([this](const EvalPoint& q) { return s_.value(q) * q.cot(); },
                             p.nearest_pole(), p.pole_distance());
}

double AstigmaticSurface::I(const EvalPoint& p) const {
  double v = from_pole_I(p);
  return p.nearest_pole() == Pole::north ? v : I_total_ - v;
}

double AstigmaticSurface::J(const EvalPoint& p) const {
  double v = from_pole_J(p);
  return p.nearest_pole() == Pole::north ? v : J_total_ - v;
}

double AstigmaticSurface::r(const EvalPoint& p) const {
  return C2_ * p.cos() + C1_ - p.cos() * I(p) + J(p);
}

double AstigmaticSurface::dr(const EvalPoint& p) const { return p.sin() * (I(p) - C2_); }

double AstigmaticSurface::d2r(const EvalPoint& p) const {
  return p.cos() * (I(p) - C2_) + s(p);
}

double AstigmaticSurface::r1(const EvalPoint& p) const { return C1_ + J(p); }

double AstigmaticSurface::r1_increment(const EvalPoint& p) const {
  double v = from_pole_J(p);
  return p.nearest_pole() == Pole::north ? v : -v;
}

double AstigmaticSurface::r_at(Pole pole) const {
  return pole == Pole::north ? C1_ + C2_ : C1_ - C2_ + I_total_ + J_total_;
}

double AstigmaticSurface::r1_at(Pole pole) const {
  return pole == Pole::north ? C1_ : C1_ + J_total_;
}

SupportFunction AstigmaticSurface::support() const {
  SupportFunction f;
  f.f = [this](const EvalPoint& p) { return r(p); };
  f.df = [this](const EvalPoint& p) { return dr(p); };
  f.d2f = [this](const EvalPoint& p) { return d2r(p); };
  return f;
}

std::optional<std::size_t> SurfaceProfile::first_nonconvex() const {
  for (std::size_t i = 0; i < r1.size(); ++i)
    if (!(r1[i] > 0.0) || !(r2[i] > 0.0)) return i;
  return std::nullopt;
}

SurfaceProfile sample_surface(std::shared_ptr<const AstigmaticSurface> surf,
                              const std::vector<EvalPoint>& nodes) {
  SurfaceProfile p;
  p.nodes = nodes;
  p.C1 = surf->C1();
  p.C2 = surf->C2();
  const std::size_t n = nodes.size();
  p.r.resize(n);
  p.dr.resize(n);
  p.r1.resize(n);
  p.r2.resize(n);
  p.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EvalPoint& q = nodes[i];
    p.s[i] = surf->s(q);
    p.r[i] = surf->r(q);
    p.dr[i] = surf->dr(q);
    p.r1[i] = surf->r1(q);
    p.r2[i] = p.r1[i] + p.s[i];
  }
  p.exact = std::move(surf);
  return p;
}

std::vector<EvalPoint> grid_points(const ThetaGrid& grid) {
  std::vector<EvalPoint> out;
  out.reserve(grid.size());
  for (const auto& q : grid.nodes()) out.push_back(q.pt);
  return out;
}

Radii radii_from_support(const SupportFunction& r, const std::vector<EvalPoint>& nodes) {
  Radii out;
  out.r1.reserve(nodes.size());
  out.r2.reserve(nodes.size());
  for (const auto& p : nodes) {
    double v = r.value(p), d1 = r.d1(p), d2 = r.d2(p);
    out.r1.push_back(v + d1 * p.cot());
    out.r2.push_back(d2 + v);
  }
  return out;
}

SurfaceProfile support_from_astigmatism(const Astigmatism& s, double C1, double C2,
                                        const std::vector<EvalPoint>& nodes) {
  return sample_surface(std::make_shared<const AstigmaticSurface>(s, C1, C2), nodes);
}

SurfaceProfile support_from_astigmatism(const Astigmatism& s, double C1, double C2,
                                        const ThetaGrid& grid) {
  return support_from_astigmatism(s, C1, C2, grid_points(grid));
}

double codazzi_residual(const AstigmaticSurface& surf, const std::vector<EvalPoint>& nodes) {
  auto d1 = [&surf](const EvalPoint& p, double h) {
    auto f = [&](double k) { return surf.r1(p.shifted(k * h)); };
    return (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
  };
  double worst = 0.0;
  for (const auto& p : nodes) {
    const double h = fd_step(p);
    double d = (16.0 * d1(p, 0.5 * h) - d1(p, h)) / 15.0;
    worst = std::max(worst, std::abs(d - surf.s(p) * p.cot()));
  }
  return worst;
}

SurfaceProfile hopf_sphere(double n, double C0, double C1, double C2,
                           const std::vector<EvalPoint>& nodes) {
  if (!(n > -1.0)) throw std::domain_error("hopf_sphere: n must exceed -1");
  SurfaceProfile p = support_from_astigmatism(hopf_astigmatism(n, C0), C1, C2, nodes);
  if (auto bad = p.first_nonconvex())
    throw ConvexityError(*bad, p.nodes[*bad].theta(), p.r1[*bad], p.r2[*bad]);
  return p;
}

namespace {

Extrapolation checked_limit(const ThetaFunction& f, Pole pole, const char* what) {
  Extrapolation e = pole_limit(f, pole);
  if (!e.converged)
    throw ExtrapolationError(std::string("pole limit of ") + what + " did not converge");
  return e;
}

// Neville extrapolation of samples at the nodes closest to a pole.
Extrapolation sample_limit(const SurfaceProfile& p, const std::vector<double>& v, Pole pole) {
  std::vector<std::pair<double, double>> near;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.nodes[i].nearest_pole() == pole) near.push_back({p.nodes[i].pole_distance(), v[i]});
  std::sort(near.begin(), near.end());
  if (near.size() < 3) throw ExtrapolationError("too few nodes near the pole");
  near.resize(std::min<std::size_t>(near.size(), 6));
  std::vector<double> t, f;
  for (auto it = near.rbegin(); it != near.rend(); ++it) {
    t.push_back(it->first);
    f.push_back(it->second);
  }
  return extrapolate_to_zero(t, f, 1e-7);
}

}  // namespace

FocalData focal_points(const AstigmaticSurface& surf) {
  ThetaFunction r = [&surf](const EvalPoint& p) { return surf.r(p); };
  ThetaFunction r1 = [&surf](const EvalPoint& p) { return surf.r1(p); };
  Extrapolation rn = checked_limit(r, Pole::north, "r"), r1n = checked_limit(r1, Pole::north, "r1");
  Extrapolation rs = checked_limit(r, Pole::south, "r"), r1s = checked_limit(r1, Pole::south, "r1");
  return {rn.value - r1n.value, -rs.value + r1s.value, rn.error + r1n.error, rs.error + r1s.error};
}

FocalData focal_points(const SurfaceProfile& p) {
  if (p.exact) return focal_points(*p.exact);
  Extrapolation rn = sample_limit(p, p.r, Pole::north), r1n = sample_limit(p, p.r1, Pole::north);
  Extrapolation rs = sample_limit(p, p.r, Pole::south), r1s = sample_limit(p, p.r1, Pole::south);
  return {rn.value - r1n.value, -rs.value + r1s.value, rn.error + r1n.error, rs.error + r1s.error};
}

SlopeEstimate umbilic_slope(const AstigmaticSurface& surf, Pole pole) {
  std::vector<double> t, g;
  double tk = 0.05;
  bool all_zero = true;
  for (int k = 0; k < 7; ++k, tk *= 0.5) {
    EvalPoint p = EvalPoint::near(pole, tk);
    double s = surf.s(p), dr1 = surf.r1_increment(p);
    if (s != 0.0) all_zero = false;
    t.push_back(tk);
    g.push_back(dr1 != 0.0 ? s / dr1 : std::numeric_limits<double>::infinity());
  }
  if (all_zero) throw std::domain_error("umbilic_slope: umbilic is not isolated");
  SlopeEstimate out;
  bool growing = true;
  for (std::size_t k = 1; k < g.size(); ++k)
    if (!(std::abs(g[k]) > 1.2 * std::abs(g[k - 1])) || g[k] * g[k - 1] <= 0.0) growing = false;
  if (growing || !std::isfinite(g.back())) {
    out.divergent = true;
    out.value = std::copysign(std::numeric_limits<double>::infinity(), g.back());
    out.uncertainty = std::numeric_limits<double>::infinity();
    return out;
  }
  Extrapolation e = extrapolate_to_zero(t, g, 1e-7);
  out.value = 1.0 + e.value;
  out.uncertainty = e.error;
  return out;
}

SlopeEstimate umbilic_slope(const SurfaceProfile& p, Pole pole) {
  if (!p.exact) throw std::invalid_argument("umbilic_slope: profile has no closed form");
  return umbilic_slope(*p.exact, pole);
}

const char* to_string(SlopeOrder o) {
  switch (o) {
    case SlopeOrder::zero: return "zero";
    case SlopeOrder::infinite: return "infinite";
    case SlopeOrder::finite_nonzero: return "finite-nonzero";
    case SlopeOrder::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SlopeOrder slope_order_test(const ThetaFunction& s, double alpha, Pole pole) {
  // log |s / sin^alpha| at pole distances 1e-2 .. 1e-40
  std::vector<double> g;
  for (int k = 2; k <= 40; ++k) {
    EvalPoint p = EvalPoint::near(pole, std::pow(10.0, -k));
    double v = s(p);
    if (v == 0.0 || !std::isfinite(v)) return SlopeOrder::inconclusive;
    g.push_back(std::log(std::abs(v)) - alpha * std::log(p.sin()));
  }
  const std::size_t n = g.size();
  if (std::abs(g[n - 1] - g[n - 6]) < 1e-6) return SlopeOrder::finite_nonzero;
  bool up = true, down = true;
  for (std::size_t k = n - 10; k + 1 < n; ++k) {
    double d = g[k + 1] - g[k];
    if (!(d > 0.0)) up = false;
    if (!(d < 0.0)) down = false;
  }
  if (std::abs(g[n - 1] - g[8]) < 0.5) return SlopeOrder::inconclusive;
  if (up) return SlopeOrder::infinite;
  if (down) return SlopeOrder::zero;
  return SlopeOrder::inconclusive;
}

Mesh embed(const SurfaceProfile& p, std::size_t phi_count) {
  if (phi_count < 3) throw std::invalid_argument("embed: phi_count must be at least 3");
  if (p.dr.size() != p.size() || p.r.size() != p.size())
    throw std::invalid_argument("embed: profile needs r and r' samples");
  double r_north, r_south;
  if (p.exact) {
    r_north = p.exact->r_at(Pole::north);
    r_south = p.exact->r_at(Pole::south);
  } else {
    r_north = sample_limit(p, p.r, Pole::north).value;
    r_south = sample_limit(p, p.r, Pole::south).value;
  }
  Mesh m;
  m.vertices.push_back({0.0, 0.0, r_north});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const EvalPoint& q = p.nodes[i];
    double rho = p.r[i] * q.sin() + p.dr[i] * q.cos();
    double z = p.r[i] * q.cos() - p.dr[i] * q.sin();
    for (std::size_t j = 0; j < phi_count; ++j) {
      double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(phi_count);
      m.vertices.push_back({std::sin(phi) * rho, std::cos(phi) * rho, z});
    }
  }
  m.vertices.push_back({0.0, 0.0, -r_south});
  const std::size_t rings = p.size();
  const std::size_t south = m.vertices.size() - 1;
  auto at = [phi_count](std::size_t ring, std::size_t j) {
    return 1 + ring * phi_count + j % phi_count;
  };
  if (rings == 0) return m;
  for (std::size_t j = 0; j < phi_count; ++j) m.faces.push_back({0, at(0, j + 1), at(0, j)});
  for (std::size_t i = 0; i + 1 < rings; ++i) {
    for (std::size_t j = 0; j < phi_count; ++j) {
      m.faces.push_back({at(i, j), at(i, j + 1), at(i + 1, j)});
      m.faces.push_back({at(i, j + 1), at(i + 1, j + 1), at(i + 1, j)});
    }
  }
  for (std::size_t j = 0; j < phi_count; ++j)
    m.faces.push_back({south, at(rings - 1, j), at(rings - 1, j + 1)});
  return m;
}

}  // namespace hopf
