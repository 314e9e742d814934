#include "hopf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hopf {

GaussRule gauss_legendre(std::size_t points) {
  if (points == 0) throw std::invalid_argument("gauss_legendre: need at least one point");
  GaussRule r{std::vector<double>(points), std::vector<double>(points)};
  const std::size_t n = points;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

namespace {

void add_panel(std::vector<QuadNode>& out, const GaussRule& g, Pole pole, double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (std::size_t k = 0; k < g.x.size(); ++k)
    out.push_back({EvalPoint::near(pole, mid + half * g.x[k]), half * g.w[k]});
}

}  // namespace

ThetaGrid::ThetaGrid(const ThetaGridOptions& opt) : opt_(opt) {
  if (opt.panels < 2 || opt.panels % 2 != 0)
    throw std::invalid_argument("ThetaGrid: panel count must be even and at least 2");
  if (!(opt.grading_ratio > 0.0 && opt.grading_ratio < 1.0))
    throw std::invalid_argument("ThetaGrid: grading ratio must lie in (0, 1)");
  const GaussRule g = gauss_legendre(opt.points);
  const std::size_t half_panels = opt.panels / 2;
  const double h = 0.5 * std::numbers::pi / static_cast<double>(half_panels);
  for (Pole pole : {Pole::north, Pole::south}) {
    double hi = h;
    for (std::size_t l = 0; l < opt.grading_levels; ++l) {
      double lo = hi * opt.grading_ratio;
      add_panel(nodes_, g, pole, lo, hi);
      hi = lo;
    }
    add_panel(nodes_, g, pole, 0.0, hi);
    for (std::size_t k = 1; k < half_panels; ++k) {
      double top = (k + 1 == half_panels) ? 0.5 * std::numbers::pi : static_cast<double>(k + 1) * h;
      add_panel(nodes_, g, pole, static_cast<double>(k) * h, top);
    }
  }
  auto key = [](const QuadNode& q) {
    double d = q.pt.pole_distance();
    return q.pt.nearest_pole() == Pole::north ? std::pair(0, d) : std::pair(1, -d);
  };
  std::sort(nodes_.begin(), nodes_.end(),
            [&key](const QuadNode& x, const QuadNode& y) { return key(x) < key(y); });
}

std::vector<QuadNode> pole_rule(Pole pole, double distance, std::size_t levels, std::size_t points) {
  if (!(distance > 0.0 && distance <= std::numbers::pi))
    throw std::invalid_argument("pole_rule: distance must lie in (0, pi]");
  const GaussRule g = gauss_legendre(points);
  std::vector<QuadNode> out;
  out.reserve((levels + 1) * points);
  double hi = distance;
  for (std::size_t l = 0; l < levels; ++l) {
    double lo = 0.5 * hi;
    add_panel(out, g, pole, lo, hi);
    hi = lo;
  }
  add_panel(out, g, pole, 0.0, hi);
  return out;
}

std::vector<QuadNode> shell_rule(Pole pole, double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("shell_rule: need 0 < lo < hi");
  const GaussRule g = gauss_legendre(points);
  std::vector<QuadNode> out;
  double a = lo;
  while (a < hi) {
    double b = std::min(2.0 * a, hi);
    add_panel(out, g, pole, a, b);
    a = b;
  }
  return out;
}

std::vector<EvalPoint> midpoint_nodes(std::size_t count) {
  if (count == 0) throw std::invalid_argument("midpoint_nodes: count must be positive");
  std::vector<EvalPoint> out;
  out.reserve(count);
  const double h = std::numbers::pi / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t from_south = count - 1 - k;
    if (k <= from_south)
      out.push_back(EvalPoint::near(Pole::north, (static_cast<double>(k) + 0.5) * h));
    else
      out.push_back(EvalPoint::near(Pole::south, (static_cast<double>(from_south) + 0.5) * h));
  }
  return out;
}

std::vector<EvalPoint> interval_nodes(double eps, std::size_t count) {
  if (!(eps > 0.0 && eps < 0.5 * std::numbers::pi) || count < 2)
    throw std::invalid_argument("interval_nodes: need 0 < eps < pi/2 and count >= 2");
  std::vector<EvalPoint> out;
  out.reserve(count);
  const double h = (std::numbers::pi - 2.0 * eps) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = count - 1 - i;
    if (i <= j)
      out.push_back(EvalPoint::near(Pole::north, eps + static_cast<double>(i) * h));
    else
      out.push_back(EvalPoint::near(Pole::south, eps + static_cast<double>(j) * h));
  }
  return out;
}

}  // namespace hopf
