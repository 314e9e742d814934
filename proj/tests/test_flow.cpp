#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"
#include "hopf/flow.hpp"

using namespace hopf;

namespace {

std::shared_ptr<const AstigmaticSurface> standard_surface(double C1 = 0.5, double C2 = 0.1) {
  return std::make_shared<const AstigmaticSurface>(sinpow_astigmatism(5, 1, 0.3), C1, C2);
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("spectral evolution formulas") {
  const double n = 0.5;
  HopfParams P = HopfParams::from_n(n, 1.0, 1.0);
  SpectralCoeffs c = project(*standard_surface(), n, 20, ThetaGrid{});
  SpectralCoeffs z = evolve_spectral(c, P, 0.0);
  CHECK(z.gamma == c.gamma);
  CHECK(z.C1 == c.C1);

  const double t = 0.37;
  SpectralCoeffs e = evolve_spectral(c, P, t);
  CHECK(e.gamma[0] == c.gamma[0]);
  CHECK(e.C2 == c.C2);
  for (int m = 1; m <= 20; ++m) {
    double want = c.gamma[m] * std::exp(-(2 * n + 1 + m) * m * t);
    CHECK(std::abs(e.gamma[m] - want) <= 1e-15 * std::abs(c.gamma[m]));
  }
  double k = 2 * (n + 1);
  CHECK(e.C1 == doctest::Approx(c.C1 * std::exp(-k * t) + (1 - std::exp(-k * t)) / k).epsilon(1e-14));

  CHECK_THROWS(evolve_spectral(c, P, -1.0));
  CHECK_THROWS(evolve_spectral(c, HopfParams::from_n(0.25, 1.0, 1.0), 1.0));
}

TEST_CASE("semigroup and monotone decay") {
  const double n = 0.25;
  HopfParams P = HopfParams::from_n(n, 1.5, 0.7);
  SpectralCoeffs c = project(*standard_surface(), n, 20, ThetaGrid{});
  for (double t1 : {0.0, 0.05, 0.3})
    for (double t2 : {0.0, 0.1, 0.8}) {
      SpectralCoeffs a = evolve_spectral(evolve_spectral(c, P, t1), P, t2), b = evolve_spectral(c, P, t1 + t2);
      for (int m = 0; m <= 20; ++m) CHECK(std::abs(a.gamma[m] - b.gamma[m]) <= 4e-16 * std::abs(c.gamma[m]));
      CHECK(std::abs(a.C1 - b.C1) <= 1e-15);
    }
  SpectralCoeffs prev = c;
  for (double t : {0.01, 0.1, 0.5, 1.0}) {
    SpectralCoeffs e = evolve_spectral(c, P, t);
    CHECK(e.gamma[0] == c.gamma[0]);
    for (int m = 1; m <= 20; ++m)
      if (prev.gamma[m] != 0.0) CHECK(std::abs(e.gamma[m]) < std::abs(prev.gamma[m]));
    prev = e;
  }
}

TEST_CASE("focal distance is conserved") {
  const double n = 0.5;
  HopfParams P = HopfParams::from_n(n, 1.0, 1.0);
  auto surf = standard_surface();
  SpectralCoeffs c = project(*surf, n, 40, ThetaGrid{});
  FocalData f = focal_points(*surf);
  for (double t : {0.1, 1.0}) {
    SpectralCoeffs e = evolve_spectral(c, P, t);
    CHECK(gamma0_identity(n, f.f0, f.fpi) == doctest::Approx(e.gamma[0]).epsilon(1e-8));
  }
}

TEST_CASE("limit surface") {
  const double n = 0.5;
  HopfParams P = HopfParams::from_n(n, 1.0, 1.0);
  auto nodes = midpoint_nodes(200);
  SpectralCoeffs c = project(*standard_surface(), n, 30, ThetaGrid{});
  LimitSurface L = limit_surface(c, P, nodes);
  CHECK_FALSE(L.round);
  CHECK(L.C0 == c.gamma[0]);
  CHECK(L.C1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(L.C2 == c.C2);
  SurfaceProfile h = hopf_sphere(n, L.C0, L.C1, L.C2, nodes);
  CHECK(sup_diff(L.profile.r, h.r) < 1e-12);

  SpectralCoeffs round = c;
  round.gamma[0] = 0.0;
  LimitSurface R = limit_surface(round, P, nodes);
  CHECK(R.round);
  CHECK(R.convex);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    CHECK(R.profile.r[i] == doctest::Approx(1.0 / 3.0 + c.C2 * nodes[i].cos()).epsilon(1e-12));

  SpectralCoeffs late = evolve_spectral(c, P, 3.0);
  auto F = profiles_at(late, nodes);
  CHECK(sup_diff(F.r, L.profile.r) < 1e-4);
}

TEST_CASE("fd settings") {
  FdSettings s;
  CHECK_NOTHROW(s.validate());
  FdSettings bad = s;
  bad.nodes = 5;
  CHECK_THROWS(bad.validate());
  bad = s;
  bad.dt = 0.0;
  CHECK_THROWS(bad.validate());
  bad = s;
  bad.eps = 0.0;
  CHECK_THROWS(bad.validate());
  bad = s;
  bad.eps = 0.2;
  CHECK_THROWS(bad.validate());

  FdGrid g = fd_grid(s);
  CHECK(g.nodes.size() == s.nodes);
  CHECK(g.nodes.front().theta() == doctest::Approx(s.eps).epsilon(1e-14));
  CHECK(g.nodes.back().pole_distance() == doctest::Approx(s.eps).epsilon(1e-9));
  CHECK(g.h == doctest::Approx((std::numbers::pi - 2 * s.eps) / (s.nodes - 1)).epsilon(1e-14));

  FlowConfig fc;
  fc.params = HopfParams::from_n(0.5, 1.0, 1.0);
  CHECK_NOTHROW(fc.validate());
  fc.sample_times = {0.5, 0.1};
  CHECK_THROWS(fc.validate());
  fc.sample_times = {0.1, 2.0};
  CHECK_THROWS(fc.validate());
}

TEST_CASE("oracle keeps stationary profiles") {
  FdSettings s;
  s.nodes = 400;
  s.dt = 1e-3;
  FdGrid g = fd_grid(s);
  const double n = 0.5;
  HopfParams P = HopfParams::from_n(n, 1.0, 1.0);

  std::vector<double> flat(g.nodes.size(), 1.0 / 3.0);
  FdSolution a = fd_oracle(flat, g, P, {0.5}, s.dt);
  CHECK(sup_diff(a.r.back(), flat) < 1e-10);

  SurfaceProfile h = hopf_sphere(n, 0.4, 1.0 / 3.0, 0.05, g.nodes);
  FdSolution b = fd_oracle(h.r, g, P, {0.2, 0.5}, s.dt);
  CHECK(b.times.size() == 2);
  CHECK(sup_diff(b.r.back(), h.r) < 1e-4);
}

TEST_CASE("oracle decays a round sphere exactly") {
  FdSettings s;
  FdGrid g = fd_grid(s);
  HopfParams P = HopfParams::from_n(0.5, 1.0, 0.0);
  const double R = 2.0, t = 0.5;
  std::vector<double> r0(g.nodes.size(), R);
  FdSolution sol = fd_oracle(r0, g, P, {t}, s.dt);
  double want = R * std::exp((P.a + P.b) * t);
  for (double v : sol.r.back()) CHECK(std::abs(v - want) <= 1e-6 * want);
}

TEST_CASE("oracle tracks the spectral solution") {
  FdSettings s;
  s.nodes = 800;
  s.dt = 5e-4;
  FdGrid g = fd_grid(s);
  const double n = 0.5;
  HopfParams P = HopfParams::from_n(n, 1.0, 1.0);
  auto surf = standard_surface();
  SpectralCoeffs c = project(*surf, n, 40, ThetaGrid{});
  std::vector<double> r0 = sample_surface(surf, g.nodes).r;
  FdSolution sol = fd_oracle(r0, g, P, {0.1, 0.5}, s.dt);
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    auto F = profiles_at(evolve_spectral(c, P, sol.times[k]), g.nodes);
    CHECK(compare(F.r, sol.r[k], g).sup < 1e-3);
  }
}

TEST_CASE("compare") {
  FdSettings s;
  s.nodes = 100;
  FdGrid g = fd_grid(s);
  std::vector<double> a(g.nodes.size(), 1.0), b = a;
  ErrorMetrics z = compare(a, b, g);
  CHECK(z.sup == 0.0);
  CHECK(z.l2 == 0.0);
  b.front() = 5.0;  // inside the collar
  CHECK(compare(a, b, g).sup == 0.0);
  b[50] = 1.5;
  CHECK(compare(a, b, g).sup == 0.5);
  CHECK_THROWS(compare(a, std::vector<double>(3, 0.0), g));
}

TEST_CASE("fd astigmatism and oracle modes") {
  FdSettings s;
  FdGrid g = fd_grid(s);
  const double n = 0.5;
  auto surf = std::make_shared<const AstigmaticSurface>(hopf_astigmatism(n, 0.7), 0.2, 0.0);
  SurfaceProfile p = sample_surface(surf, g.nodes);
  auto sd = fd_astigmatism(p.r, g);
  for (std::size_t i = 100; i + 100 < sd.size(); ++i) CHECK(std::abs(sd[i] - p.s[i]) < 1e-5);
  auto modes = oracle_modes(sd, g, n, 4);
  CHECK(modes[0] == doctest::Approx(0.7).epsilon(1e-4));
  for (int m = 1; m <= 4; ++m) CHECK(std::abs(modes[m]) < 1e-4);
}

TEST_CASE("decay fits") {
  std::vector<double> t, v;
  for (int k = 0; k <= 20; ++k) {
    t.push_back(0.05 * k);
    v.push_back(-3.0 * std::exp(-4.5 * t.back()));
  }
  RateFit f = fit_decay(t, v);
  CHECK(f.rate == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK(f.samples == 21);
  f.expected = 4.5;
  CHECK(f.relative_error() < 1e-12);

  v.back() = 1e-12;  // below the noise floor
  CHECK(fit_decay(t, v).samples == 20);
  CHECK_THROWS(fit_decay({0.0}, {1.0}));
  CHECK_THROWS(fit_decay({0.0, 1.0}, {1.0}));
}

}  // TEST_SUITE
