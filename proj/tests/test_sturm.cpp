#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hopf/specfun.hpp"
#include "hopf/sturm.hpp"
#include "oracles/refs.hpp"

using namespace hopf;

namespace {

const double kNs[] = {-0.5, 0.0, 0.25, 0.5, 0.9};

SmoothFunction power_of_sin(double k) {
  SmoothFunction u;
  u.f = [k](const EvalPoint& p) { return std::pow(p.sin(), k); };
  u.df = [k](const EvalPoint& p) { return k * std::pow(p.sin(), k - 1) * p.cos(); };
  return u;
}

SmoothFunction ferrers(double mu, double nu) {
  SmoothFunction u;
  u.f = [=](const EvalPoint& p) { return legendre_p({mu, nu}, p); };
  u.df = [=](const EvalPoint& p) { return legendre_p_dtheta({mu, nu}, p); };
  return u;
}

// s = gamma0 sin^{2n+2} + sum_m g_m sin^{n+2} P^{-n}_{n+m}
Astigmatism from_modes(double n, std::vector<double> g) {
  Astigmatism s;
  s.f = [n, g](const EvalPoint& p) {
    double sn = p.sin(), v = g[0] * std::pow(sn, 2 * n + 2);
    for (std::size_t m = 1; m < g.size(); ++m)
      v += g[m] * std::pow(sn, n + 2) * legendre_p({-n, n + static_cast<double>(m)}, p);
    return v;
  };
  return s;
}

}  // namespace

TEST_SUITE("sturm") {

TEST_CASE("eigenvalues") {
  for (double n : kNs) CHECK(eigenvalue(n, 0) == 0.0);
  CHECK(eigenvalue(0.5, 1) == -3.0);
  for (int m = 0; m < 10; ++m) CHECK(eigenvalue(0.0, m) == -m * (m + 1.0));
}

TEST_CASE("limit circle classification") {
  for (double n : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    INFO("n = " << n);
    CHECK(lc_classify(n).cls == EndpointClass::limit_circle);
  }
  for (double n : {-1.5, 1.0, 1.5}) {
    INFO("n = " << n);
    CHECK(lc_classify(n).cls == EndpointClass::limit_point);
  }
  LcReport r = lc_classify(0.5);
  CHECK(r.first.verdict == Integrability::finite);
  CHECK(r.second.verdict == Integrability::finite);
  CHECK(lc_classify(1.5).second.verdict == Integrability::divergent);
}

TEST_CASE("nested integral witnesses") {
  NestedIntegral a = nested_integral([](const EvalPoint& p) { return Term{p.sin(), p.sin()}; });
  CHECK(a.verdict == Integrability::finite);
  CHECK(a.partial.back() == doctest::Approx(2.0).epsilon(1e-12));
  NestedIntegral b = nested_integral([](const EvalPoint& p) {
    double v = 1.0 / p.sin();
    return Term{v, v};
  });
  CHECK(b.verdict == Integrability::divergent);
}

TEST_CASE("boundary residuals") {
  for (double n : {0.25, 0.5, 0.9}) {
    for (Pole pole : {Pole::north, Pole::south}) {
      CHECK(std::abs(bc_residual(power_of_sin(n), n, pole).value) < 1e-12);
      for (int m : {1, 2, 3}) {
        BoundaryResidual r = bc_residual(ferrers(-n, n + m), n, pole);
        CHECK_FALSE(r.divergent);
        CHECK(std::abs(r.value) < 1e-6);
      }
    }
    BoundaryResidual neg = bc_residual(power_of_sin(-n), n, Pole::north);
    CHECK(neg.value == doctest::Approx(-2 * n).epsilon(1e-9));
  }
}

TEST_CASE("boundary condition selects the basis") {
  const double n = 0.5;
  for (int m : {1, 2}) {
    // P^{+n}: lead coefficient -2^mu (n + mu) / Gamma(1 - mu) with mu = n
    BoundaryResidual r = bc_residual(ferrers(n, n + m), n, Pole::north);
    double want = -std::pow(2.0, n) * (2 * n) * gamma_recip(1 - n);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-7));
  }
  BoundaryResidual off = bc_residual(ferrers(-n, n + 1.3), n, Pole::south);
  CHECK((off.divergent || std::abs(off.value) > 1e-3));
}

TEST_CASE("basis boundary residuals") {
  for (double n : kNs)
    for (int m = 0; m <= 20; ++m)
      for (Pole pole : {Pole::north, Pole::south}) {
        BoundaryResidual r = basis_bc_residual(n, m, pole);
        INFO("n " << n << " m " << m);
        CHECK_FALSE(r.divergent);
        CHECK(std::abs(r.value) <= 1e-6);
      }
}

TEST_CASE("basis norms") {
  CHECK(basis_norm(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  for (int m = 1; m <= 6; ++m) CHECK(basis_norm(0, m) == doctest::Approx(std::sqrt(2.0 / (2 * m + 1))).epsilon(1e-12));
  for (const auto& r : refs::kBasisNormSq) {
    double v = basis_norm(r.n, static_cast<int>(r.m));
    INFO("n " << r.n << " m " << r.m);
    CHECK(std::abs(v * v - r.value) <= 1e-11 * r.value);
  }
  ThetaGridOptions fine;
  fine.panels = 128;
  fine.points = 20;
  double coarse = basis_norms(0.5, 1, ThetaGrid{})[1], refined = basis_norms(0.5, 1, ThetaGrid(fine))[1];
  CHECK(std::abs(coarse - refined) < 1e-10);
}

TEST_CASE("orthogonality and eigen residuals") {
  ThetaGrid grid;
  auto nodes = interval_nodes(1e-3, 400);
  for (double n : kNs) {
    auto g = basis_gram(n, 20, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (i != j) worst = std::max(worst, std::abs(g[i][j]));
    INFO("n = " << n);
    CHECK(worst <= 1e-9);
    for (int m = 0; m <= 20; ++m) CHECK(eigen_residual(n, m, nodes) <= 1e-7);
  }
}

TEST_CASE("projection of basis combinations") {
  ThetaGrid grid;
  for (double n : {0.0, 0.25, 0.5}) {
    SpectralCoeffs a = project(from_modes(n, {1.0}), n, 10, 1.0, 0.0, grid);
    CHECK(a.gamma[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int m = 1; m <= 10; ++m) CHECK(std::abs(a.gamma[m]) < 1e-11);
    SpectralCoeffs b = project(from_modes(n, {1.0, 0.1}), n, 10, 1.0, 0.0, grid);
    CHECK(std::abs(b.gamma[0] - 1.0) < 1e-9);
    CHECK(std::abs(b.gamma[1] - 0.1) < 1e-9);
    for (int m = 2; m <= 10; ++m) CHECK(std::abs(b.gamma[m]) < 1e-9);
    CHECK(b.tail < 1e-7);
  }
}

TEST_CASE("projection of the standard surface") {
  ThetaGrid grid;
  auto surf = std::make_shared<const AstigmaticSurface>(sinpow_astigmatism(5, 1, 0.3), 0.5, 0.1);
  for (const auto& r : refs::kStdSurface) {
    SpectralCoeffs c = project(*surf, r.n, 40, grid);
    INFO("n = " << r.n);
    CHECK(c.gamma[0] == doctest::Approx(r.gamma0).epsilon(1e-10));
    CHECK(c.gamma[1] == doctest::Approx(r.gamma1).epsilon(1e-9));
    CHECK(c.gamma[2] == doctest::Approx(r.gamma2).epsilon(1e-9));
    FocalData f = focal_points(*surf);
    CHECK(std::abs(gamma0_identity(r.n, f.f0, f.fpi) - c.gamma[0]) <= 1e-8 * std::abs(c.gamma[0]));
    CHECK(std::abs(gamma1_identity(r.n, surf->r1_at(Pole::north), surf->r1_at(Pole::south)) - c.gamma[1]) <=
          1e-7 * std::abs(c.gamma[1]));
  }
}

TEST_CASE("focal identities") {
  CHECK(gamma0_identity(0.0, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma0_identity(0.7, 0.3, 0.3) == 0.0);
  for (const auto& r : refs::kGamma1Constant)
    CHECK(gamma1_identity(r.n, 0.0, r.value) == doctest::Approx(1.0).epsilon(1e-9));

  std::mt19937 gen(3);
  std::uniform_real_distribution<double> m(4.0, 7.0), tilt(-0.5, 0.5), amp(0.2, 2.0);
  ThetaGrid grid;
  for (int k = 0; k < 3; ++k) {
    double n = k == 0 ? 0.25 : 0.5;
    AstigmaticSurface surf(sinpow_astigmatism(m(gen), amp(gen), tilt(gen)), 2.0, 0.1);
    SpectralCoeffs c = project(surf, n, 30, grid);
    FocalData f = focal_points(surf);
    CHECK(gamma0_identity(n, f.f0, f.fpi) == doctest::Approx(c.gamma[0]).epsilon(1e-7));
    CHECK(gamma1_identity(n, surf.r1_at(Pole::north), surf.r1_at(Pole::south)) ==
          doctest::Approx(c.gamma[1]).epsilon(1e-7));
  }
}

TEST_CASE("parseval") {
  ThetaGrid grid;
  AstigmaticSurface surf(sinpow_astigmatism(5, 1, 0.3), 0.5, 0.1);
  double prev = INFINITY;
  for (int M : {2, 5, 10, 20, 40}) {
    SpectralCoeffs c = project(surf, 0.5, M, grid);
    CHECK(c.tail >= 0.0);
    CHECK(c.tail <= prev);
    prev = c.tail;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("domain checks") {
  const double n = 0.5;
  DomainCheck hopf = check_domain(hopf_astigmatism(n, 1.0), n);
  CHECK(hopf.passed());
  CHECK(check_domain(sinpow_astigmatism(5), n).passed());
  DomainCheck two = check_domain(sinpow_astigmatism(2), n);
  CHECK_FALSE(two.passed());
  CHECK_FALSE(two.failures().empty());
  CHECK(hopf.thresholds.boundary == 1e-6);
  CHECK(hopf.thresholds.orthogonality == 1e-9);
  for (double m : {3.6, 4.0, 4.5, 6.0}) CHECK(check_domain(sinpow_astigmatism(m, 1, 0.2), n).passed());
  for (double m : {2.0, 2.5, 3.25}) CHECK_FALSE(check_domain(sinpow_astigmatism(m, 1, 0.2), n).passed());
  // m = 2n + 2 puts the leading term in the kernel
  CHECK(check_domain(sinpow_astigmatism(3, 1, 0.2), n).passed());
  CHECK_THROWS(check_domain(sinpow_astigmatism(5), 1.5));
}

TEST_CASE("expansions") {
  const double n = 0.5;
  auto nodes = midpoint_nodes(200);
  SpectralCoeffs round;
  round.n = n;
  round.gamma.assign(11, 0.0);
  round.C1 = 1.2;
  round.C2 = 0.3;
  auto F = expand_r1_and_r(round, nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CHECK(F.r[i] == doctest::Approx(1.2 + 0.3 * nodes[i].cos()).epsilon(1e-14));
    CHECK(F.r1[i] == doctest::Approx(1.2).epsilon(1e-14));
  }

  SpectralCoeffs h = round;
  h.gamma[0] = 0.8;
  SurfaceProfile hs = hopf_sphere(n, 0.8, 1.2, 0.3, nodes);
  F = expand_r1_and_r(h, nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CHECK(std::abs(F.r[i] - hs.r[i]) < 1e-12);
    CHECK(std::abs(F.r1[i] - hs.r1[i]) < 1e-12);
    CHECK(std::abs(F.dr[i] - hs.dr[i]) < 1e-12);
  }
}

TEST_CASE("expansion consistency") {
  ThetaGrid grid;
  AstigmaticSurface surf(sinpow_astigmatism(5, 1, 0.3), 0.5, 0.1);
  for (double n : {0.25, 0.5}) {
    SpectralCoeffs c = project(surf, n, 40, grid);
    auto nodes = midpoint_nodes(300);
    auto F = expand_r1_and_r(c, nodes);
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) worst = std::max(worst, std::abs(F.r[i] - surf.r(nodes[i])));
    CHECK(worst < 1e-7);

    // || u - sum || by quadrature against the Parseval tail
    std::vector<EvalPoint> qn;
    for (const auto& q : grid.nodes()) qn.push_back(q.pt);
    auto Q = expand_r1_and_r(c, qn);
    double err2 = 0.0;
    for (std::size_t i = 0; i < qn.size(); ++i) {
      double sn = qn[i].sin();
      double e = (Q.s[i] - surf.s(qn[i])) / std::pow(sn, n + 2);
      err2 += grid.nodes()[i].weight * sn * e * e;
    }
    CHECK(std::sqrt(err2) <= c.tail * 1.01 + 1e-9);

    SupportFunction r;
    r.f = [c](const EvalPoint& p) { return expand_r1_and_r(c, {p}).r[0]; };
    auto inner = interval_nodes(0.1, 60);
    Radii R = radii_from_support(r, inner);
    auto G = expand_r1_and_r(c, inner);
    for (std::size_t i = 0; i < inner.size(); ++i) CHECK(std::abs(R.r2[i] - R.r1[i] - G.s[i]) < 1e-7);
  }
}

TEST_CASE("coefficient validation") {
  SpectralCoeffs c;
  c.n = 0.5;
  c.gamma = {1.0};
  CHECK_THROWS(c.validate());
  c.gamma = {1.0, NAN};
  CHECK_THROWS(c.validate());
  c.gamma = {1.0, 0.5};
  CHECK_NOTHROW(c.validate());
}

}  // TEST_SUITE
