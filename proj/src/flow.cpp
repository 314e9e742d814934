#include "hopf/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hopf {

void FdSettings::validate() const {
  if (nodes < 8) throw std::invalid_argument("fd: need at least 8 nodes");
  if (!(dt > 0.0)) throw std::invalid_argument("fd: time step must be positive");
  const double h = (std::numbers::pi - 2.0 * eps) / static_cast<double>(nodes - 1);
  if (!(eps > 0.0 && eps < 0.1) || std::abs(h - eps) < 1e-3 * h)
    throw std::invalid_argument("fd: pole offset must lie in (0, 0.1) and differ from the node spacing");
}

void FlowConfig::validate() const {
  params.validate();
  fd.validate();
  if (M < 1) throw std::invalid_argument("flow: M must be at least 1");
  if (!(t_end >= 0.0)) throw std::invalid_argument("flow: t_end must be non-negative");
  double prev = -1.0;
  for (double t : sample_times) {
    if (!(t > prev) || t < 0.0 || t > t_end)
      throw std::invalid_argument("flow: sample times must increase within [0, t_end]");
    prev = t;
  }
}

SpectralCoeffs evolve_spectral(const SpectralCoeffs& c0, const HopfParams& params, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_spectral: t must be non-negative");
  const double n = params.n();
  if (std::abs(c0.n - n) > 1e-12)
    throw std::invalid_argument("evolve_spectral: coefficient n does not match the flow");
  SpectralCoeffs c = c0;
  for (int m = 1; m <= c.M(); ++m)
    c.gamma[static_cast<std::size_t>(m)] *= std::exp(eigenvalue(c0.n, m) * params.b * t);
  const double k = 2.0 * (n + 1.0) * params.b;
  c.C1 = c0.C1 * std::exp(-k * t) - params.c / k * std::expm1(-k * t);
  return c;
}

ExpansionTable::Fields profiles_at(const SpectralCoeffs& c, const std::vector<EvalPoint>& nodes) {
  return expand_r1_and_r(c, nodes);
}

LimitSurface limit_surface(const SpectralCoeffs& c0, const HopfParams& params,
                           const std::vector<EvalPoint>& nodes) {
  const double n = params.n();
  LimitSurface L;
  L.C0 = c0.gamma.at(0);
  L.C1 = params.c / (2.0 * (n + 1.0) * params.b);
  L.C2 = c0.C2;
  L.round = std::abs(L.C0) <= 1e-12 * std::max({1.0, std::abs(L.C1), std::abs(L.C2)});
  L.profile = support_from_astigmatism(hopf_astigmatism(n, L.round ? 0.0 : L.C0), L.C1, L.C2, nodes);
  L.convex = !L.profile.first_nonconvex().has_value();
  return L;
}

FdGrid fd_grid(const FdSettings& s) {
  s.validate();
  FdGrid g;
  g.eps = s.eps;
  g.h = (std::numbers::pi - 2.0 * s.eps) / static_cast<double>(s.nodes - 1);
  g.nodes.reserve(s.nodes);
  for (std::size_t i = 0; i < s.nodes; ++i) {
    std::size_t j = std::min(i, s.nodes - 1 - i);
    double d = s.eps + static_cast<double>(j) * g.h;
    g.nodes.push_back(EvalPoint::near(i == j ? Pole::north : Pole::south, d));
  }
  return g;
}

namespace {

// Near a pole, with v = sin^2(d/2), admissible support functions behave like
// q0 + q1 v + q v^{n+2}. The pole value obeys q0' = 2 beta q0 + beta q1 + c,
// beta = (a+b)/2, and q1 is conserved.
struct PoleClosure {
  std::array<double, 4> v{}, p{};        // v and v^{n+2} at the four end nodes
  std::array<double, 4> c{};             // q = sum c_k (r_k - q0 - q1 v_k)
  std::array<std::array<double, 4>, 3> fit{};  // least squares weights for (q0, q1, q)
  double ghost_v = 0.0, ghost_p = 0.0;   // reflected node at distance h - eps
};

PoleClosure pole_closure(const FdGrid& g, double n) {
  PoleClosure pc;
  const double e = n + 2.0;
  for (int k = 0; k < 4; ++k) {
    double sh = std::sin(0.5 * (g.eps + k * g.h));
    pc.v[k] = sh * sh;
    pc.p[k] = std::pow(pc.v[k], e);
  }
  double sg = std::sin(0.5 * (g.h - g.eps));
  pc.ghost_v = sg * sg;
  pc.ghost_p = std::pow(pc.ghost_v, e);

  // columns scaled by their value at the outermost node
  const double sv = pc.v[3], sp = pc.p[3];
  double pp = 0.0;
  for (int k = 0; k < 4; ++k) pp += (pc.p[k] / sp) * (pc.p[k] / sp);
  for (int k = 0; k < 4; ++k) pc.c[k] = (pc.p[k] / sp) / pp / sp;

  double N[3][3] = {};
  std::array<std::array<double, 3>, 4> phi;
  for (int k = 0; k < 4; ++k) {
    phi[k] = {1.0, pc.v[k] / sv, pc.p[k] / sp};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) N[i][j] += phi[k][i] * phi[k][j];
  }
  double det = N[0][0] * (N[1][1] * N[2][2] - N[1][2] * N[2][1]) -
               N[0][1] * (N[1][0] * N[2][2] - N[1][2] * N[2][0]) +
               N[0][2] * (N[1][0] * N[2][1] - N[1][1] * N[2][0]);
  double inv[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (N[r0][c0] * N[r1][c1] - N[r0][c1] * N[r1][c0]) / det;
    }
  const double unscale[3] = {1.0, 1.0 / sv, 1.0 / sp};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k) {
      double w = 0.0;
      for (int j = 0; j < 3; ++j) w += inv[i][j] * phi[k][j];
      pc.fit[i][k] = w * unscale[i];
    }
  return pc;
}

// Spatial operator: tridiagonal interior, end rows over four nodes, plus the
// ghost contribution of the pole data f0 q0 + f1 q1.
struct Operator {
  std::vector<double> lo, di, up;
  std::array<double, 4> north{}, south{};  // nodes 0..3 and N-1..N-4
  double f0 = 0.0, f1 = 0.0;
  double add = 0.0;
};

Operator build_operator(const FdGrid& g, const HopfParams& P, const PoleClosure& pc) {
  const std::size_t N = g.nodes.size();
  Operator A;
  A.lo.assign(N, 0.0);
  A.di.assign(N, 0.0);
  A.up.assign(N, 0.0);
  const double h2 = g.h * g.h;
  for (std::size_t i = 0; i < N; ++i) {
    double ct = g.nodes[i].cot();
    A.lo[i] = P.b / h2 - P.a * ct / (2.0 * g.h);
    A.di[i] = -2.0 * P.b / h2 + (P.a + P.b);
    A.up[i] = P.b / h2 + P.a * ct / (2.0 * g.h);
  }
  // ghost r(-(h - eps)) = q0 + q1 vg + pg sum c_k (r_k - q0 - q1 v_k)
  const double ghost = A.lo[0];
  double sc = 0.0, scv = 0.0;
  for (int k = 0; k < 4; ++k) {
    sc += pc.c[k];
    scv += pc.c[k] * pc.v[k];
  }
  A.north = {A.di[0], A.up[0], 0.0, 0.0};
  for (int k = 0; k < 4; ++k) A.north[k] += ghost * pc.ghost_p * pc.c[k];
  A.south = A.north;
  A.f0 = ghost * (1.0 - pc.ghost_p * sc);
  A.f1 = ghost * (pc.ghost_v - pc.ghost_p * scv);
  A.add = P.c;
  return A;
}

double apply_row(const Operator& A, const std::vector<double>& r, std::size_t i) {
  const std::size_t N = r.size();
  if (i == 0) return A.north[0] * r[0] + A.north[1] * r[1] + A.north[2] * r[2] + A.north[3] * r[3];
  if (i == N - 1)
    return A.south[0] * r[N - 1] + A.south[1] * r[N - 2] + A.south[2] * r[N - 3] +
           A.south[3] * r[N - 4];
  return A.lo[i] * r[i - 1] + A.di[i] * r[i] + A.up[i] * r[i + 1];
}

// (I - dt/2 A) with the end rows reduced to tridiagonal form, LU factored.
class CnSolver {
 public:
  CnSolver(const Operator& A, double dt) : dt_(dt) {
    const std::size_t N = A.di.size();
    lo_.resize(N);
    di_.resize(N);
    up_.resize(N);
    const double k = 0.5 * dt;
    for (std::size_t i = 1; i + 1 < N; ++i) {
      lo_[i] = -k * A.lo[i];
      di_[i] = 1.0 - k * A.di[i];
      up_[i] = -k * A.up[i];
    }
    reduce(A.north, 1, 2, north_);
    reduce(A.south, N - 2, N - 3, south_);
    di_[0] = north_.row[0];
    up_[0] = north_.row[1];
    di_[N - 1] = south_.row[0];
    lo_[N - 1] = south_.row[1];
    // Thomas factorization
    piv_.resize(N);
    mul_.resize(N);
    piv_[0] = di_[0];
    for (std::size_t i = 1; i < N; ++i) {
      if (piv_[i - 1] == 0.0 || !std::isfinite(piv_[i - 1]))
        throw FdInstability("fd_oracle: singular tridiagonal system");
      mul_[i] = lo_[i] / piv_[i - 1];
      piv_[i] = di_[i] - mul_[i] * up_[i - 1];
    }
    if (piv_[N - 1] == 0.0 || !std::isfinite(piv_[N - 1]))
      throw FdInstability("fd_oracle: singular tridiagonal system");
  }

  double dt() const { return dt_; }

  // rhs is modified in place into the solution
  void solve(std::vector<double>& rhs) const {
    const std::size_t N = rhs.size();
    rhs[0] -= north_.f3 * rhs[2] + north_.f2 * rhs[1];
    rhs[N - 1] -= south_.f3 * rhs[N - 3] + south_.f2 * rhs[N - 2];
    for (std::size_t i = 1; i < N; ++i) rhs[i] -= mul_[i] * rhs[i - 1];
    rhs[N - 1] /= piv_[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) rhs[i] = (rhs[i] - up_[i] * rhs[i + 1]) / piv_[i];
  }

 private:
  struct Reduced {
    std::array<double, 2> row{};
    double f3 = 0.0, f2 = 0.0;  // multiples of rows (end +- 2) and (end +- 1) subtracted
  };

  // End row over offsets 0..3 minus multiples of the neighbouring rows at offsets 2 and 1.
  void reduce(const std::array<double, 4>& a, std::size_t i1, std::size_t i2, Reduced& out) {
    const double k = 0.5 * dt_;
    std::array<double, 4> m = {1.0 - k * a[0], -k * a[1], -k * a[2], -k * a[3]};
    const bool north = i1 < i2;
    // row i2 touches offsets 1, 2, 3
    double r2_1 = north ? lo_[i2] : up_[i2], r2_2 = di_[i2], r2_3 = north ? up_[i2] : lo_[i2];
    out.f3 = m[3] / r2_3;
    m[1] -= out.f3 * r2_1;
    m[2] -= out.f3 * r2_2;
    // row i1 touches offsets 0, 1, 2
    double r1_0 = north ? lo_[i1] : up_[i1], r1_1 = di_[i1], r1_2 = north ? up_[i1] : lo_[i1];
    out.f2 = m[2] / r1_2;
    m[0] -= out.f2 * r1_0;
    m[1] -= out.f2 * r1_1;
    out.row = {m[0], m[1]};
  }

  double dt_;
  std::vector<double> lo_, di_, up_, piv_, mul_;
  Reduced north_, south_;
};

double deviation(const std::vector<double>& r, double rstar) {
  double m = 0.0;
  for (double x : r) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x - rstar));
  }
  return m;
}

}  // namespace

FdSolution fd_oracle(const std::vector<double>& r0, const FdGrid& grid, const HopfParams& params,
                     const std::vector<double>& times, double dt) {
  params.validate();
  const std::size_t N = grid.nodes.size();
  if (r0.size() != N) throw std::invalid_argument("fd_oracle: initial data does not match grid");
  if (N < 8) throw std::invalid_argument("fd_oracle: grid too small");
  if (!(dt > 0.0)) throw std::invalid_argument("fd_oracle: time step must be positive");
  const PoleClosure pc = pole_closure(grid, params.n());
  const Operator A = build_operator(grid, params, pc);
  const double beta = 0.5 * (params.a + params.b);

  const double rstar = -params.c / (params.a + params.b);
  const double bound = 4.0 * deviation(r0, rstar) + 1e-9 * (1.0 + std::abs(rstar));

  auto fitted = [&](const std::vector<double>& r, bool south, int i) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += pc.fit[i][k] * r[south ? N - 1 - k : k];
    return acc;
  };
  double q0n = fitted(r0, false, 0), q1n = fitted(r0, false, 1);
  double q0s = fitted(r0, true, 0), q1s = fitted(r0, true, 1);

  FdSolution out;
  std::vector<double> r = r0, rhs(N);
  auto record = [&](double t) {
    out.times.push_back(t);
    out.r.push_back(r);
    out.r_north.push_back(fitted(r, false, 0));
    out.r_south.push_back(fitted(r, true, 0));
  };
  auto check = [&](double t) {
    if (deviation(r, rstar) > bound)
      throw FdInstability("fd_oracle: solution left the analytic bound at t = " + std::to_string(t));
  };

  double t = 0.0;
  std::unique_ptr<CnSolver> solver;
  for (double target : times) {
    if (target < t - 1e-15) throw std::invalid_argument("fd_oracle: times must increase");
    const double span = target - t;
    const auto steps = static_cast<std::size_t>(std::max(0.0, std::round(span / dt)));
    if (steps > 0) {
      const double k = span / static_cast<double>(steps);
      if (!solver || solver->dt() != k) solver = std::make_unique<CnSolver>(A, k);
      const double grow = (1.0 + k * beta) / (1.0 - k * beta);
      for (std::size_t s = 0; s < steps; ++s) {
        double n_new = grow * q0n + k * (beta * q1n + params.c) / (1.0 - k * beta);
        double s_new = grow * q0s + k * (beta * q1s + params.c) / (1.0 - k * beta);
        for (std::size_t i = 0; i < N; ++i) rhs[i] = r[i] + 0.5 * k * apply_row(A, r, i) + k * A.add;
        rhs[0] += 0.5 * k * (A.f0 * (q0n + n_new) + 2.0 * A.f1 * q1n);
        rhs[N - 1] += 0.5 * k * (A.f0 * (q0s + s_new) + 2.0 * A.f1 * q1s);
        solver->solve(rhs);
        r.swap(rhs);
        q0n = n_new;
        q0s = s_new;
        ++out.steps;
        if (out.steps % 1000 == 0) check(t + k * static_cast<double>(s + 1));
      }
    }
    t = target;
    check(t);
    record(t);
  }
  return out;
}

ErrorMetrics compare(const std::vector<double>& spectral, const std::vector<double>& oracle,
                     const FdGrid& grid) {
  if (spectral.size() != grid.nodes.size() || oracle.size() != grid.nodes.size())
    throw std::invalid_argument("compare: sample counts do not match the grid");
  const double collar = 5.0 * grid.eps * (1.0 - 1e-12);
  ErrorMetrics e;
  double acc = 0.0;
  for (std::size_t i = 0; i < spectral.size(); ++i) {
    const EvalPoint& q = grid.nodes[i];
    if (q.pole_distance() < collar) continue;
    double d = std::abs(spectral[i] - oracle[i]);
    e.sup = std::max(e.sup, d);
    acc += grid.h * q.sin() * d * d;
  }
  e.l2 = std::sqrt(acc);
  return e;
}

std::vector<double> fd_astigmatism(const std::vector<double>& r, const FdGrid& grid) {
  const std::size_t N = r.size();
  std::vector<double> s(N, 0.0);
  const double h = grid.h;
  for (std::size_t i = 1; i + 1 < N; ++i) {
    double d2 = (r[i + 1] - 2.0 * r[i] + r[i - 1]) / (h * h);
    double d1 = (r[i + 1] - r[i - 1]) / (2.0 * h);
    s[i] = d2 - grid.nodes[i].cot() * d1;
  }
  return s;
}

std::vector<double> oracle_modes(const std::vector<double>& s, const FdGrid& grid, double n, int M) {
  if (s.size() != grid.nodes.size()) throw std::invalid_argument("oracle_modes: size mismatch");
  const std::size_t K = static_cast<std::size_t>(M) + 1;
  std::vector<double> G(K * K, 0.0), rhs(K, 0.0);
  const double collar = 5.0 * grid.eps * (1.0 - 1e-12);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const EvalPoint& q = grid.nodes[i];
    if (q.pole_distance() < collar) continue;
    const double sn = q.sin();
    const double u = s[i] / std::pow(sn, n + 2.0);
    const double w = grid.h * sn;
    BasisValues b = basis_at(n, M, q);
    for (std::size_t j = 0; j < K; ++j) {
      rhs[j] += w * u * b.e[j];
      for (std::size_t k = 0; k < K; ++k) G[j * K + k] += w * b.e[j] * b.e[k];
    }
  }
  // Gaussian elimination with partial pivoting
  for (std::size_t c = 0; c < K; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < K; ++i)
      if (std::abs(G[i * K + c]) > std::abs(G[p * K + c])) p = i;
    if (p != c) {
      for (std::size_t k = 0; k < K; ++k) std::swap(G[c * K + k], G[p * K + k]);
      std::swap(rhs[c], rhs[p]);
    }
    for (std::size_t i = c + 1; i < K; ++i) {
      double f = G[i * K + c] / G[c * K + c];
      for (std::size_t k = c; k < K; ++k) G[i * K + k] -= f * G[c * K + k];
      rhs[i] -= f * rhs[c];
    }
  }
  std::vector<double> x(K);
  for (std::size_t i = K; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t k = i + 1; k < K; ++k) acc -= G[i * K + k] * x[k];
    x[i] = acc / G[i * K + i];
  }
  return x;
}

RateFit fit_decay(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size() || times.empty())
    throw std::invalid_argument("fit_decay: need matching non-empty samples");
  const double floor = 1e-10 * std::abs(values.front());
  std::vector<double> t, y;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(values[i]) > floor && values[i] != 0.0) {
      t.push_back(times[i]);
      y.push_back(std::log(std::abs(values[i])));
    }
  if (t.size() < 2) throw std::invalid_argument("fit_decay: fewer than two usable samples");
  const double k = static_cast<double>(t.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i] / k;
    my += y[i] / k;
  }
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  if (stt == 0.0) throw std::invalid_argument("fit_decay: sample times coincide");
  const double slope = sty / stt;
  RateFit f;
  f.rate = -slope;
  f.samples = t.size();
  double rss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double e = y[i] - (my + slope * (t[i] - mt));
    rss += e * e;
  }
  f.residual = std::sqrt(rss / k);
  return f;
}

}  // namespace hopf
