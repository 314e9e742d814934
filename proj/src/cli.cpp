#include "hopf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopf/config.hpp"
#include "hopf/flow.hpp"
#include "hopf/io.hpp"

namespace hopf {

namespace {

using Json = nlohmann::ordered_json;

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config, surface, n, a, b, c, M, t_end, times, out, fd_nodes, fd_dt, fd_eps, phi_count;
  std::string time;
};

void add_shared(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "INI file with [surface] [flow] [numerics] [output]");
  cmd->add_option("--surface", f.surface, "e.g. \"sinpow m=5 tilt=0.3\", \"hopf C0=1\", \"csv profile.csv\"");
  cmd->add_option("--n", f.n, "flow index n, a = -(2n+3) b");
  cmd->add_option("--a", f.a, "flow coefficient a");
  cmd->add_option("--b", f.b, "flow coefficient b > 0");
  cmd->add_option("--c", f.c, "flow coefficient c");
  cmd->add_option("--M", f.M, "highest spectral mode");
  cmd->add_option("--t-end", f.t_end, "final time");
  cmd->add_option("--times", f.times, "sample times, comma separated");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--fd-nodes", f.fd_nodes, "finite-difference nodes");
  cmd->add_option("--fd-dt", f.fd_dt, "finite-difference time step");
  cmd->add_option("--fd-eps", f.fd_eps, "distance of the end nodes from the poles");
  cmd->add_option("--phi-count", f.phi_count, "mesh points per ring");
}

RunConfig make_config(const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  auto put = [&cfg](const std::string& v, const char* section, const char* key) {
    if (!v.empty()) cfg.set(section, key, v);
  };
  put(f.surface, "surface", "spec");
  if (!f.n.empty()) cfg.a.reset();
  if (!f.a.empty()) cfg.n.reset();
  put(f.n, "flow", "n");
  put(f.a, "flow", "a");
  put(f.b, "flow", "b");
  put(f.c, "flow", "c");
  put(f.t_end, "flow", "t_end");
  put(f.times, "flow", "times");
  put(f.M, "numerics", "M");
  put(f.fd_nodes, "numerics", "fd_nodes");
  put(f.fd_dt, "numerics", "fd_dt");
  put(f.fd_eps, "numerics", "fd_eps");
  put(f.phi_count, "numerics", "phi_count");
  put(f.out, "output", "dir");
  cfg.validate();
  return cfg;
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

std::filesystem::path out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path.string());
  os << j.dump(2) << '\n';
  if (!os) throw FormatError("write failed: " + path.string());
}

// r = C1 + C2 cos + (J - cos I): fit C1, C2 to the samples with s known
std::pair<double, double> fit_pole_constants(const Astigmatism& s, const ProfileTable& t) {
  AstigmaticSurface base(s, 0.0, 0.0);
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    EvalPoint p = EvalPoint::from_theta(t.theta[i]);
    double y = t.r[i] - base.r(p), x = p.cos();
    a11 += 1;
    a12 += x;
    a22 += x * x;
    b1 += y;
    b2 += x * y;
  }
  double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-12 * a11 * a11)) throw FormatError("csv surface: too few distinct samples");
  return {(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};
}

std::shared_ptr<const AstigmaticSurface> build_surface(const SurfaceSpec& spec, double n) {
  switch (spec.kind) {
    case SurfaceSpec::Kind::hopf:
      return std::make_shared<const AstigmaticSurface>(hopf_astigmatism(spec.n.value_or(n), spec.C0),
                                                       spec.C1, spec.C2);
    case SurfaceSpec::Kind::sinpow:
      return std::make_shared<const AstigmaticSurface>(
          sinpow_astigmatism(spec.m, spec.amp, spec.tilt, spec.bias), spec.C1, spec.C2);
    case SurfaceSpec::Kind::csv: {
      ProfileTable t = read_profile_csv(spec.path);
      if (t.size() < 8) throw FormatError(spec.path + ": need at least 8 samples");
      Astigmatism s = sampled_astigmatism(t.theta, t.s);
      auto [C1, C2] = fit_pole_constants(s, t);
      return std::make_shared<const AstigmaticSurface>(s, C1, C2);
    }
  }
  throw ConfigError("unknown surface kind");
}

struct Classification {
  double n = 0.0;
  LcReport lc;
  std::optional<DomainCheck> domain;
  std::vector<std::string> failures;
  bool convex = false;
  std::optional<SlopeEstimate> slope[2];
  std::string slope_note[2];
  FocalData focal;
  double gamma0 = 0.0;
  bool focal_coincide = false;
  bool hypotheses = false;
  LimitSurface limit;
  bool stationary = false;
  SpectralCoeffs coeffs;
};

Classification classify(const AstigmaticSurface& surf, const RunConfig& cfg) {
  const HopfParams P = cfg.params();
  Classification c;
  c.n = P.n();
  c.lc = lc_classify(c.n);
  if (c.n > -1.0 && c.n < 1.0) {
    c.domain = check_domain(surf.astigmatism(), c.n);
    c.failures = c.domain->failures();
  } else {
    c.failures.push_back("n = " + std::to_string(c.n) + " lies outside (-1, 1): endpoints are limit point");
  }

  SurfaceProfile prof = sample_surface(std::shared_ptr<const AstigmaticSurface>(&surf, [](auto*) {}),
                                       midpoint_nodes(cfg.profile_nodes));
  c.convex = !prof.first_nonconvex();
  if (!c.convex) c.failures.push_back("initial surface is not strictly convex");

  const Pole poles[2] = {Pole::north, Pole::south};
  for (int k = 0; k < 2; ++k) {
    try {
      c.slope[k] = umbilic_slope(surf, poles[k]);
    } catch (const std::exception& e) {
      c.slope_note[k] = e.what();
    }
  }
  c.focal = focal_points(surf);
  c.gamma0 = gamma0_identity(c.n, c.focal.f0, c.focal.fpi);
  double scale = std::max({1.0, std::abs(c.focal.f0), std::abs(c.focal.fpi)});
  c.focal_coincide =
      std::abs(c.focal.f0 - c.focal.fpi) <= std::max(c.focal.err0 + c.focal.errpi, 1e-10 * scale);
  c.hypotheses = c.failures.empty();
  if (c.hypotheses) {
    c.coeffs = project(surf, c.n, cfg.M, ThetaGrid{});
    if (c.focal_coincide) c.coeffs.gamma[0] = 0.0;
    c.limit = limit_surface(c.coeffs, P, midpoint_nodes(cfg.profile_nodes));
    double rest = 0.0;
    for (int m = 1; m <= c.coeffs.M(); ++m) rest = std::max(rest, std::abs(c.coeffs.gamma[m]));
    c.stationary = !c.limit.round && rest <= 1e-9 * std::max(1.0, std::abs(c.coeffs.gamma[0])) &&
                   std::abs(c.coeffs.C1 - c.limit.C1) <= 1e-12 * std::max(1.0, std::abs(c.limit.C1));
  }
  return c;
}

std::string slope_text(const std::optional<SlopeEstimate>& s, const std::string& note) {
  if (!s) return "undefined (" + note + ")";
  if (s->divergent) return s->value > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g +- %.2g", s->value, s->uncertainty);
  return buf;
}

bool slope_ok(const std::optional<SlopeEstimate>& s) {
  return s && s->value > 3.0 + std::max(3.0 * s->uncertainty, 1e-8);
}

std::string verdict(const Classification& c) {
  if (!c.hypotheses) return "hypotheses not met";
  if (c.limit.round) return "round sphere";
  return c.stationary ? "same Hopf sphere (stationary)" : "non-round Hopf sphere";
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : v < 0 ? "-inf" : "nan";
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  auto surf = build_surface(cfg.surface, cfg.params().n());
  Classification c = classify(*surf, cfg);
  const HopfParams P = cfg.params();

  out << "surface: " << cfg.surface.describe() << '\n';
  out << "flow: n=" << c.n << " a=" << P.a << " b=" << P.b << " c=" << P.c << '\n';
  out << "endpoints: " << to_string(c.lc.cls) << '\n';
  if (c.domain) {
    const DomainCheck& d = *c.domain;
    out << "condition I: " << (d.condition_I() ? "pass" : "fail") << " (||u|| " << d.norm_u << ", ||Lu|| "
        << d.norm_Lu << ")\n";
    out << "condition II: " << (d.condition_II() ? "pass" : "fail") << " (north " << d.bc_north << ", south "
        << d.bc_south << ", threshold " << d.thresholds.boundary * d.bc_scale << ")\n";
  }
  out << "convex: " << (c.convex ? "yes" : "no") << '\n';
  out << "umbilic slope north: " << slope_text(c.slope[0], c.slope_note[0])
      << (slope_ok(c.slope[0]) ? " (> 3)" : " (not > 3)") << '\n';
  out << "umbilic slope south: " << slope_text(c.slope[1], c.slope_note[1])
      << (slope_ok(c.slope[1]) ? " (> 3)" : " (not > 3)") << '\n';
  out << "focal points: f0=" << fmt17(c.focal.f0) << " fpi=" << fmt17(c.focal.fpi) << '\n';
  out << "gamma0: " << fmt17(c.gamma0) << '\n';
  for (const auto& f : c.failures) out << "failed: " << f << '\n';
  out << "verdict: " << verdict(c) << '\n';
  if (c.hypotheses) {
    if (c.limit.round)
      out << "limit: round sphere radius " << fmt17(-P.c / (P.a + P.b)) << " centre offset "
          << fmt17(c.limit.C2) << '\n';
    else
      out << "limit: Hopf sphere C0=" << fmt17(c.limit.C0) << " C1=" << fmt17(c.limit.C1)
          << " C2=" << fmt17(c.limit.C2) << '\n';
  }

  Json j;
  j["surface"] = cfg.surface.describe();
  j["n"] = c.n;
  j["a"] = P.a;
  j["b"] = P.b;
  j["c"] = P.c;
  j["endpoints"] = to_string(c.lc.cls);
  if (c.domain) {
    const DomainCheck& d = *c.domain;
    j["domain.in_L2"] = d.in_L2;
    j["domain.norm_u"] = json_number(d.norm_u);
    j["domain.op_in_L2"] = d.op_in_L2;
    j["domain.norm_Lu"] = json_number(d.norm_Lu);
    j["domain.bc_north"] = json_number(d.bc_north);
    j["domain.bc_south"] = json_number(d.bc_south);
    j["domain.bc_scale"] = d.bc_scale;
    j["domain.cond2_north"] = json_number(d.cond2_north);
    j["domain.cond2_south"] = json_number(d.cond2_south);
    j["domain.threshold.boundary"] = d.thresholds.boundary;
    j["domain.threshold.orthogonality"] = d.thresholds.orthogonality;
    j["domain.threshold.eigen_residual"] = d.thresholds.eigen_residual;
    j["domain.threshold.limit_tolerance"] = d.thresholds.limit_tolerance;
    j["domain.condition_I"] = d.condition_I();
    j["domain.condition_II"] = d.condition_II();
  }
  j["convex"] = c.convex;
  const char* names[2] = {"north", "south"};
  for (int k = 0; k < 2; ++k) {
    std::string key = std::string("slope.") + names[k];
    if (c.slope[k]) {
      j[key] = json_number(c.slope[k]->value);
      j[key + ".uncertainty"] = c.slope[k]->uncertainty;
    } else {
      j[key] = "undefined";
    }
    j[key + ".above_3"] = slope_ok(c.slope[k]);
  }
  j["focal.f0"] = c.focal.f0;
  j["focal.fpi"] = c.focal.fpi;
  j["focal.coincide"] = c.focal_coincide;
  j["gamma0"] = c.gamma0;
  j["failures"] = c.failures;
  j["verdict"] = verdict(c);
  if (c.hypotheses) {
    j["limit.round"] = c.limit.round;
    j["limit.radius"] = -P.c / (P.a + P.b);
    j["limit.C0"] = c.limit.C0;
    j["limit.C1"] = c.limit.C1;
    j["limit.C2"] = c.limit.C2;
    j["limit.convex"] = c.limit.convex;
  }
  write_json(out_dir(cfg) / "classify.json", j);
  return 0;
}

Classification require_domain(const AstigmaticSurface& surf, const RunConfig& cfg) {
  Classification c = classify(surf, cfg);
  if (!c.hypotheses) {
    std::string msg = "hypotheses not met:";
    for (const auto& f : c.failures) msg += "\n  " + f;
    throw ConfigError(msg);
  }
  return c;
}

SurfaceProfile spectral_profile(const SpectralCoeffs& c, const std::vector<EvalPoint>& nodes) {
  ExpansionTable::Fields F = profiles_at(c, nodes);
  SurfaceProfile p;
  p.nodes = nodes;
  p.r = F.r;
  p.dr = F.dr;
  p.r1 = F.r1;
  p.s = F.s;
  p.r2.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) p.r2[i] = F.r1[i] + F.s[i];
  p.C1 = c.C1;
  p.C2 = c.C2;
  return p;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const HopfParams P = cfg.params();
  auto surf = build_surface(cfg.surface, P.n());
  Classification cl = require_domain(*surf, cfg);
  const double n = cl.n;
  const auto dir = out_dir(cfg);
  const auto nodes = midpoint_nodes(cfg.profile_nodes);
  const SpectralCoeffs& c0 = cl.coeffs;
  const LimitSurface& L = cl.limit;

  Json j;
  j["surface"] = cfg.surface.describe();
  j["n"] = n;
  j["a"] = P.a;
  j["b"] = P.b;
  j["c"] = P.c;
  j["M"] = c0.M();
  j["tail"] = c0.tail;
  j["limit.round"] = L.round;
  j["limit.C0"] = L.C0;
  j["limit.C1"] = L.C1;
  j["limit.C2"] = L.C2;
  j["limit.convex"] = L.convex;
  write_profile_csv((dir / "profile_limit.csv").string(), to_table(L.profile));

  const auto times = cfg.sample_times();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    SpectralCoeffs ct = evolve_spectral(c0, P, t);
    SurfaceProfile p = spectral_profile(ct, nodes);
    const std::string tag = time_tag(t);
    write_coeffs((dir / ("coeffs_t" + tag + ".txt")).string(), ct);
    write_profile_csv((dir / ("profile_t" + tag + ".csv")).string(), to_table(p));
    double u_dist = 0.0, r_dist = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      u_dist = std::max(u_dist, std::abs(p.s[i] / std::pow(nodes[i].sin(), 2.0 * n + 2.0) - L.C0));
      r_dist = std::max(r_dist, std::abs(p.r[i] - L.profile.r[i]));
    }
    const std::string key = "sample." + std::to_string(k);
    j[key + ".t"] = t;
    j[key + ".C1"] = ct.C1;
    j[key + ".gamma0"] = ct.gamma[0];
    j[key + ".gamma1"] = ct.M() >= 1 ? ct.gamma[1] : 0.0;
    j[key + ".u_dist_limit"] = u_dist;
    j[key + ".r_dist_limit"] = r_dist;
    j[key + ".convex"] = !p.first_nonconvex();
    out << "t=" << tag << " C1=" << fmt17(ct.C1) << " sup|s/sin^(2n+2)-gamma0|=" << u_dist
        << " sup|r-r_limit|=" << r_dist << (p.first_nonconvex() ? " (not convex)" : "") << '\n';
  }
  out << "limit: " << (L.round ? "round sphere" : "Hopf sphere") << " C0=" << fmt17(L.C0)
      << " C1=" << fmt17(L.C1) << " C2=" << fmt17(L.C2) << '\n';
  write_json(dir / "report.json", j);
  out << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const HopfParams P = cfg.params();
  auto surf = build_surface(cfg.surface, P.n());
  Classification cl = require_domain(*surf, cfg);
  const double n = cl.n;
  const auto dir = out_dir(cfg);
  const FdGrid g = fd_grid(cfg.fd);

  const auto samples = cfg.sample_times();
  std::vector<double> fit_times;
  for (int k = 0; k <= 25; ++k) fit_times.push_back(0.01 * k / P.b);
  std::vector<double> times = samples;
  times.insert(times.end(), fit_times.begin(), fit_times.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  auto index_of = [&times](double t) {
    return static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin());
  };

  std::vector<double> r0(g.nodes.size());
  for (std::size_t i = 0; i < r0.size(); ++i) r0[i] = surf->r(g.nodes[i]);
  FdSolution sol;
  try {
    sol = fd_oracle(r0, g, P, times, cfg.fd.dt);
  } catch (const FdInstability& e) {
    throw NumericalFailure(std::string("finite-difference oracle failed: ") + e.what() +
                           " (nodes " + std::to_string(cfg.fd.nodes) + ", dt " + fmt17(cfg.fd.dt) + ")");
  }

  Json j;
  j["surface"] = cfg.surface.describe();
  j["n"] = n;
  j["b"] = P.b;
  j["c"] = P.c;
  j["fd.nodes"] = cfg.fd.nodes;
  j["fd.dt"] = cfg.fd.dt;
  j["fd.eps"] = cfg.fd.eps;
  j["fd.steps"] = sol.steps;

  ExpansionTable table(n, cl.coeffs.M(), g.nodes);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double t = samples[k];
    auto F = table.expand(evolve_spectral(cl.coeffs, P, t));
    ErrorMetrics e = compare(F.r, sol.r[index_of(t)], g);
    worst = std::max(worst, e.sup);
    const std::string key = "sample." + std::to_string(k);
    j[key + ".t"] = t;
    j[key + ".sup_error"] = e.sup;
    j[key + ".l2_error"] = e.l2;
    out << "t=" << time_tag(t) << " sup error " << e.sup << " l2 error " << e.l2 << '\n';
  }
  j["sup_error_max"] = worst;

  std::vector<std::vector<double>> modes(4);
  std::vector<double> north;
  for (double t : fit_times) {
    const auto& r = sol.r[index_of(t)];
    auto md = oracle_modes(fd_astigmatism(r, g), g, n, 8);
    for (int m = 1; m <= 3; ++m) modes[m].push_back(md[m]);
    north.push_back(sol.r_north[index_of(t)]);
  }
  for (int m = 1; m <= 3; ++m) {
    RateFit f = fit_decay(fit_times, modes[m]);
    f.expected = -eigenvalue(n, m) * P.b;
    const std::string key = "rate.m" + std::to_string(m);
    j[key] = f.rate;
    j[key + ".expected"] = f.expected;
    j[key + ".relative_error"] = json_number(f.relative_error());
    j[key + ".samples"] = f.samples;
    out << "mode " << m << " rate " << f.rate << " expected " << f.expected << '\n';
  }
  std::vector<double> dn, tn;
  for (std::size_t k = 0; k + 1 < north.size(); ++k) {
    dn.push_back(north[k + 1] - north[k]);
    tn.push_back(fit_times[k]);
  }
  RateFit fc = fit_decay(tn, dn);
  fc.expected = 2.0 * (n + 1.0) * P.b;
  j["rate.C1"] = fc.rate;
  j["rate.C1.expected"] = fc.expected;
  j["rate.C1.relative_error"] = json_number(fc.relative_error());
  j["rate.C1.samples"] = fc.samples;
  out << "C1 rate " << fc.rate << " expected " << fc.expected << '\n';
  write_json(dir / "report.json", j);
  out << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_mesh(const RunConfig& cfg, double t, std::ostream& out, std::ostream& err) {
  const HopfParams P = cfg.params();
  auto surf = build_surface(cfg.surface, P.n());
  Classification cl = require_domain(*surf, cfg);
  SurfaceProfile p = spectral_profile(evolve_spectral(cl.coeffs, P, t), midpoint_nodes(cfg.theta_count));
  if (auto bad = p.first_nonconvex())
    err << "warning: profile at t=" << time_tag(t) << " is not convex at theta=" << p.nodes[*bad].theta()
        << '\n';
  Mesh mesh = embed(p, cfg.phi_count);
  const auto path = out_dir(cfg) / ("mesh_t" + time_tag(t) + ".obj");
  write_obj(path.string(), mesh);
  out << "wrote " << path.string() << " (" << mesh.vertices.size() << " vertices, " << mesh.faces.size()
      << " faces)\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear Hopf flow of rotationally symmetric convex spheres"};
  app.require_subcommand(1);
  Flags f;
  auto* classify_cmd = app.add_subcommand("classify", "check hypotheses and predict the limit surface");
  auto* evolve_cmd = app.add_subcommand("evolve", "evolve in spectral coefficients and write profiles");
  auto* oracle_cmd = app.add_subcommand("oracle", "compare with the finite-difference solution");
  auto* mesh_cmd = app.add_subcommand("mesh", "write an OBJ mesh of the surface at a time");
  for (auto* cmd : {classify_cmd, evolve_cmd, oracle_cmd, mesh_cmd}) add_shared(cmd, f);
  mesh_cmd->add_option("--time", f.time, "time of the mesh (default t_end)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg = make_config(f);
    if (*classify_cmd) return cmd_classify(cfg, out);
    if (*evolve_cmd) return cmd_evolve(cfg, out);
    if (*oracle_cmd) return cmd_oracle(cfg, out);
    double t = f.time.empty() ? cfg.t_end : parse_number(f.time, "--time");
    if (t < 0) throw ConfigError("--time must be non-negative");
    return cmd_mesh(cfg, t, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hopf
