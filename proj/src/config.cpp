#include "hopf/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace hopf {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError(what + ": not a number: '" + text + "'");
  if (!std::isfinite(v)) throw ConfigError(what + ": must be finite");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (ss >> item) {
    std::stringstream parts(item);
    std::string piece;
    while (std::getline(parts, piece, ','))
      if (!piece.empty()) out.push_back(parse_number(piece, what));
  }
  return out;
}

namespace {

std::size_t parse_count(const std::string& text, const std::string& what) {
  double v = parse_number(text, what);
  if (v < 0 || v != std::floor(v) || v > 1e8) throw ConfigError(what + ": expected a count");
  return static_cast<std::size_t>(v);
}

}  // namespace

void SurfaceSpec::set(const std::string& key, const std::string& value) {
  if (key == "type" || key == "kind") {
    if (value == "hopf") kind = Kind::hopf;
    else if (value == "sinpow") kind = Kind::sinpow;
    else if (value == "csv") kind = Kind::csv;
    else throw ConfigError("surface type must be hopf, sinpow or csv");
  } else if (key == "n") n = parse_number(value, "surface.n");
  else if (key == "C0") C0 = parse_number(value, "surface.C0");
  else if (key == "m") m = parse_number(value, "surface.m");
  else if (key == "amp") amp = parse_number(value, "surface.amp");
  else if (key == "tilt") tilt = parse_number(value, "surface.tilt");
  else if (key == "bias") bias = parse_number(value, "surface.bias");
  else if (key == "C1") C1 = parse_number(value, "surface.C1");
  else if (key == "C2") C2 = parse_number(value, "surface.C2");
  else if (key == "path") path = value;
  else throw ConfigError("unknown surface key '" + key + "'");
}

std::string SurfaceSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::hopf:
      os << "hopf C0=" << C0 << " C1=" << C1 << " C2=" << C2;
      if (n) os << " n=" << *n;
      break;
    case Kind::sinpow:
      os << "sinpow m=" << m << " amp=" << amp << " tilt=" << tilt << " bias=" << bias << " C1=" << C1
         << " C2=" << C2;
      break;
    case Kind::csv: os << "csv path=" << path; break;
  }
  return os.str();
}

SurfaceSpec parse_surface(const std::string& text) {
  std::stringstream ss(text);
  std::string word;
  SurfaceSpec spec;
  if (!(ss >> word)) throw ConfigError("empty surface specification");
  spec.set("type", word);
  while (ss >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos) {
      if (spec.kind == SurfaceSpec::Kind::csv && spec.path.empty()) {
        spec.path = word;
        continue;
      }
      throw ConfigError("surface parameter '" + word + "' is not key=value");
    }
    spec.set(word.substr(0, eq), word.substr(eq + 1));
  }
  if (spec.kind == SurfaceSpec::Kind::csv && spec.path.empty())
    throw ConfigError("csv surface needs a path");
  return spec;
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  const std::string what = section + "." + key;
  if (section == "surface") {
    if (key == "spec") surface = parse_surface(value);
    else surface.set(key, value);
  } else if (section == "flow") {
    if (key == "n") n = parse_number(value, what);
    else if (key == "a") a = parse_number(value, what);
    else if (key == "b") b = parse_number(value, what);
    else if (key == "c") c = parse_number(value, what);
    else if (key == "t_end") t_end = parse_number(value, what);
    else if (key == "times") times = parse_list(value, what);
    else throw ConfigError("unknown key " + what);
  } else if (section == "numerics") {
    if (key == "M") {
      double v = parse_number(value, what);
      if (v != std::floor(v) || v < 1 || v > 60) throw ConfigError(what + ": expected 1 <= M <= 60");
      M = static_cast<int>(v);
    } else if (key == "fd_nodes") fd.nodes = parse_count(value, what);
    else if (key == "fd_dt") fd.dt = parse_number(value, what);
    else if (key == "fd_eps") fd.eps = parse_number(value, what);
    else if (key == "phi_count") phi_count = parse_count(value, what);
    else if (key == "theta_count") theta_count = parse_count(value, what);
    else if (key == "profile_nodes") profile_nodes = parse_count(value, what);
    else throw ConfigError("unknown key " + what);
  } else if (section == "output") {
    if (key == "dir") out = value;
    else throw ConfigError("unknown key " + what);
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
}

HopfParams RunConfig::params() const {
  if (n && a) throw ConfigError("give either n or a, not both");
  if (!(b > 0.0)) throw ConfigError("b must be positive");
  return a ? HopfParams::from_a(*a, b, c) : HopfParams::from_n(n.value_or(0.5), b, c);
}

std::vector<double> RunConfig::sample_times() const {
  if (!times.empty()) return times;
  std::vector<double> t{0.0, 0.1 * t_end, 0.5 * t_end, t_end};
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

FlowConfig RunConfig::flow() const {
  FlowConfig f;
  f.params = params();
  f.t_end = t_end;
  f.sample_times = sample_times();
  f.fd = fd;
  f.M = M;
  return f;
}

void RunConfig::validate() const {
  try {
    flow().validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (phi_count < 3) throw ConfigError("phi_count must be at least 3");
  if (theta_count < 4) throw ConfigError("theta_count must be at least 4");
  if (profile_nodes < 8) throw ConfigError("profile_nodes must be at least 8");
  if (surface.kind == SurfaceSpec::Kind::csv && surface.path.empty())
    throw ConfigError("csv surface needs a path");
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(is);
  } catch (const CLI::Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  RunConfig cfg;
  for (const auto& item : items) {
    if (item.name == "--" || item.name == "++") continue;
    if (item.parents.size() != 1)
      throw ConfigError(path + ": key '" + item.fullname() + "' must sit in a section");
    std::string value;
    for (const auto& in : item.inputs) value += (value.empty() ? "" : " ") + in;
    cfg.set(item.parents[0], item.name, value);
  }
  return cfg;
}

}  // namespace hopf
