#include "hopf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hopf {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot read " + path);
  return is;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError(where + ": not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw FormatError(where + ": trailing characters in '" + s + "'");
  return v;
}

}  // namespace

ProfileTable to_table(const SurfaceProfile& p) {
  ProfileTable t;
  for (const auto& q : p.nodes) t.theta.push_back(q.theta());
  t.r = p.r;
  t.r1 = p.r1;
  t.r2 = p.r2;
  t.s = p.s;
  return t;
}

void write_profile_csv(const std::string& path, const ProfileTable& t) {
  std::ofstream os = open_out(path);
  os << "theta,r,r1,r2,s\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << fmt17(t.theta[i]) << ',' << fmt17(t.r[i]) << ',' << fmt17(t.r1[i]) << ','
       << fmt17(t.r2[i]) << ',' << fmt17(t.s[i]) << '\n';
  if (!os) throw FormatError("write failed: " + path);
}

ProfileTable read_profile_csv(const std::string& path) {
  std::ifstream is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw FormatError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "theta,r,r1,r2,s") throw FormatError(path + ": expected header theta,r,r1,r2,s");
  ProfileTable t;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line);
    const std::string where = path + ":" + std::to_string(row);
    if (f.size() != 5) throw FormatError(where + ": expected 5 fields");
    t.theta.push_back(parse_double(f[0], where));
    t.r.push_back(parse_double(f[1], where));
    t.r1.push_back(parse_double(f[2], where));
    t.r2.push_back(parse_double(f[3], where));
    t.s.push_back(parse_double(f[4], where));
  }
  return t;
}

SurfaceProfile to_profile(const ProfileTable& t) {
  SurfaceProfile p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    p.nodes.push_back(EvalPoint::from_theta(t.theta[i]));
    if (i > 0 && !(t.theta[i] > t.theta[i - 1])) throw FormatError("profile theta must increase");
  }
  p.r = t.r;
  p.r1 = t.r1;
  p.r2 = t.r2;
  p.s = t.s;
  p.dr.assign(t.size(), std::nan(""));
  return p;
}

void write_coeffs(const std::string& path, const SpectralCoeffs& c) {
  std::ofstream os = open_out(path);
  os << fmt17(c.n) << ',' << c.M() << ',' << fmt17(c.C1) << ',' << fmt17(c.C2) << '\n';
  for (int m = 0; m <= c.M(); ++m) os << m << ',' << fmt17(c.gamma[static_cast<std::size_t>(m)]) << '\n';
  if (!os) throw FormatError("write failed: " + path);
}

SpectralCoeffs read_coeffs(const std::string& path) {
  std::ifstream is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw FormatError(path + ": empty file");
  auto h = split(line);
  if (h.size() != 4) throw FormatError(path + ": header must be n,M,C1,C2");
  SpectralCoeffs c;
  c.n = parse_double(h[0], path + ":1");
  double M = parse_double(h[1], path + ":1");
  if (M < 1 || M != std::floor(M)) throw FormatError(path + ": M must be a positive integer");
  c.C1 = parse_double(h[2], path + ":1");
  c.C2 = parse_double(h[3], path + ":1");
  c.gamma.assign(static_cast<std::size_t>(M) + 1, 0.0);
  std::vector<bool> seen(c.gamma.size(), false);
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line);
    const std::string where = path + ":" + std::to_string(row);
    if (f.size() != 2) throw FormatError(where + ": expected m,gamma");
    double m = parse_double(f[0], where);
    if (m < 0 || m > M || m != std::floor(m)) throw FormatError(where + ": mode index out of range");
    auto k = static_cast<std::size_t>(m);
    if (seen[k]) throw FormatError(where + ": duplicate mode");
    seen[k] = true;
    c.gamma[k] = parse_double(f[1], where);
  }
  for (bool s : seen)
    if (!s) throw FormatError(path + ": missing mode rows");
  c.validate();
  return c;
}

void write_obj(const std::string& path, const Mesh& mesh) {
  std::ofstream os = open_out(path);
  for (const auto& v : mesh.vertices)
    os << "v " << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!os) throw FormatError("write failed: " + path);
}

}  // namespace hopf
