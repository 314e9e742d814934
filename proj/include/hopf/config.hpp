#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopf/flow.hpp"

namespace hopf {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// hopf:   s = C0 sin^{2n+2}            (n defaults to the flow's n)
// sinpow: s = amp sin^m (bias + tilt cos)
// csv:    sampled support function in profile CSV format
struct SurfaceSpec {
  enum class Kind { hopf, sinpow, csv };
  Kind kind = Kind::sinpow;
  std::optional<double> n;
  double C0 = 1.0;
  double m = 5.0, amp = 1.0, tilt = 0.3, bias = 1.0;
  double C1 = 0.5, C2 = 0.1;
  std::string path;

  void set(const std::string& key, const std::string& value);
  std::string describe() const;
};
// "sinpow m=5 tilt=0.3 C1=0.5", "hopf C0=1", "csv path=profile.csv"
SurfaceSpec parse_surface(const std::string& text);

struct RunConfig {
  SurfaceSpec surface;
  std::optional<double> n, a;
  double b = 1.0, c = 1.0;
  double t_end = 1.0;
  std::vector<double> times;  // empty: 0, t_end/10, t_end/2, t_end
  int M = 40;
  FdSettings fd;
  std::size_t phi_count = 32;
  std::size_t theta_count = 64;     // mesh rings
  std::size_t profile_nodes = 400;  // output profile samples
  std::string out = "hopf_out";

  void set(const std::string& section, const std::string& key, const std::string& value);
  HopfParams params() const;
  std::vector<double> sample_times() const;
  FlowConfig flow() const;
  void validate() const;
};

RunConfig load_config(const std::string& path);

double parse_number(const std::string& text, const std::string& what);
std::vector<double> parse_list(const std::string& text, const std::string& what);

}  // namespace hopf
