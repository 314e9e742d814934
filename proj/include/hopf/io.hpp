#pragma once

#include <string>
#include <vector>

#include "hopf/geometry.hpp"
#include "hopf/sturm.hpp"

namespace hopf {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits
std::string fmt17(double v);

// theta,r,r1,r2,s
struct ProfileTable {
  std::vector<double> theta, r, r1, r2, s;
  std::size_t size() const { return theta.size(); }
};
ProfileTable to_table(const SurfaceProfile& p);
void write_profile_csv(const std::string& path, const ProfileTable& t);
ProfileTable read_profile_csv(const std::string& path);
// Samples with finite-difference free fields; exact pole data are not available.
SurfaceProfile to_profile(const ProfileTable& t);

// First line n,M,C1,C2 then one m,gamma row per mode.
void write_coeffs(const std::string& path, const SpectralCoeffs& c);
SpectralCoeffs read_coeffs(const std::string& path);

void write_obj(const std::string& path, const Mesh& mesh);

}  // namespace hopf
