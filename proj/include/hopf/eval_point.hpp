#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hopf {

enum class Pole { north, south };

// A polar angle in (0, pi), stored as the distance to the nearer pole so that
// sin, cos and the half-angle quantities stay accurate right up to either pole.
class EvalPoint {
 public:
  static EvalPoint from_theta(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi))
      throw std::domain_error("EvalPoint: theta must lie in (0, pi)");
    if (theta <= 0.5 * std::numbers::pi) return EvalPoint(theta, false);
    return EvalPoint(std::numbers::pi - theta, true);
  }

  static EvalPoint near(Pole pole, double distance) {
    if (!(distance > 0.0 && distance < std::numbers::pi))
      throw std::domain_error("EvalPoint: pole distance must lie in (0, pi)");
    if (distance > 0.5 * std::numbers::pi)
      return EvalPoint(std::numbers::pi - distance, pole == Pole::north);
    return EvalPoint(distance, pole == Pole::south);
  }

  double theta() const { return south_ ? std::numbers::pi - dist_ : dist_; }
  double pole_distance() const { return dist_; }
  Pole nearest_pole() const { return south_ ? Pole::south : Pole::north; }
  double distance_to(Pole p) const {
    return (p == nearest_pole()) ? dist_ : std::numbers::pi - dist_;
  }

  double sin() const { return std::sin(dist_); }
  double cos() const { return south_ ? -std::cos(dist_) : std::cos(dist_); }
  double cot() const { return cos() / sin(); }

  // sin^2(theta/2) and cos^2(theta/2)
  double sin2_half() const {
    double h = south_ ? std::cos(0.5 * dist_) : std::sin(0.5 * dist_);
    return h * h;
  }
  double cos2_half() const {
    double h = south_ ? std::sin(0.5 * dist_) : std::cos(0.5 * dist_);
    return h * h;
  }
  // cot(theta/2)
  double cot_half() const {
    double t = std::tan(0.5 * dist_);
    return south_ ? t : 1.0 / t;
  }

  EvalPoint reflected() const { return EvalPoint(dist_, !south_); }

  // Point displaced by h in theta, keeping the pole-distance representation.
  EvalPoint shifted(double h) const {
    double d = south_ ? dist_ - h : dist_ + h;
    return near(south_ ? Pole::south : Pole::north, d);
  }

 private:
  EvalPoint(double d, bool south) : dist_(d), south_(south) {}
  double dist_;
  bool south_;
};

}  // namespace hopf
