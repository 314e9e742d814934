#pragma once

#include <cstddef>
#include <vector>

#include "hopf/eval_point.hpp"

namespace hopf {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

GaussRule gauss_legendre(std::size_t points);

struct QuadNode {
  EvalPoint pt;
  double weight;
};

struct ThetaGridOptions {
  std::size_t panels = 64;  // uniform panels over (0, pi), even
  std::size_t points = 16;  // Gauss points per panel
  std::size_t grading_levels = 100;
  double grading_ratio = 0.25;
};

// Composite Gauss-Legendre rule on (0, pi) with geometric grading of the two
// end panels.  Symmetric under theta -> pi - theta.
class ThetaGrid {
 public:
  explicit ThetaGrid(const ThetaGridOptions& opt = {});

  const std::vector<QuadNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const ThetaGridOptions& options() const { return opt_; }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (const auto& q : nodes_) sum += q.weight * f(q.pt);
    return sum;
  }

 private:
  ThetaGridOptions opt_;
  std::vector<QuadNode> nodes_;
};

// Nodes of a graded rule for the integral over pole distances (0, distance).
std::vector<QuadNode> pole_rule(Pole pole, double distance, std::size_t levels = 60,
                                std::size_t points = 12);

// Rule for pole distances in [lo, hi], lo > 0, with panels graded toward lo.
std::vector<QuadNode> shell_rule(Pole pole, double lo, double hi, std::size_t points = 12);

template <class F>
double integrate_from_pole(F&& f, Pole pole, double distance) {
  double sum = 0.0;
  for (const auto& q : pole_rule(pole, distance)) sum += q.weight * f(q.pt);
  return sum;
}

// theta_k = (k + 1/2) pi / count
std::vector<EvalPoint> midpoint_nodes(std::size_t count);

// theta_i = eps + i h, i = 0 .. count-1, h = (pi - 2 eps) / (count - 1)
std::vector<EvalPoint> interval_nodes(double eps, std::size_t count);

}  // namespace hopf
