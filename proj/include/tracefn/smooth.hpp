#pragma once

#include <vector>

#include "tracefn/common.hpp"

namespace tracefn {

/// V(x) = exp(-1/((x-1)(2-x))) on (1,2), zero elsewhere, with its Fourier
/// transform V^(t) = int V(x) e(-x t) dx evaluated by the trapezoid rule.
/// V is smooth and vanishes to all orders at both ends, so the rule
/// converges geometrically; 1024 panels reach double precision for |t| <= 50.
class SmoothBump {
 public:
  static constexpr int kDefaultPanels = 1024;

  explicit SmoothBump(int panels = kDefaultPanels);

  static double value(double x);
  double operator()(double x) const { return value(x); }

  /// V^(t) = int V(x) e(-x t) dx.
  cplx fourier(double t) const;
  /// V^(0) = int V.
  double integral() const { return integral_; }
  int panels() const { return panels_; }

 private:
  int panels_;
  std::vector<double> nodes_;
  std::vector<double> weights_;  // h * V(node)
  double integral_ = 0.0;
};

}  // namespace tracefn
