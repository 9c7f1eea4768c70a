#include "tracefn/smooth.hpp"

#include <cmath>

#include "tracefn/parallel.hpp"

namespace tracefn {

SmoothBump::SmoothBump(int panels) : panels_(panels) {
  if (panels < 8) throw InvalidArgument("SmoothBump: need at least 8 panels");
  const double h = 1.0 / panels;
  for (int i = 1; i < panels; ++i) {
    const double x = 1.0 + i * h;
    nodes_.push_back(x);
    weights_.push_back(h * value(x));
  }
  integral_ = pairwise_sum(std::span<const double>(weights_));
}

double SmoothBump::value(double x) {
  if (x <= 1.0 || x >= 2.0) return 0.0;
  return std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
}

cplx SmoothBump::fourier(double t) const {
  if (t == 0.0) return integral_;
  std::vector<cplx> terms(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double a = kTwoPi * nodes_[i] * t;
    terms[i] = weights_[i] * cplx{std::cos(a), -std::sin(a)};
  }
  return pairwise_sum(std::span<const cplx>(terms));
}

}  // namespace tracefn
