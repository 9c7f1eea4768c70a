#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tracefn {

using cplx = std::complex<double>;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Error taxonomy. The CLI maps CapacityError to its own exit code; the rest
// are contract violations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// exp(2*pi*i*num/den) with the numerator reduced first, so large
/// numerators do not lose phase accuracy.
inline cplx unit_root(i64 num, i64 den) {
  i64 r = num % den;
  if (r < 0) r += den;
  const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace tracefn
