#include <cmath>
#include <string>

#include "tracefn/arith.hpp"

namespace tracefn {

double ArithmeticTables::lambda(u64 n) const {
  const u32 p = lambda_base_.at(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

ArithmeticTables sieve_tables(u64 X) {
  if (X < 2 || X > ArithmeticTables::kMaxLimit) {
    throw CapacityError("sieve limit " + std::to_string(X) + " outside [2, " +
                        std::to_string(ArithmeticTables::kMaxLimit) + "]");
  }
  ArithmeticTables t;
  t.limit_ = X;
  const std::size_t n = X + 1;
  t.spf_.assign(n, 0);
  t.mu_.assign(n, 0);
  t.lambda_base_.assign(n, 0);
  t.d2_.assign(n, 0);
  t.d3_.assign(n, 0);

  // prime_power[m] = p^e, the full power of spf(m) dividing m.
  std::vector<u32> prime_power(n, 0);
  std::vector<uint8_t> exponent(n, 0);

  t.spf_[1] = 1;
  t.mu_[1] = 1;
  for (u64 i = 2; i <= X; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<u32>(i);
      t.primes_.push_back(static_cast<u32>(i));
      t.mu_[i] = -1;
      prime_power[i] = static_cast<u32>(i);
      exponent[i] = 1;
    }
    for (u32 p : t.primes_) {
      if (p > t.spf_[i] || i * p > X) break;
      const u64 m = i * p;
      t.spf_[m] = p;
      if (p == t.spf_[i]) {
        t.mu_[m] = 0;
        prime_power[m] = prime_power[i] * p;
        exponent[m] = static_cast<uint8_t>(exponent[i] + 1);
      } else {
        t.mu_[m] = static_cast<int8_t>(-t.mu_[i]);
        prime_power[m] = p;
        exponent[m] = 1;
      }
    }
  }

  t.d2_[1] = 1;
  t.d3_[1] = 1;
  for (u64 m = 2; m <= X; ++m) {
    const u32 e = exponent[m];
    const u32 pk = prime_power[m];
    if (pk == m) {
      t.lambda_base_[m] = t.spf_[m];
      t.d2_[m] = e + 1;
      t.d3_[m] = (e + 1) * (e + 2) / 2;
    } else {
      const u64 rest = m / pk;
      t.d2_[m] = t.d2_[rest] * (e + 1);
      t.d3_[m] = t.d3_[rest] * ((e + 1) * (e + 2) / 2);
    }
  }
  return t;
}

}  // namespace tracefn
