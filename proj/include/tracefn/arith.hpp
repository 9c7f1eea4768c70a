#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tracefn/common.hpp"

namespace tracefn {

// ---------------------------------------------------------------------------
// Integer helpers. Moduli stay below 2^63; products go through 128 bits.
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if ((a | b) >> 32 == 0) return a * b % m;
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Representative of a in [0, m).
inline u64 reduce(i64 a, u64 m) {
  const i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<u64> inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Prime factorisation by trial division, primes ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);

bool is_squarefree(u64 n);

// ---------------------------------------------------------------------------
// PrimeModulus
// ---------------------------------------------------------------------------

/// A prime q with its least primitive root g and full discrete-log and
/// power tables. Immutable; copies share the tables.
class PrimeModulus {
 public:
  /// Largest modulus for which the O(q) tables are built.
  static constexpr u64 kMaxTableModulus = 100'000'000;

  explicit PrimeModulus(u64 q);

  u64 q() const { return q_; }
  u64 generator() const { return g_; }
  u64 group_order() const { return q_ - 1; }

  /// Index of x base g, for x in 1..q-1 (x is reduced mod q first).
  u32 dlog(u64 x) const;
  /// g^i mod q for any i (reduced mod q-1).
  u64 power(u64 i) const { return pow_[i % (q_ - 1)]; }
  u64 inverse(u64 x) const;

  std::span<const u32> dlog_table() const { return {dlog_, q_}; }
  std::span<const u32> power_table() const { return {pow_, q_ - 1}; }

  /// exp(2*pi*i*j/q); table entries are computed lazily on first use.
  cplx e_q(i64 j) const { return e_table()[reduce(j, q_)]; }
  std::span<const cplx> e_table() const;

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) { return a.q() == b.q(); }

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
  // Cached views into *d_.
  u64 q_ = 0, g_ = 0;
  const u32* dlog_ = nullptr;
  const u32* pow_ = nullptr;
};

PrimeModulus make_prime_modulus(u64 q);

/// Legendre symbol (a/q) from the parity of the discrete log.
int legendre(i64 a, const PrimeModulus& q);

// ---------------------------------------------------------------------------
// CompositeModulus
// ---------------------------------------------------------------------------

struct CompositeModulus {
  u64 c = 0;
  std::vector<u64> factors;            // distinct primes, ascending
  std::vector<u64> cofactor_inverses;  // (c/p)^{-1} mod p, aligned with factors
};

/// Odd squarefree c >= 3.
CompositeModulus make_composite_modulus(u64 c);

// ---------------------------------------------------------------------------
// ArithmeticTables
// ---------------------------------------------------------------------------

/// Sieved arithmetic functions on 1..X. Index 0 is unused.
class ArithmeticTables {
 public:
  static constexpr u64 kMaxLimit = 100'000'000;

  u64 limit() const { return limit_; }
  const std::vector<u32>& primes() const { return primes_; }

  int mu(u64 n) const { return mu_.at(n); }
  /// log p when n = p^k, else 0.
  double lambda(u64 n) const;
  u32 d2(u64 n) const { return d2_.at(n); }
  u32 d3(u64 n) const { return d3_.at(n); }
  /// Smallest prime factor (1 for n = 1).
  u32 spf(u64 n) const { return spf_.at(n); }
  bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

  friend ArithmeticTables sieve_tables(u64 X);

 private:
  u64 limit_ = 0;
  std::vector<u32> primes_;
  std::vector<int8_t> mu_;
  std::vector<u32> lambda_base_;  // p when n = p^k, else 0
  std::vector<u32> spf_;
  std::vector<u32> d2_;
  std::vector<u32> d3_;
};

/// Linear sieve for primes, Moebius, von Mangoldt, d2 and d3 up to X.
ArithmeticTables sieve_tables(u64 X);

// ---------------------------------------------------------------------------
// RationalFunctionModQ
// ---------------------------------------------------------------------------

/// Polynomials mod q, coefficients lowest degree first, no trailing zeros.
using PolyModQ = std::vector<u64>;

/// f = numerator / denominator over F_q, stored in lowest terms with a
/// monic denominator. Evaluation at a pole yields nullopt.
class RationalFunctionModQ {
 public:
  RationalFunctionModQ(u64 q, std::vector<i64> numerator, std::vector<i64> denominator = {1});

  static RationalFunctionModQ polynomial(u64 q, std::vector<i64> coeffs) {
    return RationalFunctionModQ(q, std::move(coeffs));
  }
  static RationalFunctionModQ identity(u64 q) { return RationalFunctionModQ(q, {0, 1}); }
  static RationalFunctionModQ constant(u64 q, i64 c) { return RationalFunctionModQ(q, {c}); }

  u64 modulus() const { return q_; }
  const PolyModQ& numerator() const { return num_; }
  const PolyModQ& denominator() const { return den_; }
  int numerator_degree() const { return static_cast<int>(num_.size()) - 1; }
  int denominator_degree() const { return static_cast<int>(den_.size()) - 1; }

  bool is_constant() const { return den_.size() == 1 && num_.size() <= 1; }
  bool is_polynomial() const { return den_.size() == 1; }

  std::optional<u64> operator()(u64 x) const;

  /// Distinct poles on P^1 (over the algebraic closure) and their total
  /// multiplicity, including the point at infinity.
  int distinct_poles() const;
  int pole_multiplicity() const;

 private:
  u64 q_;
  PolyModQ num_;
  PolyModQ den_;
};

namespace poly {
PolyModQ normalize(std::vector<i64> coeffs, u64 q);
u64 eval(const PolyModQ& p, u64 x, u64 q);
PolyModQ derivative(const PolyModQ& p, u64 q);
/// Monic gcd; empty when both inputs are zero.
PolyModQ gcd(PolyModQ a, PolyModQ b, u64 q);
/// Quotient of exact division a / b.
PolyModQ divide_exact(const PolyModQ& a, const PolyModQ& b, u64 q);
}  // namespace poly

}  // namespace tracefn
