#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracefn/arith.hpp"
#include "tracefn/common.hpp"

namespace tracefn {

struct TraceMeta {
  std::string family;
  std::map<std::string, std::string> params;
  bool real_valued = false;
  /// Bound on max |K(x)| claimed by theory; enforced at construction.
  std::optional<double> sup_norm;
  /// Integer complexity standing in for the conductor of the underlying sheaf.
  int conductor = 0;
  std::string description;
};

/// Dense table of a q-periodic function, indexed 0..q-1.
///
/// Construction checks the declared metadata: a real_valued function must
/// have |Im K(x)| <= 1e-9 everywhere and a declared sup_norm must hold up
/// to 1e-9. Violations throw DomainViolation.
class TraceFunction {
 public:
  static constexpr double kRealTolerance = 1e-9;
  static constexpr double kSupTolerance = 1e-9;

  TraceFunction(PrimeModulus field, std::vector<cplx> values, TraceMeta meta);
  /// Function on Z/mZ for arbitrary m (used for composite moduli).
  TraceFunction(u64 modulus, std::vector<cplx> values, TraceMeta meta);

  u64 modulus() const { return modulus_; }
  bool has_field() const { return field_.has_value(); }
  /// The prime field; throws InvalidArgument for composite-modulus functions.
  const PrimeModulus& field() const;

  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const cplx& operator[](u64 x) const { return values_[x]; }
  /// Value at the class of n (any integer).
  cplx at(i64 n) const { return values_[reduce(n, modulus_)]; }

  const TraceMeta& meta() const { return meta_; }

 private:
  void validate() const;

  u64 modulus_;
  std::optional<PrimeModulus> field_;
  std::vector<cplx> values_;
  TraceMeta meta_;
};

// ---------------------------------------------------------------------------
// PGL_2 action by fractional linear transformations.
// ---------------------------------------------------------------------------

class Pgl2Element {
 public:
  /// [[a, b], [c, d]] mod q with nonzero determinant; stored with the first
  /// nonzero entry (in a, b, c, d order) scaled to 1.
  Pgl2Element(u64 q, i64 a, i64 b, i64 c, i64 d);

  static Pgl2Element identity(u64 q) { return {q, 1, 0, 0, 1}; }
  static Pgl2Element translation(u64 q, i64 b) { return {q, 1, b, 0, 1}; }
  static Pgl2Element dilation(u64 q, i64 a) { return {q, a, 0, 0, 1}; }
  static Pgl2Element inversion(u64 q) { return {q, 0, 1, 1, 0}; }

  u64 modulus() const { return q_; }
  u64 a() const { return a_; }
  u64 b() const { return b_; }
  u64 c() const { return c_; }
  u64 d() const { return d_; }

  /// (a x + b) / (c x + d), or nullopt when x is sent to infinity.
  std::optional<u64> apply(u64 x) const;

  /// Matrix product; (g * h).apply(x) == g.apply(h.apply(x)) away from infinity.
  Pgl2Element operator*(const Pgl2Element& other) const;

  friend bool operator==(const Pgl2Element&, const Pgl2Element&) = default;

 private:
  u64 q_, a_, b_, c_, d_;
};

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

TraceFunction constant_function(const PrimeModulus& q, cplx value = 1.0);
TraceFunction dirac(const PrimeModulus& q, i64 a);

/// x -> e_q(f(x)), zero at the poles of f.
TraceFunction additive_phase(const PrimeModulus& q, const RationalFunctionModQ& f);

/// x -> chi_m(f(x)) with chi_m(g^j) = exp(2 pi i m j / (q-1)); zero where
/// f(x) is 0 or a pole.
TraceFunction mult_phase(const PrimeModulus& q, u64 char_index, const RationalFunctionModQ& f);

/// Legendre symbol as the order-two Kummer function.
TraceFunction legendre_character(const PrimeModulus& q);

/// x -> e_q(u/x + v x), zero at x = 0.
TraceFunction kloosterman_phase(const PrimeModulus& q, i64 u = 1, i64 v = 1);

/// Brute-force hyper-Kloosterman sum Kl_k(a; q), cost q^(k-1).
cplx kloosterman_direct(const PrimeModulus& q, int k, i64 a);

/// q^{-1/2} sum_{xy = a} (x/q) e_q(x + y).
cplx salie(const PrimeModulus& q, i64 a);

/// All Salie sums, zero at a = 0. Real when q = 1 mod 4, purely imaginary
/// when q = 3 mod 4.
TraceFunction salie_family(const PrimeModulus& q);

/// Salie sums rotated onto the real line: divided by i when q = 3 mod 4.
/// This is the normalisation used for Salie angles.
TraceFunction salie_real_family(const PrimeModulus& q);

/// -q^{-1/2} sum_x ((x^3 + a x + b)/q), i.e. a_q / sqrt(q) for y^2 = x^3 + a x + b.
double birch_value(const PrimeModulus& q, i64 a, i64 b);

/// t -> birch_value(a(t), b(t)), zero where 4a(t)^3 + 27b(t)^2 = 0.
TraceFunction birch_family(const PrimeModulus& q, const RationalFunctionModQ& a_poly,
                           const RationalFunctionModQ& b_poly);

// Pointwise algebra.
TraceFunction pullback(const TraceFunction& k, const Pgl2Element& gamma);
/// x -> K(a x).
TraceFunction dilate(const TraceFunction& k, i64 a);
TraceFunction product(const TraceFunction& k1, const TraceFunction& k2);
TraceFunction conjugate(const TraceFunction& k);
TraceFunction scale(const TraceFunction& k, cplx s);

// ---------------------------------------------------------------------------
// Kloosterman sums to squarefree composite moduli.
// ---------------------------------------------------------------------------

struct CompositeKloosterman {
  cplx direct;       // c^{-1/2} sum_{x in (Z/c)^x} e((x^-1 + a x)/c)
  cplx via_factors;  // prod_p Kl_2(a (c/p)^{-2}; p)
};

CompositeKloosterman composite_kloosterman(const CompositeModulus& c, i64 a);

/// Direct evaluation only; used by sweeps that already trust the product form.
cplx composite_kloosterman_direct(const CompositeModulus& c, i64 a);
/// Product over prime factors using Kl_2 on each factor, computed directly.
cplx composite_kloosterman_factored(const CompositeModulus& c, i64 a);

// ---------------------------------------------------------------------------
// Binary container "TFN1".
// ---------------------------------------------------------------------------

void write_tfn(std::ostream& out, const TraceFunction& k);
TraceFunction read_tfn(std::istream& in);

}  // namespace tracefn
