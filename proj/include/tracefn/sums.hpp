#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracefn/arith.hpp"
#include "tracefn/smooth.hpp"
#include "tracefn/trace_function.hpp"

namespace tracefn {

// ---------------------------------------------------------------------------
// Interval sums and completion
// ---------------------------------------------------------------------------

/// sum_{a <= n <= b} K(n), inclusive, 0 <= a <= b < q.
cplx interval_sum(const TraceFunction& k, i64 a, i64 b);

struct ExtremalInterval {
  double max_abs = 0.0;
  u64 a = 0, b = 0;  // inclusive endpoints
  std::string method;
};

/// Exact max over all intervals of |S(K; I)|. The interval sums are the
/// differences P(b) - P(a-1) of the prefix path P, so the maximum is the
/// diameter of the prefix point set: convex hull plus rotating calipers.
ExtremalInterval pv_extremal_scan(const TraceFunction& k);

/// O(q^2) enumeration of every interval. Refuses q > 20000.
ExtremalInterval pv_extremal_bruteforce(const TraceFunction& k);

struct FkmrrsResult {
  double max_ratio = 0.0;
  u64 a = 0, b = 0;
  int samples = 0;
  u64 seed = 0;
};

/// max |S(K;I)| / (sqrt q (1 + log(|I|/sqrt q))) over seeded random
/// intervals with sqrt q < |I| <= q.
FkmrrsResult fkmrrs_scan(const TraceFunction& k, int samples, u64 seed);

/// sum_{N < n < 2N} K(n mod q) V(n/N).
cplx smoothed_sum(const TraceFunction& k, const SmoothBump& v, double N);

struct PoissonCheck {
  cplx lhs;
  cplx rhs;
  double delta = 0.0;
  i64 truncation = 0;
};

/// Compares the smoothed sum with (N / sqrt q) sum_{|h| <= H} K^(h) V^(hN/q),
/// where K^ = fourier(K, +1) and H = trunc_factor * q / N.
PoissonCheck poisson_dual_sum(const TraceFunction& k, const SmoothBump& v, double N,
                              double trunc_factor = 50.0);

/// q^{-1} sum_x K1(x) conj(K2(x)).
cplx correlation(const TraceFunction& k1, const TraceFunction& k2);

struct GammaFactor {
  Pgl2Element gamma;
  bool conjugated = false;
};

/// q^{-1} sum_x prod_i K(gamma_i x)^{(conj)} e_q(h x); a term with any
/// gamma_i x at infinity is dropped.
cplx multicorrelation(const TraceFunction& k, std::span<const GammaFactor> gammas, i64 h);

/// q^{-1} sum_x |K(x)|^{2l}, with |0|^0 = 1 so that the l = 0 moment is 1.
double moment(const TraceFunction& k, int l);

/// sum_{r != 0} prod_i K(l_i^{-1} r).
cplx dilated_product_sum(const TraceFunction& k, std::span<const i64> ls);

// ---------------------------------------------------------------------------
// Bilinear forms, primes, divisor problems
// ---------------------------------------------------------------------------

struct CoefficientSequence {
  i64 offset = 1;
  std::vector<cplx> values;  // alpha_m for m = offset .. offset + len - 1
};

/// Validates |alpha_m| <= 1 + 1e-12 and offset >= 1.
CoefficientSequence make_coefficients(i64 offset, std::vector<cplx> values);
/// Seeded +-1 coefficients of the given length.
CoefficientSequence random_sign_coefficients(i64 offset, std::size_t length, u64 seed);

struct BilinearResult {
  cplx value;
  double bound_ratio = 0.0;
};

BilinearResult bilinear_form(const TraceFunction& k, const CoefficientSequence& alpha,
                             const CoefficientSequence& beta);

/// sum_{p <= X} K(p), or sum_p K(p) V(p/X) when v is given (needs 2X <= limit).
cplx prime_sum(const TraceFunction& k, u64 X, const ArithmeticTables& tables,
               const SmoothBump* v = nullptr);

struct HeathBrownCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double delta = 0.0;
};

/// Right-hand side of the Heath-Brown identity for every n in [1, limit).
/// Index 0 is unused.
std::vector<double> heath_brown_table(int J, u64 X, u64 limit);
/// Largest m with m^J <= X.
u64 heath_brown_cutoff(int J, u64 X);
HeathBrownCheck heath_brown_check(u64 n, int J, u64 X, const ArithmeticTables& tables);

struct DiscrepancyReport {
  int k = 2;
  u64 X = 0, q = 0, a = 0;
  double progression_sum = 0.0;  // sum over n <= X, n = a mod q
  double coprime_sum = 0.0;      // sum over n <= X, (n, q) = 1
  u64 phi_q = 0;
  double discrepancy = 0.0;
  double scale = 0.0;  // X/q
  double ratio = 0.0;  // |E| / ((X/q) / log X)
};

DiscrepancyReport divisor_in_ap(int k, u64 X, u64 q, i64 a, const ArithmeticTables& tables);

/// sum over n_1..n_d of K(a n_1 ... n_d) prod V(n_i/N_i), d in {2, 3}.
cplx smoothed_product_sum(const TraceFunction& k, int dims, i64 a, std::span<const double> Ns,
                          const SmoothBump& v);
/// The d = 2 sum with the inner variable dualised by Poisson summation.
cplx smoothed_product_sum_dual(const TraceFunction& k, i64 a, double N1, double N2, const SmoothBump& v,
                               double trunc_factor = 50.0);

struct VdcResult {
  cplx value;
  double bound_ratio = 0.0;    // |S| / (N^{1/2} (p + q^{1/2})^{1/2})
  double optimal_ratio = 0.0;  // |S| / (N^{1/2} (pq)^{1/6})
};

VdcResult vdc_sum(const TraceFunction& kp, const TraceFunction& kq, double N, const SmoothBump& v);

// ---------------------------------------------------------------------------
// Shift sums
// ---------------------------------------------------------------------------

struct ShiftTuple {
  int l = 0;
  i64 lo = 0, hi = 0;  // declared box [lo, hi)
  std::vector<i64> b;  // length 2l
};

/// Entries in [B, 2B).
ShiftTuple make_shift_tuple(std::vector<i64> b, i64 B);
/// Entries in an arbitrary box [lo, hi).
ShiftTuple make_shift_tuple_in_box(std::vector<i64> b, i64 lo, i64 hi);

/// sum_r chi_m(F_b(r)) with F_b = prod (X + b_i) / prod (X + b_{l+i});
/// any vanishing factor kills the term.
cplx burgess_complete_sum(const PrimeModulus& q, u64 char_index, const ShiftTuple& b);

/// The same sum for every character index m = 0..q-2 at once: a histogram of
/// ind_g F_b(r) followed by one length q-1 transform. Entry 0 counts the r
/// where F_b(r) is a unit.
std::vector<cplx> burgess_complete_sums(const PrimeModulus& q, const ShiftTuple& b);

/// gcd of the net exponents of F_b over the distinct shifts (0 when F_b = 1).
u64 burgess_exponent_gcd(const PrimeModulus& q, const ShiftTuple& b);

struct TupleClassification {
  bool bad = false;
  bool multiset_equal = false;
  u64 character_order = 0;
};

/// Bad when every net exponent of F_b is divisible by the order of chi_m.
TupleClassification classify_tuple(const PrimeModulus& q, u64 char_index, const ShiftTuple& b);

struct ShiftSums {
  cplx K;  // prod_{i <= l} K(r + b_i) conj(K(r + b_{i+l}))
  cplx R;  // sum_s prod_{i <= l} K(s(r + b_i)) conj(K(s(r + b_{i+l})))
};

ShiftSums shift_sums(const TraceFunction& k, i64 r, const ShiftTuple& b);

struct ShiftKloostermanCandidates {
  bool defined = false;  // all r + b_i invertible and A, B nonzero
  u64 A = 0, B = 0;
  cplx R;
  cplx product_form;   // sqrt q Kl_2(A B)
  cplx quotient_form;  // sqrt q Kl_2(A / B)
  double delta_product = 0.0;
  double delta_quotient = 0.0;
};

/// For K = e_q(x^-1 + x): R(r, b) against both closed-form candidates.
ShiftKloostermanCandidates shift_kloosterman_candidates(const PrimeModulus& q, i64 r, const ShiftTuple& b);

/// b_1..b_l is not a rearrangement of b_{l+1}..b_{2l} and sum (b_i - b_{i+l}) != 0.
bool shift_tuple_generic(const ShiftTuple& b);

/// sum_r |R(r,b)|^2 - q sum_r |K(r,b)|^2.
double type2_complete_sum(const TraceFunction& k, const ShiftTuple& b);

struct AbShiftResult {
  cplx value;
  double bound = 0.0;
  double ratio = 0.0;
};

/// sum_m alpha_m sum_n V(n/N) K(m n); bound = C q^gamma M N (N^2 M / q^{1+1/l})^{-1/(2l)}.
AbShiftResult ab_shift_sum(const TraceFunction& k, const CoefficientSequence& alpha, double N,
                           const SmoothBump& v, int l = 2, double gamma = 0.0, double C = 1.0);

// ---------------------------------------------------------------------------
// Kloosterman fourth moment
// ---------------------------------------------------------------------------

/// #{x in (F_q^x)^4 : x1 + x2 = x3 + x4, 1/x1 + 1/x2 = 1/x3 + 1/x4}, O(q^2).
u64 kloosterman_energy(u64 q);
/// sum_{a != 0} |S(a, 1; q)|^4 from the energy count, exact.
u64 kloosterman_fourth_moment_exact(u64 q);
/// 2q^3 - 3q^2 - 3q - 1.
u64 kloosterman_fourth_moment_closed_form(u64 q);

}  // namespace tracefn
