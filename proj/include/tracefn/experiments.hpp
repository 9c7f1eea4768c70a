#pragma once

#include <span>
#include <string>
#include <vector>

#include "tracefn/arith.hpp"
#include "tracefn/satotate.hpp"
#include "tracefn/smooth.hpp"
#include "tracefn/trace_function.hpp"

// Measurement routines shared by the command line tool, the calibration
// run and the acceptance suite. Each returns the raw statistic; callers
// compare against tolerances or frozen thresholds.
namespace tracefn::experiments {

/// Seeded random function with entries in the unit square.
TraceFunction random_function(const PrimeModulus& q, u64 seed);

/// Named single-parameter families over F_q used throughout:
/// kl2, kl3, legendre, inverse_phase (e_q(1/x)), kloosterman_phase
/// (e_q(1/x + x)), quadratic_phase (e_q(x^2)), salie_real, birch_t1
/// (a = T, b = 1).
TraceFunction named_family(const std::string& name, const PrimeModulus& q);
std::vector<std::string> family_names();

/// Angles of birch_t1 at every t with 4t^3 + 27 != 0.
AngleSample birch_family_angles(const PrimeModulus& q);

// ---- exact identities: each returns the largest absolute deviation -------

/// Additive and multiplicative character Gram matrices against q and q-1.
double orthogonality_delta(const PrimeModulus& q);

struct GaussDeltas {
  double modulus = 0.0;  // max | |eps_chi(1)| - 1 |
  double twist = 0.0;    // max |eps_chi(a) - conj(chi(a)) eps_chi(1)|
};
/// The twist is checked at every a when samples <= 0 or samples >= q - 1,
/// otherwise at a = 1, a = -1, a = g and a seeded set of the given size.
GaussDeltas gauss_deltas(const PrimeModulus& q, int samples = 0, u64 seed = 0);

struct FourierDeltas {
  double involution = 0.0;  // F F K (x) vs K(-x), sign -1
  double plancherel = 0.0;
};
FourierDeltas fourier_deltas(const PrimeModulus& q, u64 seed, int count);

/// psi * psi against brute-force Kl_2 at every a.
double convolution_kl2_delta(const PrimeModulus& q);
/// hyper_kloosterman_all against kloosterman_direct at every a.
double hyper_direct_delta(const PrimeModulus& q, int k);

struct TwistedSweep {
  double delta = 0.0;
  u64 moduli = 0;
  u64 worst_c = 0;
};
/// Direct vs factored Kl_2(a; c) for all odd squarefree 3 <= c <= c_max.
TwistedSweep twisted_multiplicativity_sweep(u64 c_max, std::span<const i64> as);

/// Voronoi of the Dirac mass at a against q^{-1/2} Kl_2(a n; q); n = 0 uses -1/q.
double voronoi_dirac_delta(const PrimeModulus& q, i64 a);

/// max over n < 2X of |Lambda(n) - Heath-Brown right side|.
double heath_brown_delta(int J, u64 X);

/// Poisson identity at N = q/20 and q/5 for the listed families.
double poisson_delta(const PrimeModulus& q, std::span<const std::string> families, const SmoothBump& v);

// ---- bounds and ratios ---------------------------------------------------

double sup_abs(const TraceFunction& k);
/// max / (sqrt q log q) from the exact interval scan.
double pv_ratio(const TraceFunction& k);
/// max over a != 1 of sqrt q |C([x a]* Kl_2, Kl_2)|.
double quasi_orthogonality_scaled(const PrimeModulus& q);

struct KhanNgo {
  double unpaired_max_scaled = 0.0;  // max |sum| / sqrt q
  double paired_min_scaled = 0.0;    // min sum / q
  u64 unpaired = 0, paired = 0;
};
/// All (l_1..l_4) in [1, L]^4 with L < q.
KhanNgo khan_ngo(const PrimeModulus& q, i64 L);

struct VdcPoint {
  u64 p = 0, q = 0;
  double N = 0.0;
  double bound_ratio = 0.0;
  double optimal_ratio = 0.0;
};
/// Kp(x) = Kl_2(x q^-2; p), Kq(x) = Kl_2(x p^-2; q), N = floor((pq)^{2/3}).
VdcPoint vdc_point(u64 p, u64 q, const SmoothBump& v);
/// Primes p in [5, 43] with q = nextprime(p^2) and pq <= c_max, plus (31, 1009).
std::vector<std::pair<u64, u64>> vdc_grid(u64 c_max);

struct BurgessSweep {
  u64 tuples = 0;
  u64 bad = 0, good = 0;  // (tuple, character) pairs
  double max_good_scaled = 0.0;  // max over good tuples of |sum| / sqrt q
  double max_bad_scaled = 0.0;
  u64 good_over_bound = 0;       // good pairs above (2l-1) sqrt q
};
/// Every tuple in [lo, hi)^{2l} for each listed character index.
BurgessSweep burgess_sweep(const PrimeModulus& q, int l, i64 lo, i64 hi, std::span<const u64> chars);

struct Type2Sweep {
  u64 tuples = 0;
  double max_scaled = 0.0;  // max |type II sum| / q^{3/2} over generic tuples
};
Type2Sweep type2_sweep(const TraceFunction& k, int l, i64 B);

struct ShiftCaseReport {
  u64 evaluated = 0;
  double max_delta_product = 0.0;
  double min_delta_quotient = 0.0;
  u64 quotient_matches = 0;  // cases with delta_quotient <= 1e-8
};
/// Compares R(r,b) against both closed forms over all r for a tuple set;
/// each tuple is boxed by its own range.
ShiftCaseReport shift_case_report(const PrimeModulus& q, const std::vector<std::vector<i64>>& tuples);

/// |sum_{p <= X} K(p)| / pi(X) with X = q.
double prime_sum_ratio(const TraceFunction& k);

}  // namespace tracefn::experiments
