#pragma once

#include <map>
#include <string>
#include <vector>

#include "tracefn/arith.hpp"
#include "tracefn/trace_function.hpp"

namespace tracefn {

enum class MeasureKind { sato_tate, uniform_interval, uniform_circle };

/// Reference measures for angle statistics. sato_tate and uniform_interval
/// live on [0, pi]; uniform_circle lives on [0, 2 pi).
class SpectralMeasure {
 public:
  static SpectralMeasure sato_tate() { return SpectralMeasure(MeasureKind::sato_tate); }
  static SpectralMeasure uniform_interval() { return SpectralMeasure(MeasureKind::uniform_interval); }
  static SpectralMeasure uniform_circle() { return SpectralMeasure(MeasureKind::uniform_circle); }

  MeasureKind kind() const { return kind_; }
  std::string name() const;
  double upper() const;  // pi or 2 pi
  double density(double theta) const;
  double cdf(double theta) const;
  /// int (2 cos theta)^{2l} d mu by adaptive Gauss-Kronrod.
  double moment(int l) const;
  /// mu([a, b]) by quadrature of the density.
  double mass(double a, double b) const;

 private:
  explicit SpectralMeasure(MeasureKind k) : kind_(k) {}
  MeasureKind kind_;
};

struct AngleSample {
  std::vector<double> angles;
  std::string family;
  u64 q_min = 0, q_max = 0;
  std::map<std::string, std::string> params;
};

enum class DomainKind { all, nonzero, squares, explicit_points };

struct AngleDomain {
  DomainKind kind = DomainKind::nonzero;
  std::vector<u64> points;  // used by explicit_points

  static AngleDomain all() { return {DomainKind::all, {}}; }
  static AngleDomain nonzero() { return {DomainKind::nonzero, {}}; }
  static AngleDomain squares() { return {DomainKind::squares, {}}; }
  static AngleDomain explicit_set(std::vector<u64> pts) { return {DomainKind::explicit_points, std::move(pts)}; }
};

/// Points of the domain, ascending (for squares: nonzero squares).
std::vector<u64> domain_points(const TraceFunction& k, const AngleDomain& d);

/// theta(x) = arccos(clamp(Re K(x) / 2)). Throws DomainViolation when
/// |Im K(x)| > 1e-6 or |K(x)| > 2 + 1e-6.
AngleSample extract_angles(const TraceFunction& k, const AngleDomain& d);

/// sup |F_n - F| over the sorted sample.
double ks_distance(const AngleSample& s, const SpectralMeasure& mu);

/// n draws by inverse-cdf sampling from a seeded mt19937_64.
AngleSample sample_measure(const SpectralMeasure& mu, std::size_t n, u64 seed);

/// U_k(x) by the three-term recurrence.
double chebyshev_u(int k, double x);

/// Mean of U_k(cos theta(x)) = sin((k+1) theta)/sin(theta) over the domain.
cplx weyl_sym_power(const TraceFunction& k, int sym, const AngleDomain& d);

/// Mean of (2 cos theta)^{2l}.
double angle_moment(const AngleSample& s, int l);

/// Arguments of eps_chi(1) in [0, 2 pi) for all nontrivial chi.
AngleSample gauss_angle_survey(const PrimeModulus& q);

enum class BirchMode { full, sampled };

struct BirchSurvey {
  AngleSample sample;
  u64 excluded = 0;           // pairs with 4a^3 + 27b^2 = 0 (full mode)
  u64 excluded_expected = 0;  // independent count of the discriminant locus
};

/// Full mode needs q <= 250; sampled mode draws 10^5 pairs.
BirchSurvey birch_vertical_survey(const PrimeModulus& q, BirchMode mode, u64 seed);

struct AlmostPrimeReport {
  u64 pairs = 0;
  double frac_prime_ge = 0.0;       // |Kl_2(p^-2; q)| >= 0.4
  double frac_product_ge = 0.0;     // |Kl_2(1; pq)| >= 0.16
  double predicted_prime_ge = 0.0;  // mu_ST(|2 cos| >= 0.4)
  u64 positive = 0, negative = 0;   // signs of Kl_2(1; pq)
  double max_consistency_error = 0.0;
};

/// Over ordered pairs p != q with p in [p_lo, p_hi], q in [q_lo, q_hi].
AlmostPrimeReport almost_prime_survey(u64 p_lo, u64 p_hi, u64 q_lo, u64 q_hi);

struct HorizontalRow {
  u64 q;
  double kl2;
  double theta;
};

struct HorizontalSurvey {
  std::vector<HorizontalRow> rows;
  double ks = 0.0;
  std::string status = "conjectural - report only";
};

/// theta_{q,a} for odd primes q <= X with a = 1.
HorizontalSurvey horizontal_survey(u64 X, i64 a = 1);

/// Sampler for the order-k Sato-Tate measure; only k = 2 (Haar measure on
/// SU(2) through random unit quaternions) is available.
AngleSample sato_tate_order_k_sample(int k, std::size_t n, u64 seed);

/// Catalan and central binomial numbers.
double catalan(int l);
double central_binomial(int l);

}  // namespace tracefn
