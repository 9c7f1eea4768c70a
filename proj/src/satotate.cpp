#include "tracefn/satotate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tracefn/parallel.hpp"
#include "tracefn/random.hpp"
#include "tracefn/transforms.hpp"

namespace tracefn {

namespace {
constexpr double kPi = std::numbers::pi;

double integrate(const auto& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}
}  // namespace

std::string SpectralMeasure::name() const {
  switch (kind_) {
    case MeasureKind::sato_tate: return "sato_tate";
    case MeasureKind::uniform_interval: return "uniform_interval";
    case MeasureKind::uniform_circle: return "uniform_circle";
  }
  return "?";
}

double SpectralMeasure::upper() const { return kind_ == MeasureKind::uniform_circle ? 2 * kPi : kPi; }

double SpectralMeasure::density(double t) const {
  if (t < 0 || t > upper()) return 0.0;
  switch (kind_) {
    case MeasureKind::sato_tate: {
      const double s = std::sin(t);
      return 2.0 / kPi * s * s;
    }
    case MeasureKind::uniform_interval: return 1.0 / kPi;
    case MeasureKind::uniform_circle: return 1.0 / (2 * kPi);
  }
  return 0.0;
}

double SpectralMeasure::cdf(double t) const {
  if (t <= 0) return 0.0;
  if (t >= upper()) return 1.0;
  switch (kind_) {
    case MeasureKind::sato_tate: return (t - std::sin(t) * std::cos(t)) / kPi;
    case MeasureKind::uniform_interval: return t / kPi;
    case MeasureKind::uniform_circle: return t / (2 * kPi);
  }
  return 0.0;
}

double SpectralMeasure::moment(int l) const {
  if (l < 0) throw InvalidArgument("moment order must be >= 0");
  return integrate([&](double t) { return std::pow(2 * std::cos(t), 2 * l) * density(t); }, 0.0, upper());
}

double SpectralMeasure::mass(double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, upper());
  if (b <= a) return 0.0;
  return integrate([&](double t) { return density(t); }, a, b);
}

double catalan(int l) {
  double c = 1.0;
  for (int i = 0; i < l; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

double central_binomial(int l) {
  double c = 1.0;
  for (int i = 0; i < l; ++i) c = c * 2 * (2 * i + 1) / (i + 1);
  return c;
}

// ---------------------------------------------------------------------------

std::vector<u64> domain_points(const TraceFunction& k, const AngleDomain& d) {
  std::vector<u64> pts;
  const u64 q = k.modulus();
  switch (d.kind) {
    case DomainKind::all:
      for (u64 x = 0; x < q; ++x) pts.push_back(x);
      break;
    case DomainKind::nonzero:
      for (u64 x = 1; x < q; ++x) pts.push_back(x);
      break;
    case DomainKind::squares: {
      const auto& f = k.field();
      for (u64 x = 1; x < q; ++x)
        if (f.dlog(x) % 2 == 0) pts.push_back(x);
      break;
    }
    case DomainKind::explicit_points:
      for (u64 x : d.points) {
        if (x >= q) throw InvalidArgument("angle domain point " + std::to_string(x) + " outside [0, q)");
        pts.push_back(x);
      }
      break;
  }
  return pts;
}

namespace {

double angle_of(const TraceFunction& k, u64 x) {
  const cplx v = k[x];
  if (std::abs(v.imag()) > 1e-6 || std::abs(v) > 2.0 + 1e-6) {
    std::ostringstream os;
    os << k.meta().family << ": value " << v << " at x=" << x << " is not real of modulus <= 2";
    throw DomainViolation(os.str());
  }
  return std::acos(std::clamp(v.real() / 2.0, -1.0, 1.0));
}

}  // namespace

AngleSample extract_angles(const TraceFunction& k, const AngleDomain& d) {
  AngleSample s;
  s.family = k.meta().family;
  s.q_min = s.q_max = k.modulus();
  s.params = k.meta().params;
  for (u64 x : domain_points(k, d)) s.angles.push_back(angle_of(k, x));
  return s;
}

double ks_distance(const AngleSample& s, const SpectralMeasure& mu) {
  if (s.angles.empty()) throw InvalidArgument("ks_distance: empty sample");
  std::vector<double> a = s.angles;
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = mu.cdf(a[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

AngleSample sample_measure(const SpectralMeasure& mu, std::size_t n, u64 seed) {
  std::mt19937_64 rng(seed);
  AngleSample s;
  s.family = "sample:" + mu.name();
  s.params["seed"] = std::to_string(seed);
  s.angles.reserve(n);
  const double hi = mu.upper();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    if (mu.kind() != MeasureKind::sato_tate) {
      s.angles.push_back(u * hi);
      continue;
    }
    if (u == 0.0) {
      s.angles.push_back(0.0);
      continue;
    }
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve([&](double t) { return mu.cdf(t) - u; }, 0.0, hi, -u,
                                                     1.0 - u, boost::math::tools::eps_tolerance<double>(50), iters);
    s.angles.push_back(0.5 * (r.first + r.second));
  }
  return s;
}

double chebyshev_u(int k, double x) {
  if (k < 0) throw InvalidArgument("chebyshev_u: k must be >= 0");
  double u0 = 1.0, u1 = 2 * x;
  if (k == 0) return u0;
  for (int i = 1; i < k; ++i) {
    const double u2 = 2 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

cplx weyl_sym_power(const TraceFunction& k, int sym, const AngleDomain& d) {
  const auto pts = domain_points(k, d);
  if (pts.empty()) throw InvalidArgument("weyl_sym_power: empty domain");
  std::vector<double> t(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) t[i] = chebyshev_u(sym, std::cos(angle_of(k, pts[i])));
  return pairwise_sum(t) / static_cast<double>(pts.size());
}

double angle_moment(const AngleSample& s, int l) {
  if (s.angles.empty()) throw InvalidArgument("angle_moment: empty sample");
  std::vector<double> t(s.angles.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::pow(2 * std::cos(s.angles[i]), 2 * l);
  return pairwise_sum(t) / static_cast<double>(t.size());
}

AngleSample gauss_angle_survey(const PrimeModulus& q) {
  if (q.q() < 5) throw InvalidArgument("gauss_angle_survey: q must be >= 5");
  const std::vector<cplx> eps = gauss_sums_at(q, 1);
  AngleSample s;
  s.family = "gauss";
  s.q_min = s.q_max = q.q();
  for (std::size_t m = 1; m < eps.size(); ++m) {
    double a = std::arg(eps[m]);
    if (a < 0) a += 2 * kPi;
    if (a >= 2 * kPi) a = 0.0;
    s.angles.push_back(a);
  }
  return s;
}

BirchSurvey birch_vertical_survey(const PrimeModulus& q, BirchMode mode, u64 seed) {
  const u64 qq = q.q();
  std::vector<int8_t> chi(qq, 0);
  for (u64 x = 1; x < qq; ++x) chi[x] = q.dlog(x) % 2 == 0 ? 1 : -1;
  auto disc = [qq](u64 a, u64 b) { return (4 * (a * a % qq) % qq * a + 27 * (b * b % qq)) % qq; };
  auto theta = [&](u64 a, u64 b) {
    i64 s = 0;
    for (u64 x = 0; x < qq; ++x) s += chi[((x * x % qq) * x + a * x + b) % qq];
    const double v = -static_cast<double>(s) / std::sqrt(static_cast<double>(qq));
    if (std::abs(v) > 2.0 + 1e-9) throw DomainViolation("birch survey: Hasse bound violated");
    return std::acos(std::clamp(v / 2.0, -1.0, 1.0));
  };

  BirchSurvey out;
  out.sample.family = "birch";
  out.sample.q_min = out.sample.q_max = qq;
  if (mode == BirchMode::full) {
    if (qq > 250) throw CapacityError("birch_vertical_survey: full mode needs q <= 250");
    out.sample.params["mode"] = "full";
    for (u64 a = 0; a < qq; ++a) {
      for (u64 b = 0; b < qq; ++b) {
        if (disc(a, b) == 0) {
          ++out.excluded;
          continue;
        }
        out.sample.angles.push_back(theta(a, b));
      }
    }
    // Independent count: for each a, the number of b with b^2 = -4a^3/27.
    const u64 inv27 = q.inverse(27 % qq);
    for (u64 a = 0; a < qq; ++a) {
      const u64 rhs = (qq - 4 * (a * a % qq) % qq * a % qq) % qq * inv27 % qq;
      out.excluded_expected += rhs == 0 ? 1 : (chi[rhs] == 1 ? 2 : 0);
    }
  } else {
    out.sample.params["mode"] = "sampled";
    out.sample.params["seed"] = std::to_string(seed);
    std::mt19937_64 rng(seed);
    while (out.sample.angles.size() < 100000) {
      const u64 a = uniform_below(rng, qq), b = uniform_below(rng, qq);
      if (disc(a, b) == 0) {
        ++out.excluded;
        continue;
      }
      out.sample.angles.push_back(theta(a, b));
    }
  }
  return out;
}

AlmostPrimeReport almost_prime_survey(u64 p_lo, u64 p_hi, u64 q_lo, u64 q_hi) {
  if (p_hi > 1'000'000 || q_hi > 1'000'000) throw CapacityError("almost_prime_survey: ranges beyond 10^6");
  auto primes_in = [](u64 lo, u64 hi) {
    std::vector<u64> ps;
    for (u64 n = std::max<u64>(lo, 3); n <= hi; ++n)
      if (is_prime(n)) ps.push_back(n);
    return ps;
  };
  const auto ps = primes_in(p_lo, p_hi);
  const auto qs = primes_in(q_lo, q_hi);
  std::map<u64, TraceFunction> kl;
  for (u64 m : ps) kl.emplace(m, hyper_kloosterman_all(PrimeModulus(m), 2));
  for (u64 m : qs) kl.emplace(m, hyper_kloosterman_all(PrimeModulus(m), 2));

  AlmostPrimeReport r;
  u64 prime_ge = 0, prod_ge = 0, index = 0;
  for (u64 p : ps) {
    for (u64 q : qs) {
      if (p == q) continue;
      const u64 pinv = *inverse_mod(p % q, q), qinv = *inverse_mod(q % p, p);
      const double kq = kl.at(q)[pinv * pinv % q].real();
      const double kp = kl.at(p)[qinv * qinv % p].real();
      const double prod = kp * kq;
      ++r.pairs;
      if (std::abs(kq) >= 0.4) ++prime_ge;
      if (std::abs(prod) >= 0.16) ++prod_ge;
      if (prod > 0) ++r.positive;
      if (prod < 0) ++r.negative;
      if (index++ % 16 == 0) {
        const cplx direct = composite_kloosterman_direct(make_composite_modulus(p * q), 1);
        r.max_consistency_error = std::max(r.max_consistency_error, std::abs(std::abs(direct) - std::abs(prod)));
      }
    }
  }
  if (r.pairs > 0) {
    r.frac_prime_ge = static_cast<double>(prime_ge) / r.pairs;
    r.frac_product_ge = static_cast<double>(prod_ge) / r.pairs;
  }
  const auto st = SpectralMeasure::sato_tate();
  const double t0 = std::acos(0.2);
  r.predicted_prime_ge = st.mass(0.0, t0) + st.mass(kPi - t0, kPi);
  return r;
}

HorizontalSurvey horizontal_survey(u64 X, i64 a) {
  if (X > 1'000'000) throw CapacityError("horizontal_survey: X > 10^6");
  HorizontalSurvey s;
  AngleSample sample;
  for (u64 q = 3; q <= X; q += 2) {
    if (!is_prime(q)) continue;
    const u64 ar = reduce(a, q);
    if (ar == 0) continue;
    std::vector<u64> inv(q, 0);
    inv[1] = 1;
    for (u64 i = 2; i < q; ++i) inv[i] = (q - (q / i) * inv[q % i] % q) % q;
    std::vector<double> t(q - 1);
    for (u64 x = 1; x < q; ++x) {
      t[x - 1] = std::cos(kTwoPi * static_cast<double>((x + ar * inv[x]) % q) / static_cast<double>(q));
    }
    const double v = pairwise_sum(t) / std::sqrt(static_cast<double>(q));
    const double th = std::acos(std::clamp(v / 2.0, -1.0, 1.0));
    s.rows.push_back({q, v, th});
    sample.angles.push_back(th);
  }
  if (!sample.angles.empty()) s.ks = ks_distance(sample, SpectralMeasure::sato_tate());
  return s;
}

AngleSample sato_tate_order_k_sample(int k, std::size_t n, u64 seed) {
  if (k != 2) throw InvalidArgument("sato_tate_order_k_sample: only k = 2 is implemented");
  std::mt19937_64 rng(seed);
  auto gauss_pair = [&] {
    double u1;
    do {
      u1 = uniform01(rng);
    } while (u1 == 0.0);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return std::pair{r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  };
  AngleSample s;
  s.family = "haar_su2";
  s.params["seed"] = std::to_string(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = gauss_pair();
    const auto [c, d] = gauss_pair();
    const double norm = std::sqrt(a * a + b * b + c * c + d * d);
    // Trace of the SU(2) element is 2a/|v|.
    s.angles.push_back(std::acos(std::clamp(a / norm, -1.0, 1.0)));
  }
  return s;
}

}  // namespace tracefn
