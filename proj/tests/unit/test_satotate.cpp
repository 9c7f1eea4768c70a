#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tracefn/calibration.hpp"
#include "tracefn/experiments.hpp"
#include "tracefn/satotate.hpp"
#include "tracefn/transforms.hpp"

using namespace tracefn;

namespace {

const Manifest& manifest() {
  static const Manifest m = load_manifest(default_manifest_path());
  return m;
}

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("angles of Kl2") {
  const PrimeModulus q = make_prime_modulus(101);
  const auto k = hyper_kloosterman_all(q, 2);
  const auto s = extract_angles(k, AngleDomain::nonzero());
  REQUIRE(s.angles.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) {
    REQUIRE(s.angles[i] >= 0.0);
    REQUIRE(s.angles[i] <= pi);
    REQUIRE(2.0 * std::cos(s.angles[i]) == doctest::Approx(k[i + 1].real()).epsilon(1e-12));
  }
  CHECK(domain_points(k, AngleDomain::squares()).size() == 50);
  CHECK(domain_points(k, AngleDomain::all()).size() == 101);
  CHECK(extract_angles(k, AngleDomain::explicit_set({3, 9})).angles.size() == 2);
  CHECK_THROWS_AS(extract_angles(k, AngleDomain::explicit_set({101})), InvalidArgument);
}

TEST_CASE("angle extraction rejects values off the interval") {
  const PrimeModulus q = make_prime_modulus(13);
  CHECK_THROWS_AS(extract_angles(salie_family(make_prime_modulus(11)), AngleDomain::squares()), DomainViolation);
  CHECK_THROWS_AS(extract_angles(constant_function(q, 2.5), AngleDomain::all()), DomainViolation);
  CHECK_NOTHROW(extract_angles(salie_real_family(make_prime_modulus(11)), AngleDomain::squares()));
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  for (auto mu : {SpectralMeasure::sato_tate(), SpectralMeasure::uniform_interval(), SpectralMeasure::uniform_circle()}) {
    const auto s = sample_measure(mu, 50000, 0x5EEDF00D);
    CHECK(ks_distance(s, mu) <= 0.01);
  }
  AngleSample one;
  one.angles = {pi / 2.0};
  CHECK(ks_distance(one, SpectralMeasure::sato_tate()) == doctest::Approx(0.5));
  CHECK(ks_distance(one, SpectralMeasure::uniform_interval()) == doctest::Approx(0.5));

  // A point mass at 0 against the uniform law is at distance 1.
  AngleSample zeros;
  zeros.angles.assign(10, 0.0);
  CHECK(ks_distance(zeros, SpectralMeasure::uniform_interval()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ks_distance(AngleSample{}, SpectralMeasure::sato_tate()), InvalidArgument);

  const auto a = sample_measure(SpectralMeasure::sato_tate(), 100, 7);
  const auto b = sample_measure(SpectralMeasure::sato_tate(), 100, 7);
  CHECK(a.angles == b.angles);
}

TEST_CASE("KS distances at q = 10007") {
  const PrimeModulus q = make_prime_modulus(10007);
  const auto kl = extract_angles(hyper_kloosterman_all(q, 2), AngleDomain::nonzero());
  CHECK(ks_distance(kl, SpectralMeasure::sato_tate()) <= manifest().threshold("ks_kl2"));
  const auto sa = extract_angles(salie_real_family(q), AngleDomain::squares());
  CHECK(sa.angles.size() == 5003);
  CHECK(ks_distance(sa, SpectralMeasure::uniform_interval()) <= manifest().threshold("ks_salie"));
  CHECK(ks_distance(gauss_angle_survey(q), SpectralMeasure::uniform_circle()) <= manifest().threshold("ks_gauss"));
}

TEST_CASE("Weyl sums and Chebyshev polynomials") {
  for (int k = 0; k <= 6; ++k)
    for (double t : {0.1, 1.0, 2.5}) CHECK(chebyshev_u(k, std::cos(t)) == doctest::Approx(std::sin((k + 1) * t) / std::sin(t)));
  CHECK(chebyshev_u(3, 1.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(chebyshev_u(-1, 0.0), InvalidArgument);

  const PrimeModulus q = make_prime_modulus(2003);
  const auto k = hyper_kloosterman_all(q, 2);
  for (int s = 1; s <= 6; ++s)
    CHECK(std::sqrt(2003.0) * std::abs(weyl_sym_power(k, s, AngleDomain::nonzero())) <= manifest().threshold("weyl"));
  CHECK(weyl_sym_power(k, 0, AngleDomain::nonzero()) == cplx(1.0));
}

TEST_CASE("Salie second moment over squares") {
  for (u64 qv : {1009, 2003}) {
    const auto s = extract_angles(salie_real_family(make_prime_modulus(qv)), AngleDomain::squares());
    CHECK(std::sqrt(static_cast<double>(qv)) * std::abs(angle_moment(s, 1) - 2.0) <= manifest().threshold("salie_m2"));
  }
}

TEST_CASE("Gauss sum arguments") {
  const auto s = gauss_angle_survey(make_prime_modulus(5));
  CHECK(s.angles.size() == 3);
  for (double t : s.angles) {
    CHECK(t >= 0.0);
    CHECK(t < 2.0 * pi);
  }
  // Quadratic Gauss sum at q = 5 is 1.
  CHECK(std::find_if(s.angles.begin(), s.angles.end(), [](double t) { return std::abs(t) <= 1e-9; }) != s.angles.end());
  CHECK_THROWS_AS(gauss_angle_survey(make_prime_modulus(3)), InvalidArgument);
}

TEST_CASE("Birch surveys") {
  const auto full = birch_vertical_survey(make_prime_modulus(101), BirchMode::full, 0x5EEDF00D);
  CHECK(full.excluded == 101);
  CHECK(full.excluded_expected == 101);
  CHECK(full.sample.angles.size() == 101 * 101 - 101);
  CHECK(ks_distance(full.sample, SpectralMeasure::sato_tate()) <= manifest().threshold("ks_birch"));

  // Excluded pairs against a direct count.
  const u64 qv = 31;
  u64 disc = 0;
  for (u64 a = 0; a < qv; ++a)
    for (u64 b = 0; b < qv; ++b)
      if ((4 * a * a * a + 27 * b * b) % qv == 0) ++disc;
  CHECK(birch_vertical_survey(make_prime_modulus(qv), BirchMode::full, 0).excluded == disc);

  CHECK(ks_distance(experiments::birch_family_angles(make_prime_modulus(1009)), SpectralMeasure::sato_tate()) <=
        manifest().threshold("ks_birch_family"));
  CHECK_THROWS_AS(birch_vertical_survey(make_prime_modulus(251), BirchMode::full, 0), CapacityError);
  const auto sampled = birch_vertical_survey(make_prime_modulus(1009), BirchMode::sampled, 0x5EEDF00D);
  CHECK(sampled.sample.angles.size() > 99000);
}

TEST_CASE("almost-prime moduli") {
  const auto r = almost_prime_survey(300, 600, 300, 600);
  const u64 n = oracle::primes_up_to(600, 300).size();
  CHECK(r.pairs == n * (n - 1));
  CHECK(r.positive + r.negative == r.pairs);
  CHECK(r.max_consistency_error <= 1e-9);
  CHECK(std::abs(r.frac_prime_ge - r.predicted_prime_ge) <= 0.05);
  CHECK_THROWS_AS(almost_prime_survey(3, 2'000'000, 3, 10), CapacityError);
}

TEST_CASE("horizontal survey") {
  const auto h = horizontal_survey(100);
  CHECK(h.rows.size() == 24);
  CHECK(h.rows.front().q == 3);
  CHECK(h.rows.back().q == 97);
  for (const auto& row : h.rows) {
    CHECK(row.kl2 == doctest::Approx(oracle::kloosterman(row.q, 2, 1).real()).epsilon(1e-9));
    CHECK(2.0 * std::cos(row.theta) == doctest::Approx(row.kl2).epsilon(1e-9));
  }
  CHECK(h.status.find("report only") != std::string::npos);
}

TEST_CASE("measure moments and cdf") {
  CHECK(catalan(0) == 1.0);
  CHECK(catalan(5) == 42.0);
  CHECK(central_binomial(5) == 252.0);
  for (int l = 0; l <= 5; ++l) {
    CHECK(SpectralMeasure::sato_tate().moment(l) == doctest::Approx(catalan(l)).epsilon(1e-10));
    CHECK(SpectralMeasure::uniform_interval().moment(l) == doctest::Approx(central_binomial(l)).epsilon(1e-10));
    CHECK(SpectralMeasure::uniform_circle().moment(l) == doctest::Approx(central_binomial(l)).epsilon(1e-10));
  }
  for (auto mu : {SpectralMeasure::sato_tate(), SpectralMeasure::uniform_interval(), SpectralMeasure::uniform_circle()}) {
    CHECK(mu.cdf(0.0) == doctest::Approx(0.0));
    CHECK(mu.cdf(mu.upper()) == doctest::Approx(1.0));
    CHECK(mu.mass(0.0, mu.upper()) == doctest::Approx(1.0).epsilon(1e-10));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = mu.upper() * i / 100.0;
      const double c = mu.cdf(t);
      REQUIRE(c >= prev - 1e-15);
      REQUIRE(mu.mass(0.0, t) == doctest::Approx(c).epsilon(1e-9));
      prev = c;
    }
  }
  CHECK(SpectralMeasure::sato_tate().cdf(pi / 2.0) == doctest::Approx(0.5));
  CHECK(SpectralMeasure::sato_tate().density(pi / 2.0) == doctest::Approx(2.0 / pi));
  CHECK_THROWS_AS(SpectralMeasure::sato_tate().moment(-1), InvalidArgument);
}

TEST_CASE("order-k Sato-Tate sampler") {
  const auto s = sato_tate_order_k_sample(2, 20000, 0x5EEDF00D);
  CHECK(s.angles.size() == 20000);
  CHECK(ks_distance(s, SpectralMeasure::sato_tate()) <= 0.015);
  CHECK(angle_moment(s, 2) == doctest::Approx(2.0).epsilon(0.05));
  CHECK_THROWS_AS(sato_tate_order_k_sample(3, 10, 0), InvalidArgument);
}
