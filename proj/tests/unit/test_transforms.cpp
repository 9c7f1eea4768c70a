#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tracefn/random.hpp"
#include "tracefn/trace_function.hpp"
#include "tracefn/transforms.hpp"

using namespace tracefn;

namespace {

std::vector<cplx> random_vec(std::size_t n, u64 seed) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
  return v;
}

TraceFunction random_tf(const PrimeModulus& q, u64 seed) {
  return TraceFunction(q, random_vec(q.q(), seed), TraceMeta{});
}

TraceFunction psi(const PrimeModulus& q) { return additive_phase(q, RationalFunctionModQ::identity(q.q())); }

}  // namespace

TEST_CASE("dft basics") {
  const std::vector<cplx> one{cplx(2.0, -1.0)};
  CHECK(dft(one, 1)[0] == one[0]);

  std::vector<cplx> delta(17, 0.0);
  delta[0] = 1.0;
  for (const cplx& z : dft(delta, -1)) CHECK(std::abs(z - cplx(1.0)) <= 1e-14);

  const auto in = random_vec(97, 5);
  auto back = dft(dft(in, +1), -1);
  for (std::size_t i = 0; i < 97; ++i) CHECK(std::abs(back[i] / 97.0 - in[i]) <= 1e-10);
}

TEST_CASE("dft matches the quadratic definition") {
  for (std::size_t n : {1, 2, 3, 30, 64, 97, 100, 211}) {
    const auto in = random_vec(n, n);
    for (int dir : {-1, 1}) {
      const auto fast = dft(in, dir);
      const auto slow = oracle::dft(in, dir);
      for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(fast[i] - slow[i]) <= 1e-10);
    }
  }
}

TEST_CASE("Fourier transform examples") {
  const PrimeModulus q = make_prime_modulus(101);
  const auto ones = fourier(constant_function(q));
  CHECK(std::abs(ones[0] - std::sqrt(101.0)) <= 1e-12);
  for (u64 y = 1; y < 101; ++y) CHECK(std::abs(ones[y]) <= 1e-12);

  const auto fd = fourier(dirac(q, 7), +1);
  for (i64 h = 0; h < 101; ++h) CHECK(std::abs(fd[h] - oracle::e(7 * h, 101) / std::sqrt(101.0)) <= 1e-14);

  const auto k = random_tf(q, 11);
  double a = 0.0, b = 0.0;
  const auto kh = fourier(k);
  for (u64 x = 0; x < 101; ++x) {
    a += std::norm(k[x]);
    b += std::norm(kh[x]);
  }
  CHECK(std::abs(a - b) <= 1e-9 * a);
}

TEST_CASE("Fourier involution for every q <= 2000") {
  for (u64 qv : oracle::primes_up_to(2000, 3)) {
    const PrimeModulus q = make_prime_modulus(qv);
    const auto k = random_tf(q, qv);
    for (int sign : {-1, 1}) {
      const auto kk = fourier(fourier(k, sign), sign);
      for (u64 x = 0; x < qv; ++x) REQUIRE(std::abs(kk[x] - k[(qv - x) % qv]) <= 1e-9);
    }
  }
}

TEST_CASE("multiplicative convolution") {
  const PrimeModulus q = make_prime_modulus(101);
  const auto kl = mult_convolution(psi(q), psi(q));
  for (i64 a = 1; a < 101; ++a) CHECK(std::abs(kl[a] - oracle::kloosterman(101, 2, a)) <= 1e-9);
  CHECK(kl[0] == cplx(0.0));

  const auto k = random_tf(q, 2);
  const auto id = mult_convolution(k, dirac(q, 1));
  for (u64 x = 1; x < 101; ++x) CHECK(std::abs(id[x] * std::sqrt(101.0) - k[x]) <= 1e-12);

  const PrimeModulus q53 = make_prime_modulus(53);
  const auto a = random_tf(q53, 3), b = random_tf(q53, 4), c = random_tf(q53, 5);
  const auto left = mult_convolution(mult_convolution(a, b), c);
  const auto right = mult_convolution(a, mult_convolution(b, c));
  std::vector<cplx> av(a.values().begin(), a.values().end()), bv(b.values().begin(), b.values().end());
  const auto brute = oracle::mult_convolution(av, bv);
  const auto ab = mult_convolution(a, b);
  for (u64 x = 0; x < 53; ++x) {
    CHECK(std::abs(left[x] - right[x]) <= 1e-9);
    CHECK(std::abs(ab[x] - brute[x]) <= 1e-12);
  }
  CHECK_THROWS_AS(mult_convolution(a, random_tf(q, 1)), InvalidArgument);
}

TEST_CASE("hyper-Kloosterman sums for all a") {
  const PrimeModulus q = make_prime_modulus(101);
  const auto k3 = hyper_kloosterman_all(q, 3);
  std::mt19937_64 rng(0x5EEDF00D);
  for (int i = 0; i < 10; ++i) {
    const i64 a = 1 + static_cast<i64>(uniform_below(rng, 100));
    CHECK(std::abs(k3[a] - kloosterman_direct(q, 3, a)) <= 1e-9);
  }
  CHECK(hyper_kloosterman_all(make_prime_modulus(5), 2)[1].real() == doctest::Approx(0.1708204).epsilon(1e-7));
  const auto k4 = hyper_kloosterman_all(make_prime_modulus(1009), 4);
  double m = 0.0;
  for (u64 a = 1; a < 1009; ++a) m = std::max(m, std::abs(k4[a]));
  CHECK(m <= 4.0);
  CHECK_THROWS_AS(hyper_kloosterman_all(q, 1), InvalidArgument);
}

TEST_CASE("Fourier-Kloosterman recursion for q <= 500") {
  for (u64 qv : oracle::primes_up_to(500, 3)) {
    const PrimeModulus q = make_prime_modulus(qv);
    std::vector<u64> inv(qv, 0);
    for (u64 x = 1; x < qv; ++x) inv[x] = q.inverse(x);
    auto prev = hyper_kloosterman_all(q, 2);
    for (int k = 2; k <= 4; ++k) {
      const auto next = hyper_kloosterman_all(q, k + 1);
      for (u64 a = 1; a < qv; a += (qv > 100 ? 7 : 1)) {
        cplx s = 0.0;
        for (u64 x = 1; x < qv; ++x) s += prev[x] * q.e_q(static_cast<i64>(a * inv[x] % qv));
        REQUIRE(std::abs(s / std::sqrt(static_cast<double>(qv)) - next[a]) <= 1e-9);
      }
      prev = next;
    }
  }
}

TEST_CASE("Gauss sums") {
  for (u64 qv : oracle::primes_up_to(2000, 3)) {
    const PrimeModulus q = make_prime_modulus(qv);
    const auto g = gauss_sums_at(q, 1);
    for (u64 m = 1; m < qv - 1; ++m) REQUIRE(std::abs(std::abs(g[m]) - 1.0) <= 1e-9);
  }
  const PrimeModulus q = make_prime_modulus(101);
  const auto g1 = gauss_sums_at(q, 1);
  for (i64 a = 1; a < 101; ++a) {
    const auto ga = gauss_sums_at(q, a);
    for (u64 m = 0; m < 100; ++m) {
      const cplx chibar = std::conj(unit_root(static_cast<i64>(m * q.dlog(static_cast<u64>(a))), 100));
      REQUIRE(std::abs(ga[m] - chibar * g1[m]) <= 1e-9);
    }
  }
  for (u64 m : {0, 1, 37}) CHECK(std::abs(gauss_sum(q, m, 3) - oracle::gauss(101, m, 3)) <= 1e-12);
  for (u64 qv : {5, 13, 17}) {
    const PrimeModulus p = make_prime_modulus(qv);
    CHECK(std::abs(gauss_sum(p, (qv - 1) / 2, 1) - cplx(1.0)) <= 1e-12);
  }
}

TEST_CASE("Mellin transform") {
  const PrimeModulus q = make_prime_modulus(101);
  std::vector<cplx> v(101, 1.0);
  v[0] = 0.0;
  const auto ones = mellin(TraceFunction(q, v, TraceMeta{}));
  CHECK(ones.values.size() == 100);
  CHECK(std::abs(ones.values[0] - std::sqrt(100.0)) <= 1e-12);
  for (u64 m = 1; m < 100; ++m) CHECK(std::abs(ones.values[m]) <= 1e-12);

  const auto k = random_tf(q, 21);
  const auto spec = mellin(k);
  const auto back = inverse_mellin(spec, q);
  double lhs = 0.0, rhs = 0.0;
  for (u64 x = 1; x < 101; ++x) {
    CHECK(std::abs(back[x] - k[x]) <= 1e-9);
    rhs += std::norm(k[x]);
  }
  for (const cplx& z : spec.values) lhs += std::norm(z);
  CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
  CHECK(back[0] == cplx(0.0));

  // Direct character sum at a few indices.
  for (u64 m : {0, 1, 50, 99}) {
    cplx s = 0.0;
    for (u64 x = 1; x < 101; ++x) s += k[x] * unit_root(static_cast<i64>(m * q.dlog(x)), 100);
    CHECK(std::abs(spec.values[m] - s / std::sqrt(100.0)) <= 1e-12);
  }
}

TEST_CASE("Mellin diagonalises multiplicative convolution") {
  for (u64 qv : {53, 211}) {
    const PrimeModulus q = make_prime_modulus(qv);
    const auto a = random_tf(q, 31), b = random_tf(q, 32);
    const auto lhs = mellin(mult_convolution(a, b));
    const auto ma = mellin(a), mb = mellin(b);
    const double c = std::sqrt(static_cast<double>(qv)) / std::sqrt(static_cast<double>(qv - 1));
    for (u64 m = 0; m < qv - 1; ++m) REQUIRE(std::abs(lhs.values[m] * c - ma.values[m] * mb.values[m]) <= 1e-9);
  }
}

TEST_CASE("Voronoi transform") {
  const PrimeModulus q = make_prime_modulus(101);
  for (i64 a : {1, 2, 77}) {
    const auto v = voronoi_transform(dirac(q, a));
    for (i64 n = 1; n < 101; ++n) CHECK(std::abs(v[n] - oracle::kloosterman(101, 2, a * n) / std::sqrt(101.0)) <= 1e-9);
    CHECK(std::abs(v[0] - cplx(-1.0 / 101.0)) <= 1e-12);
  }

  // All-ones against the double sum over h != 0 and x.
  const auto ones = voronoi_transform(constant_function(q));
  for (i64 n = 0; n < 101; ++n) {
    cplx s = 0.0;
    for (i64 h = 1; h < 101; ++h) {
      cplx fh = 0.0;
      for (i64 x = 0; x < 101; ++x) fh += oracle::e(x * h, 101);
      s += fh / std::sqrt(101.0) * oracle::e(static_cast<i64>(oracle::inverse(h, 101)) * n, 101);
    }
    CHECK(std::abs(ones[n] - s / std::sqrt(101.0)) <= 1e-9);
  }
}

TEST_CASE("Mellin of the Voronoi transform is proportional with constant modulus") {
  const PrimeModulus q = make_prime_modulus(101);
  const auto k = random_tf(q, 77);
  const auto mv = mellin(voronoi_transform(k));
  const auto mk = mellin(k);
  const auto eps = gauss_sums_at(q, 1);
  double lo = 1e300, hi = 0.0;
  for (u64 m = 1; m < 100; ++m) {
    const cplx den = eps[m] * mk.values[(100 - m) % 100];
    if (std::abs(den) <= 1e-6) continue;
    const double r = std::abs(mv.values[m] / den);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi - lo <= 1e-9);
  CHECK(hi > 0.0);
}
