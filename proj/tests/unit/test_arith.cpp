#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tracefn/arith.hpp"

using namespace tracefn;

TEST_CASE("sieve tables at X = 10") {
  const auto t = sieve_tables(10);
  CHECK(t.primes() == std::vector<u32>{2, 3, 5, 7});
  CHECK(t.mu(6) == 1);
  CHECK(t.lambda(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(t.d3(4) == 6);
}

TEST_CASE("sieve tables at the smallest limit") {
  const auto t = sieve_tables(2);
  CHECK(t.primes() == std::vector<u32>{2});
  CHECK(t.mu(1) == 1);
  CHECK(t.mu(2) == -1);
}

TEST_CASE("sieve tables at X = 30") {
  const auto t = sieve_tables(30);
  CHECK(t.d2(12) == 6);
  CHECK(t.d3(12) == 18);
}

TEST_CASE("sieve limit outside the supported range") {
  CHECK_THROWS_AS(sieve_tables(1), CapacityError);
  CHECK_THROWS_AS(sieve_tables(ArithmeticTables::kMaxLimit + 1), CapacityError);
}

TEST_CASE("sieve tables agree with trial division") {
  const u64 X = 3000;
  const auto t = sieve_tables(X);
  for (u64 n = 1; n <= X; ++n) {
    REQUIRE(t.mu(n) == oracle::mobius(n));
    REQUIRE(t.lambda(n) == doctest::Approx(oracle::von_mangoldt(n)).epsilon(1e-14));
    REQUIRE(t.d2(n) == oracle::divisor_count(n));
  }
  for (u64 n = 1; n <= 600; ++n) REQUIRE(t.d3(n) == oracle::d3(n));
  CHECK(t.primes() == [] {
    std::vector<u32> p;
    for (u64 x : oracle::primes_up_to(3000)) p.push_back(static_cast<u32>(x));
    return p;
  }());
}

TEST_CASE("Moebius, von Mangoldt and d3 convolution identities") {
  const u64 X = 20000;
  const auto t = sieve_tables(X);
  std::vector<int> mu_sum(X + 1, 0);
  std::vector<double> lambda_sum(X + 1, 0.0);
  std::vector<u64> d3_sum(X + 1, 0);
  for (u64 d = 1; d <= X; ++d)
    for (u64 n = d; n <= X; n += d) {
      mu_sum[n] += t.mu(d);
      lambda_sum[n] += t.lambda(d);
      d3_sum[n] += t.d2(n / d);
    }
  for (u64 n = 1; n <= X; ++n) {
    REQUIRE(mu_sum[n] == (n == 1 ? 1 : 0));
    REQUIRE(std::abs(lambda_sum[n] - std::log(static_cast<double>(n))) <= 1e-9);
    REQUIRE(d3_sum[n] == t.d3(n));
  }
}

TEST_CASE("prime modulus q = 7") {
  const PrimeModulus q = make_prime_modulus(7);
  CHECK(q.generator() == 3);
  CHECK(q.dlog(2) == 2);
  CHECK(q.power(2) == 2);
  CHECK(q.group_order() == 6);
}

TEST_CASE("prime modulus q = 3") {
  const PrimeModulus q = make_prime_modulus(3);
  CHECK(q.generator() == 2);
  CHECK(q.dlog(1) == 0);
  CHECK(q.dlog(2) == 1);
}

TEST_CASE("primitive root of 101 has full order") {
  const PrimeModulus q = make_prime_modulus(101);
  for (u64 r : {2, 5}) CHECK(oracle::pow_mod(q.generator(), 100 / r, 101) != 1);
  CHECK(q.generator() == oracle::least_primitive_root(101));
}

TEST_CASE("composite and tiny moduli are rejected") {
  CHECK_THROWS_AS(make_prime_modulus(9), InvalidModulus);
  CHECK_THROWS_AS(make_prime_modulus(1), InvalidModulus);
  CHECK_THROWS_AS(make_prime_modulus(2), InvalidModulus);
  CHECK_THROWS_AS(make_prime_modulus(561), InvalidModulus);
}

TEST_CASE("discrete logarithms round trip for every prime below 1e4") {
  for (u64 qv : oracle::primes_up_to(10000, 3)) {
    const PrimeModulus q = make_prime_modulus(qv);
    REQUIRE(q.generator() == oracle::least_primitive_root(qv));
    std::vector<bool> seen(qv - 1, false);
    for (u64 x = 1; x < qv; ++x) {
      const u32 i = q.dlog(x);
      REQUIRE(i < qv - 1);
      REQUIRE(!seen[i]);
      seen[i] = true;
      REQUIRE(q.power(i) == x);
    }
  }
}

TEST_CASE("inverses and zero handling") {
  const PrimeModulus q = make_prime_modulus(101);
  for (u64 x = 1; x < 101; ++x) REQUIRE(x * q.inverse(x) % 101 == 1);
  CHECK_THROWS_AS(q.inverse(0), DomainViolation);
  CHECK_THROWS_AS(q.dlog(0), DomainViolation);
  CHECK(inverse_mod(4, 10) == std::nullopt);
  CHECK(inverse_mod(3, 10) == std::optional<u64>{7});
}

TEST_CASE("additive character table") {
  const PrimeModulus q = make_prime_modulus(997);
  for (u64 j = 0; j < 997; ++j) REQUIRE(std::abs(q.e_q(static_cast<i64>(j)) - oracle::e(static_cast<i64>(j), 997)) <= 1e-15);
  CHECK(std::abs(q.e_q(-1) - oracle::e(996, 997)) <= 1e-15);
}

TEST_CASE("Legendre symbol examples") {
  const PrimeModulus q7 = make_prime_modulus(7);
  CHECK(legendre(2, q7) == 1);
  CHECK(legendre(0, q7) == 0);
  CHECK(legendre(3, q7) == -1);
  CHECK(legendre(14, q7) == 0);
  CHECK(legendre(-1, q7) == -1);
}

TEST_CASE("Legendre multiplicativity and Euler's criterion for q <= 500") {
  for (u64 qv : oracle::primes_up_to(500, 3)) {
    const PrimeModulus q = make_prime_modulus(qv);
    for (u64 a = 1; a < qv; ++a) {
      const int la = legendre(static_cast<i64>(a), q);
      REQUIRE(la == oracle::legendre(static_cast<i64>(a), qv));
      for (u64 b = 1; b < qv; ++b)
        REQUIRE(legendre(static_cast<i64>(a * b), q) == la * legendre(static_cast<i64>(b), q));
    }
  }
}

TEST_CASE("composite moduli") {
  const auto c15 = make_composite_modulus(15);
  CHECK(c15.factors == std::vector<u64>{3, 5});
  CHECK(c15.cofactor_inverses[0] == 2);
  CHECK(c15.cofactor_inverses[1] == 2);

  const auto c7 = make_composite_modulus(7);
  CHECK(c7.factors == std::vector<u64>{7});
  CHECK(c7.cofactor_inverses == std::vector<u64>{1});

  const auto c105 = make_composite_modulus(105);
  CHECK(c105.factors == std::vector<u64>{3, 5, 7});
  for (std::size_t i = 0; i < 3; ++i) {
    const u64 p = c105.factors[i];
    CHECK((105 / p) * c105.cofactor_inverses[i] % p == 1);
  }

  CHECK_THROWS_AS(make_composite_modulus(45), InvalidModulus);
  CHECK_THROWS_AS(make_composite_modulus(30), InvalidModulus);
  CHECK_THROWS_AS(make_composite_modulus(1), InvalidModulus);
}

TEST_CASE("primality and factorization") {
  CHECK(is_prime(2));
  CHECK(is_prime(1000000007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(18446744073709551557ULL));
  CHECK(factorize(360) == std::vector<std::pair<u64, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(is_squarefree(105));
  CHECK_FALSE(is_squarefree(98));
  for (u64 n = 1; n < 5000; ++n) REQUIRE(is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("rational functions reduce and report poles") {
  const RationalFunctionModQ inv(5, {1}, {0, 1});
  CHECK(inv(0) == std::nullopt);
  CHECK(inv(2) == std::optional<u64>{3});

  // (x^2 - 1) / (x - 1) reduces to x + 1, so x = 1 is not a pole.
  const RationalFunctionModQ r(7, {-1, 0, 1}, {-1, 1});
  CHECK(r.is_polynomial());
  CHECK(r(1) == std::optional<u64>{2});

  CHECK_THROWS_AS(RationalFunctionModQ(7, {1}, {7}), InvalidArgument);

  // 1/x has a simple pole at 0; x has a simple pole at infinity.
  CHECK(inv.distinct_poles() == 1);
  CHECK(RationalFunctionModQ::identity(7).distinct_poles() == 1);
  CHECK(RationalFunctionModQ::constant(7, 3).is_constant());
}
