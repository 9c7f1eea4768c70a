#pragma once

// Brute-force reference implementations. Nothing here calls the library's
// transforms or tables; they exist to be slow and obviously right.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline cplx e(i64 num, i64 den) {
  const long double t = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(((num % den) + den) % den) /
                        static_cast<long double>(den);
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

inline u64 pow_mod(u64 b, u64 e_, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e_) {
    if (e_ & 1) r = static_cast<u64>(static_cast<unsigned __int128>(r) * b % m);
    b = static_cast<u64>(static_cast<unsigned __int128>(b) * b % m);
    e_ >>= 1;
  }
  return r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes_up_to(u64 hi, u64 lo = 2) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline u64 inverse(u64 a, u64 q) { return pow_mod(a, q - 2, q); }

/// Least primitive root by computing multiplicative orders directly.
inline u64 least_primitive_root(u64 q) {
  for (u64 g = 2; g < q; ++g) {
    u64 x = 1, order = 0;
    do {
      x = x * g % q;
      ++order;
    } while (x != 1);
    if (order == q - 1) return g;
  }
  return 1;  // q = 2
}

/// dlog table base the least primitive root, by walking powers.
inline std::vector<u64> dlog_table(u64 q) {
  std::vector<u64> d(q, 0);
  const u64 g = least_primitive_root(q);
  u64 x = 1;
  for (u64 j = 0; j + 1 < q; ++j) {
    d[x] = j;
    x = x * g % q;
  }
  return d;
}

/// Legendre symbol by Euler's criterion.
inline int legendre(i64 a, u64 q) {
  const u64 r = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  if (r == 0) return 0;
  return pow_mod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

/// q^{-(k-1)/2} sum over x_1 ... x_k = a of e_q(x_1 + ... + x_k).
inline cplx kloosterman(u64 q, int k, i64 a) {
  const u64 ar = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  cplx total = 0.0;
  std::function<void(int, u64, u64)> rec = [&](int depth, u64 prod, u64 sum) {
    if (depth == k - 1) {
      const u64 last = ar * inverse(prod, q) % q;
      total += e(static_cast<i64>((sum + last) % q), static_cast<i64>(q));
      return;
    }
    for (u64 x = 1; x < q; ++x) rec(depth + 1, prod * x % q, (sum + x) % q);
  };
  rec(0, 1, 0);
  return total / std::pow(static_cast<double>(q), (k - 1) / 2.0);
}

/// q^{-1/2} sum_x (x/q) e_q(x + a/x).
inline cplx salie(u64 q, i64 a) {
  cplx s = 0.0;
  const u64 ar = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  for (u64 x = 1; x < q; ++x) s += static_cast<double>(legendre(static_cast<i64>(x), q)) *
                                   e(static_cast<i64>((x + ar * inverse(x, q)) % q), static_cast<i64>(q));
  return s / std::sqrt(static_cast<double>(q));
}

/// out[y] = sum_x in[x] exp(dir 2 pi i x y / N).
inline std::vector<cplx> dft(const std::vector<cplx>& in, int dir) {
  const i64 n = static_cast<i64>(in.size());
  std::vector<cplx> out(in.size(), 0.0);
  for (i64 y = 0; y < n; ++y)
    for (i64 x = 0; x < n; ++x) out[y] += in[x] * e(dir * x * y, n);
  return out;
}

/// q^{-1/2} sum_{x != 0} chi_m(x) e_q(a x), chi_m(g^j) = e(m j / (q-1)).
inline cplx gauss(u64 q, u64 m, i64 a) {
  const auto d = dlog_table(q);
  cplx s = 0.0;
  for (u64 x = 1; x < q; ++x)
    s += e(static_cast<i64>(m * d[x]), static_cast<i64>(q - 1)) * e(a * static_cast<i64>(x), static_cast<i64>(q));
  return s / std::sqrt(static_cast<double>(q));
}

/// (K1 * K2)(x) = q^{-1/2} sum_{x1 x2 = x} K1(x1) K2(x2), 0 at x = 0.
inline std::vector<cplx> mult_convolution(const std::vector<cplx>& k1, const std::vector<cplx>& k2) {
  const u64 q = k1.size();
  std::vector<cplx> out(q, 0.0);
  for (u64 a = 1; a < q; ++a)
    for (u64 b = 1; b < q; ++b) out[a * b % q] += k1[a] * k2[b];
  for (auto& z : out) z /= std::sqrt(static_cast<double>(q));
  return out;
}

inline int mobius(u64 n) {
  int sign = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

inline double von_mangoldt(u64 n) {
  if (n < 2) return 0.0;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

inline u64 divisor_count(u64 n) {
  u64 c = 0;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) ++c;
  return c;
}

/// Ordered factorizations n = a b c.
inline u64 d3(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a)
    if (n % a == 0) c += divisor_count(n / a);
  return c;
}

/// #{x in (F_q^x)^4 : x1 + x2 = x3 + x4, 1/x1 + 1/x2 = 1/x3 + 1/x4}, O(q^4).
inline u64 kloosterman_energy(u64 q) {
  std::vector<u64> inv(q, 0);
  for (u64 x = 1; x < q; ++x) inv[x] = inverse(x, q);
  u64 count = 0;
  for (u64 a = 1; a < q; ++a)
    for (u64 b = 1; b < q; ++b)
      for (u64 c = 1; c < q; ++c) {
        const u64 d = (a + b + q - c) % q;
        if (d == 0) continue;
        if ((inv[a] + inv[b]) % q == (inv[c] + inv[d]) % q) ++count;
      }
  return count;
}

}  // namespace oracle
