#include "tracefn/arith.hpp"

#include <mutex>
#include <numeric>
#include <string>

namespace tracefn {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 0) return std::nullopt;
  __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a % m);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 qt = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - qt * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - qt * t1};
  }
  if (r0 != 1) return m == 1 ? std::optional<u64>{0} : std::nullopt;
  if (t0 < 0) t0 += m;
  return static_cast<u64>(t0);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven witness set for all n < 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n < 2) return out;
  for (u64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct PrimeModulus::Data {
  u64 q = 0;
  u64 g = 0;
  std::vector<u32> dlog;  // indexed by x; entry 0 unused
  std::vector<u32> pow;   // g^i for i in 0..q-2
  mutable std::once_flag e_once;
  mutable std::vector<cplx> e;
};

PrimeModulus::PrimeModulus(u64 q) {
  if (q > kMaxTableModulus) {
    throw CapacityError("modulus " + std::to_string(q) + " exceeds the table ceiling " +
                        std::to_string(kMaxTableModulus));
  }
  if (q < 3 || !is_prime(q)) {
    throw InvalidModulus("modulus " + std::to_string(q) + " is not an odd prime");
  }
  auto d = std::make_shared<Data>();
  d->q = q;

  const auto fac = factorize(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (const auto& [r, e] : fac) {
      if (powmod(g, (q - 1) / r, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      d->g = g;
      break;
    }
  }

  d->dlog.assign(q, 0);
  d->pow.resize(q - 1);
  u64 x = 1;
  for (u64 i = 0; i < q - 1; ++i) {
    d->pow[i] = static_cast<u32>(x);
    d->dlog[x] = static_cast<u32>(i);
    x = x * d->g % q;
  }
  q_ = d->q;
  g_ = d->g;
  dlog_ = d->dlog.data();
  pow_ = d->pow.data();
  d_ = std::move(d);
}

u32 PrimeModulus::dlog(u64 x) const {
  x %= q_;
  if (x == 0) throw DomainViolation("discrete log of 0 is undefined");
  return dlog_[x];
}

u64 PrimeModulus::inverse(u64 x) const {
  x %= q_;
  if (x == 0) throw DomainViolation("0 has no inverse modulo " + std::to_string(q_));
  const u64 n = q_ - 1;
  return pow_[(n - dlog_[x]) % n];
}

std::span<const cplx> PrimeModulus::e_table() const {
  std::call_once(d_->e_once, [d = d_.get()] {
    d->e.resize(d->q);
    const double step = kTwoPi / static_cast<double>(d->q);
    for (u64 j = 0; j < d->q; ++j) {
      const double angle = step * static_cast<double>(j);
      d->e[j] = {std::cos(angle), std::sin(angle)};
    }
  });
  return d_->e;
}

PrimeModulus make_prime_modulus(u64 q) { return PrimeModulus(q); }

int legendre(i64 a, const PrimeModulus& q) {
  const u64 x = reduce(a, q.q());
  if (x == 0) return 0;
  return (q.dlog(x) % 2 == 0) ? 1 : -1;
}

CompositeModulus make_composite_modulus(u64 c) {
  if (c < 3 || c % 2 == 0) {
    throw InvalidModulus("composite modulus must be odd and >= 3, got " + std::to_string(c));
  }
  CompositeModulus m;
  m.c = c;
  for (const auto& [p, e] : factorize(c)) {
    if (e > 1) throw InvalidModulus(std::to_string(c) + " is not squarefree");
    m.factors.push_back(p);
    m.cofactor_inverses.push_back(*inverse_mod((c / p) % p, p));
  }
  return m;
}

}  // namespace tracefn
