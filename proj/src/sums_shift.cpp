#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "tracefn/parallel.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

namespace tracefn {

ShiftTuple make_shift_tuple_in_box(std::vector<i64> b, i64 lo, i64 hi) {
  if (b.empty() || b.size() % 2 != 0) throw InvalidArgument("shift tuple needs an even, positive length");
  if (hi <= lo) throw InvalidArgument("shift tuple box is empty");
  for (i64 x : b) {
    if (x < lo || x >= hi) {
      throw InvalidArgument("shift tuple entry " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + ")");
    }
  }
  ShiftTuple t;
  t.l = static_cast<int>(b.size() / 2);
  t.lo = lo;
  t.hi = hi;
  t.b = std::move(b);
  return t;
}

ShiftTuple make_shift_tuple(std::vector<i64> b, i64 B) {
  if (B < 1) throw InvalidArgument("shift tuple box parameter B must be >= 1");
  return make_shift_tuple_in_box(std::move(b), B, 2 * B);
}

cplx burgess_complete_sum(const PrimeModulus& q, u64 char_index, const ShiftTuple& b) {
  const u64 n = q.group_order();
  if (char_index == 0 || char_index >= n) throw InvalidArgument("burgess_complete_sum: need 0 < m < q-1");
  const u64 qq = q.q();
  std::vector<u64> shifts(b.b.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) shifts[i] = reduce(b.b[i], qq);
  std::vector<cplx> t(qq, 0.0);
  for (u64 r = 0; r < qq; ++r) {
    u64 idx = 0;
    bool zero = false;
    for (int i = 0; i < 2 * b.l; ++i) {
      const u64 u = (r + shifts[i]) % qq;
      if (u == 0) {
        zero = true;
        break;
      }
      const u64 lg = q.dlog(u);
      idx = i < b.l ? (idx + lg) % n : (idx + n - lg) % n;
    }
    if (!zero) t[r] = unit_root(static_cast<i64>(mulmod(char_index, idx, n)), static_cast<i64>(n));
  }
  return pairwise_sum(t);
}

std::vector<cplx> burgess_complete_sums(const PrimeModulus& q, const ShiftTuple& b) {
  const u64 n = q.group_order(), qq = q.q();
  std::vector<u64> shifts(b.b.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) shifts[i] = reduce(b.b[i], qq);
  std::vector<cplx> hist(n, 0.0);
  for (u64 r = 0; r < qq; ++r) {
    u64 idx = 0;
    bool zero = false;
    for (int i = 0; i < 2 * b.l; ++i) {
      u64 u = r + shifts[i];
      if (u >= qq) u -= qq;
      if (u == 0) {
        zero = true;
        break;
      }
      const u64 lg = q.dlog(u);
      idx = i < b.l ? idx + lg : idx + n - lg;
      if (idx >= n) idx -= n;
    }
    if (!zero) hist[idx] += 1.0;
  }
  return dft(hist, +1);
}

u64 burgess_exponent_gcd(const PrimeModulus& q, const ShiftTuple& b) {
  std::map<u64, i64> exponent;
  for (int i = 0; i < 2 * b.l; ++i) exponent[reduce(b.b[i], q.q())] += i < b.l ? 1 : -1;
  u64 g = 0;
  for (const auto& kv : exponent) g = std::gcd(g, static_cast<u64>(kv.second < 0 ? -kv.second : kv.second));
  return g;
}

TupleClassification classify_tuple(const PrimeModulus& q, u64 char_index, const ShiftTuple& b) {
  const u64 n = q.group_order();
  if (char_index == 0 || char_index >= n) throw InvalidArgument("classify_tuple: need 0 < m < q-1");
  std::map<u64, i64> exponent;
  for (int i = 0; i < 2 * b.l; ++i) exponent[reduce(b.b[i], q.q())] += i < b.l ? 1 : -1;
  TupleClassification c;
  c.character_order = n / std::gcd(char_index, n);
  const i64 ord = static_cast<i64>(c.character_order);
  c.multiset_equal = std::all_of(exponent.begin(), exponent.end(), [](const auto& kv) { return kv.second == 0; });
  c.bad = std::all_of(exponent.begin(), exponent.end(), [ord](const auto& kv) { return kv.second % ord == 0; });
  return c;
}

ShiftSums shift_sums(const TraceFunction& k, i64 r, const ShiftTuple& b) {
  const u64 q = k.modulus();
  const int l = b.l;
  std::vector<u64> u(2 * l);
  for (int i = 0; i < 2 * l; ++i) u[i] = reduce(r + b.b[i], q);
  ShiftSums s;
  s.K = 1.0;
  for (int i = 0; i < l; ++i) s.K *= k[u[i]] * std::conj(k[u[i + l]]);
  // Positions s * u_i mod q advance by u_i per step.
  std::vector<u64> pos(2 * l, 0);
  std::vector<cplx> t(q);
  for (u64 sc = 0; sc < q; ++sc) {
    cplx prod = 1.0;
    for (int i = 0; i < l; ++i) prod *= k[pos[i]] * std::conj(k[pos[i + l]]);
    t[sc] = prod;
    for (int i = 0; i < 2 * l; ++i) {
      pos[i] += u[i];
      if (pos[i] >= q) pos[i] -= q;
    }
  }
  s.R = pairwise_sum(t);
  return s;
}

namespace {

// q^{-1/2} sum_{x != 0} e_q(x + c/x)
cplx kl2_at(const PrimeModulus& q, u64 c) {
  cplx acc = 0.0;
  for (u64 x = 1; x < q.q(); ++x) acc += q.e_q(static_cast<i64>((x + mulmod(c, q.inverse(x), q.q())) % q.q()));
  return acc / std::sqrt(static_cast<double>(q.q()));
}

}  // namespace

ShiftKloostermanCandidates shift_kloosterman_candidates(const PrimeModulus& q, i64 r, const ShiftTuple& b) {
  const u64 qq = q.q();
  const TraceFunction k = kloosterman_phase(q, 1, 1);
  ShiftKloostermanCandidates c;
  c.R = shift_sums(k, r, b).R;
  const int l = b.l;
  u64 A = 0, B = 0;
  bool invertible = true;
  for (int i = 0; i < l; ++i) {
    const u64 u = reduce(r + b.b[i], qq), v = reduce(r + b.b[i + l], qq);
    if (u == 0 || v == 0) {
      invertible = false;
      break;
    }
    A = (A + q.inverse(u) + qq - q.inverse(v)) % qq;
    B = (B + reduce(b.b[i] - b.b[i + l], qq)) % qq;
  }
  c.A = A;
  c.B = B;
  c.defined = invertible && A != 0 && B != 0;
  if (!c.defined) return c;
  const double sq = std::sqrt(static_cast<double>(qq));
  c.product_form = sq * kl2_at(q, mulmod(A, B, qq));
  c.quotient_form = sq * kl2_at(q, mulmod(A, q.inverse(B), qq));
  c.delta_product = std::abs(c.R - c.product_form);
  c.delta_quotient = std::abs(c.R - c.quotient_form);
  return c;
}

bool shift_tuple_generic(const ShiftTuple& b) {
  std::vector<i64> first(b.b.begin(), b.b.begin() + b.l), second(b.b.begin() + b.l, b.b.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  if (first == second) return false;
  i64 s = 0;
  for (int i = 0; i < b.l; ++i) s += b.b[i] - b.b[i + b.l];
  return s != 0;
}

double type2_complete_sum(const TraceFunction& k, const ShiftTuple& b) {
  const u64 q = k.modulus();
  std::vector<double> rr(q), kk(q);
  for (u64 r = 0; r < q; ++r) {
    const ShiftSums s = shift_sums(k, static_cast<i64>(r), b);
    rr[r] = std::norm(s.R);
    kk[r] = std::norm(s.K);
  }
  return pairwise_sum(rr) - static_cast<double>(q) * pairwise_sum(kk);
}

// ---------------------------------------------------------------------------

u64 kloosterman_energy(u64 q) {
  if (!is_prime(q) || q < 3) throw InvalidModulus("kloosterman_energy: q must be an odd prime");
  if (q > 5000) throw CapacityError("kloosterman_energy: q > 5000");
  std::vector<u64> inv(q, 0);
  inv[1] = 1;
  for (u64 i = 2; i < q; ++i) inv[i] = (q - (q / i) * inv[q % i] % q) % q;
  std::vector<u32> count(q * q, 0);
  for (u64 x1 = 1; x1 < q; ++x1)
    for (u64 x2 = 1; x2 < q; ++x2) ++count[((x1 + x2) % q) * q + (inv[x1] + inv[x2]) % q];
  u64 total = 0;
  for (u32 c : count) total += static_cast<u64>(c) * c;
  return total;
}

u64 kloosterman_fourth_moment_exact(u64 q) {
  using i128 = __int128;
  const i128 T = kloosterman_energy(q);
  const i128 qm = static_cast<i128>(q) - 1;
  const i128 num = static_cast<i128>(q) * q * T - qm * qm * qm * qm - 2 * qm;
  if (num % qm != 0) throw Error("kloosterman_fourth_moment_exact: count not divisible by q - 1");
  return static_cast<u64>(num / qm);
}

u64 kloosterman_fourth_moment_closed_form(u64 q) { return 2 * q * q * q - 3 * q * q - 3 * q - 1; }

}  // namespace tracefn
