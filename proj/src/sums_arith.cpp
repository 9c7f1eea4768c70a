#include <cmath>
#include <numeric>
#include <string>

#include "tracefn/parallel.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

namespace tracefn {

cplx prime_sum(const TraceFunction& k, u64 X, const ArithmeticTables& tables, const SmoothBump* v) {
  const u64 need = v ? 2 * X : X;
  if (need > tables.limit()) {
    throw InvalidArgument("prime_sum: range " + std::to_string(need) + " exceeds sieve limit " +
                          std::to_string(tables.limit()));
  }
  std::vector<cplx> t;
  for (u32 p : tables.primes()) {
    if (p > need) break;
    if (v) {
      const double w = (*v)(static_cast<double>(p) / static_cast<double>(X));
      if (w != 0.0) t.push_back(w * k.at(p));
    } else {
      t.push_back(k.at(p));
    }
  }
  return t.empty() ? cplx{0.0} : pairwise_sum(t);
}

u64 heath_brown_cutoff(int J, u64 X) {
  if (J < 1) throw InvalidArgument("Heath-Brown: J must be >= 1");
  auto pow_le = [&](u64 m) {
    unsigned __int128 p = 1;
    for (int i = 0; i < J; ++i) {
      p *= m;
      if (p > X) return false;
    }
    return true;
  };
  u64 m = static_cast<u64>(std::floor(std::pow(static_cast<double>(X), 1.0 / J)));
  while (m > 0 && !pow_le(m)) --m;
  while (pow_le(m + 1)) ++m;
  return m;
}

std::vector<double> heath_brown_table(int J, u64 X, u64 limit) {
  if (limit > 1'000'001) throw CapacityError("Heath-Brown table beyond n = 10^6");
  if (limit < 2) return std::vector<double>(limit, 0.0);
  const u64 Z = heath_brown_cutoff(J, X);
  const ArithmeticTables tabs = sieve_tables(std::max<u64>(limit, 2));
  const std::size_t L = limit;

  // f -> mu_Z * f
  auto mu_z_conv = [&](const std::vector<double>& f) {
    std::vector<double> g(L, 0.0);
    for (u64 m = 1; m <= Z && m < L; ++m) {
      const int mu = tabs.mu(m);
      if (mu == 0) continue;
      for (u64 r = 1; m * r < L; ++r) g[m * r] += mu * f[r];
    }
    return g;
  };
  // f -> 1 * f
  auto one_conv = [&](const std::vector<double>& f) {
    std::vector<double> g(L, 0.0);
    for (u64 d = 1; d < L; ++d)
      for (u64 r = 1; d * r < L; ++r) g[d * r] += f[r];
    return g;
  };

  std::vector<double> log_n(L, 0.0);
  for (u64 n = 1; n < L; ++n) log_n[n] = std::log(static_cast<double>(n));

  // T_1 = mu_Z * log, T_j = mu_Z * 1 * T_{j-1}
  std::vector<double> rhs(L, 0.0);
  std::vector<double> t = mu_z_conv(log_n);
  double binom = 1.0;
  for (int j = 1; j <= J; ++j) {
    if (j > 1) t = mu_z_conv(one_conv(t));
    binom = binom * (J - j + 1) / j;
    const double coef = -((j % 2 == 0) ? 1.0 : -1.0) * binom;
    for (u64 n = 1; n < L; ++n) rhs[n] += coef * t[n];
  }
  return rhs;
}

HeathBrownCheck heath_brown_check(u64 n, int J, u64 X, const ArithmeticTables& tables) {
  if (n < 1) throw InvalidArgument("heath_brown_check: n must be >= 1");
  if (n > 1'000'000) throw CapacityError("heath_brown_check: n > 10^6");
  if (n >= 2 * X) throw InvalidArgument("heath_brown_check: need n < 2X");
  if (n > tables.limit()) throw InvalidArgument("heath_brown_check: n beyond sieve limit");
  const std::vector<double> rhs = heath_brown_table(J, X, n + 1);
  HeathBrownCheck c;
  c.lhs = tables.lambda(n);
  c.rhs = rhs[n];
  c.delta = std::abs(c.lhs - c.rhs);
  return c;
}

DiscrepancyReport divisor_in_ap(int k, u64 X, u64 q, i64 a, const ArithmeticTables& tables) {
  if (k != 2 && k != 3) throw InvalidArgument("divisor_in_ap: k must be 2 or 3");
  if (X > tables.limit()) throw InvalidArgument("divisor_in_ap: X beyond sieve limit");
  if (q < 2) throw InvalidArgument("divisor_in_ap: q must be >= 2");
  const u64 ar = reduce(a, q);
  if (std::gcd(ar, q) != 1) throw InvalidArgument("divisor_in_ap: gcd(a, q) != 1");
  u64 s_ap = 0, s_coprime = 0;
  for (u64 n = 1; n <= X; ++n) {
    const u64 d = k == 2 ? tables.d2(n) : tables.d3(n);
    const u64 r = n % q;
    if (r == ar) s_ap += d;
    if (std::gcd(r, q) == 1) s_coprime += d;
  }
  u64 phi = q;
  for (const auto& [p, e] : factorize(q)) phi = phi / p * (p - 1);
  DiscrepancyReport rep;
  rep.k = k;
  rep.X = X;
  rep.q = q;
  rep.a = ar;
  rep.progression_sum = static_cast<double>(s_ap);
  rep.coprime_sum = static_cast<double>(s_coprime);
  rep.phi_q = phi;
  rep.discrepancy = rep.progression_sum - rep.coprime_sum / static_cast<double>(phi);
  rep.scale = static_cast<double>(X) / static_cast<double>(q);
  const double logx = std::log(static_cast<double>(std::max<u64>(X, 3)));
  rep.ratio = std::abs(rep.discrepancy) / (rep.scale / logx);
  return rep;
}

cplx smoothed_product_sum(const TraceFunction& k, int dims, i64 a, std::span<const double> Ns,
                          const SmoothBump& v) {
  if (dims != 2 && dims != 3) throw InvalidArgument("smoothed_product_sum: dims must be 2 or 3");
  if (Ns.size() != static_cast<std::size_t>(dims)) throw InvalidArgument("smoothed_product_sum: need one N per variable");
  double volume = 1.0;
  for (double N : Ns) {
    if (!(N > 0)) throw InvalidArgument("smoothed_product_sum: N must be positive");
    volume *= N;
  }
  if (volume > 1e8) throw CapacityError("smoothed_product_sum: product of lengths exceeds 1e8");
  const u64 q = k.modulus();

  struct Axis {
    std::vector<u64> n;
    std::vector<double> w;
  };
  std::vector<Axis> axes(dims);
  for (int d = 0; d < dims; ++d) {
    const double N = Ns[d];
    const i64 lo = static_cast<i64>(std::floor(N)) + 1;
    const i64 hi = static_cast<i64>(std::ceil(2 * N)) - 1;
    for (i64 n = lo; n <= hi; ++n) {
      axes[d].n.push_back(reduce(n, q));
      axes[d].w.push_back(v(static_cast<double>(n) / N));
    }
    if (axes[d].n.empty()) return 0.0;
  }
  const u64 ar = reduce(a, q);
  std::vector<cplx> outer(axes[0].n.size());
  for (std::size_t i = 0; i < axes[0].n.size(); ++i) {
    const u64 m1 = mulmod(ar, axes[0].n[i], q);
    std::vector<cplx> mid(axes[1].n.size());
    for (std::size_t j = 0; j < axes[1].n.size(); ++j) {
      const u64 m2 = mulmod(m1, axes[1].n[j], q);
      if (dims == 2) {
        mid[j] = axes[1].w[j] * k[m2];
      } else {
        std::vector<cplx> inner(axes[2].n.size());
        for (std::size_t l = 0; l < inner.size(); ++l) inner[l] = axes[2].w[l] * k[mulmod(m2, axes[2].n[l], q)];
        mid[j] = axes[1].w[j] * pairwise_sum(inner);
      }
    }
    outer[i] = axes[0].w[i] * pairwise_sum(mid);
  }
  return pairwise_sum(outer);
}

cplx smoothed_product_sum_dual(const TraceFunction& k, i64 a, double N1, double N2, const SmoothBump& v,
                               double trunc_factor) {
  const auto& f = k.field();
  const u64 q = f.q();
  const double qd = static_cast<double>(q);
  const TraceFunction kh = fourier(k, +1);
  const i64 H = static_cast<i64>(std::floor(trunc_factor * qd / N2));
  std::vector<cplx> vh(2 * H + 1);
  for (i64 h = -H; h <= H; ++h) vh[h + H] = v.fourier(static_cast<double>(h) * N2 / qd);

  // Inner sum over n2 of K(b n2) V(n2/N2) with b = a n1; the Fourier
  // transform of x -> K(b x) at h is K^(h / b).
  const i64 lo = static_cast<i64>(std::floor(N1)) + 1;
  const i64 hi = static_cast<i64>(std::ceil(2 * N1)) - 1;
  std::vector<cplx> outer;
  for (i64 n1 = lo; n1 <= hi; ++n1) {
    const u64 b = mulmod(reduce(a, q), reduce(n1, q), q);
    if (b == 0) throw InvalidArgument("smoothed_product_sum_dual: a n1 divisible by q");
    const u64 binv = f.inverse(b);
    std::vector<cplx> t(vh.size());
    for (i64 h = -H; h <= H; ++h) t[h + H] = kh[mulmod(reduce(h, q), binv, q)] * vh[h + H];
    outer.push_back(v(static_cast<double>(n1) / N1) * (N2 / std::sqrt(qd)) * pairwise_sum(t));
  }
  return outer.empty() ? cplx{0.0} : pairwise_sum(outer);
}

}  // namespace tracefn
