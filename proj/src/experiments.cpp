#include "tracefn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "tracefn/parallel.hpp"
#include "tracefn/random.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

namespace tracefn::experiments {

TraceFunction random_function(const PrimeModulus& q, u64 seed) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> v(q.q());
  for (auto& z : v) {
    const double re = 2.0 * uniform01(rng) - 1.0;
    const double im = 2.0 * uniform01(rng) - 1.0;
    z = {re, im};
  }
  TraceMeta meta;
  meta.family = "random";
  meta.params["seed"] = std::to_string(seed);
  meta.sup_norm = std::sqrt(2.0);
  meta.description = "seeded random function";
  return TraceFunction(q, std::move(v), std::move(meta));
}

std::vector<std::string> family_names() {
  return {"kl2", "kl3", "legendre", "inverse_phase", "kloosterman_phase", "quadratic_phase", "salie_real", "birch_t1"};
}

TraceFunction named_family(const std::string& name, const PrimeModulus& q) {
  const u64 qq = q.q();
  if (name == "kl2") return hyper_kloosterman_all(q, 2);
  if (name == "kl3") return hyper_kloosterman_all(q, 3);
  if (name == "legendre") return legendre_character(q);
  if (name == "inverse_phase") return additive_phase(q, RationalFunctionModQ(qq, {1}, {0, 1}));
  if (name == "kloosterman_phase") return kloosterman_phase(q, 1, 1);
  if (name == "quadratic_phase") return additive_phase(q, RationalFunctionModQ::polynomial(qq, {0, 0, 1}));
  if (name == "salie_real") return salie_real_family(q);
  if (name == "birch_t1") {
    return birch_family(q, RationalFunctionModQ::identity(qq), RationalFunctionModQ::constant(qq, 1));
  }
  throw InvalidArgument("unknown family '" + name + "'");
}

AngleSample birch_family_angles(const PrimeModulus& q) {
  const u64 qq = q.q();
  std::vector<u64> pts;
  for (u64 t = 0; t < qq; ++t) {
    const u64 disc = (4 * mulmod(mulmod(t, t, qq), t, qq) + 27) % qq;
    if (disc != 0) pts.push_back(t);
  }
  AngleSample s = extract_angles(named_family("birch_t1", q), AngleDomain::explicit_set(std::move(pts)));
  s.family = "birch_t1";
  return s;
}

// ---------------------------------------------------------------------------

double orthogonality_delta(const PrimeModulus& q) {
  const u64 qq = q.q(), n = q.group_order();
  const auto e = q.e_table();
  double worst = 0.0;
  // Row a of the additive Gram matrix is the transform of x -> e_q(a x).
  std::vector<cplx> row(qq);
  for (u64 a = 0; a < qq; ++a) {
    for (u64 x = 0; x < qq; ++x) row[x] = e[mulmod(a, x, qq)];
    const auto g = dft(row, -1);
    for (u64 b = 0; b < qq; ++b) {
      const double target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g[b] / static_cast<double>(qq) - target));
    }
  }
  // Multiplicative side in log coordinates: chi_m(g^j) = e(m j / (q-1)).
  std::vector<cplx> roots(n);
  for (u64 j = 0; j < n; ++j) roots[j] = unit_root(static_cast<i64>(j), static_cast<i64>(n));
  std::vector<cplx> crow(n);
  for (u64 m = 0; m < n; ++m) {
    for (u64 j = 0; j < n; ++j) crow[j] = roots[mulmod(m, j, n)];
    const auto g = dft(crow, -1);
    for (u64 k = 0; k < n; ++k) {
      const double target = m == k ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g[k] / static_cast<double>(n) - target));
    }
  }
  return worst;
}

GaussDeltas gauss_deltas(const PrimeModulus& q, int samples, u64 seed) {
  const u64 qq = q.q(), n = q.group_order();
  GaussDeltas d;
  const auto eps1 = gauss_sums_at(q, 1);
  for (u64 m = 1; m < n; ++m) d.modulus = std::max(d.modulus, std::abs(std::abs(eps1[m]) - 1.0));

  std::vector<u64> points;
  if (samples <= 0 || static_cast<u64>(samples) >= n) {
    for (u64 a = 1; a < qq; ++a) points.push_back(a);
  } else {
    std::set<u64> pts{1, qq - 1, q.generator()};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) pts.insert(1 + uniform_below(rng, qq - 1));
    points.assign(pts.begin(), pts.end());
  }
  for (u64 a : points) {
    const auto eps = gauss_sums_at(q, static_cast<i64>(a));
    const u64 la = q.dlog(a);
    for (u64 m = 0; m < n; ++m) {
      const cplx chi_bar = unit_root(-static_cast<i64>(mulmod(m, la, n)), static_cast<i64>(n));
      d.twist = std::max(d.twist, std::abs(eps[m] - chi_bar * eps1[m]));
    }
  }
  return d;
}

FourierDeltas fourier_deltas(const PrimeModulus& q, u64 seed, int count) {
  FourierDeltas d;
  const u64 qq = q.q();
  for (int i = 0; i < count; ++i) {
    const TraceFunction k = random_function(q, seed + static_cast<u64>(i));
    const TraceFunction kh = fourier(k, -1);
    const TraceFunction khh = fourier(kh, -1);
    for (u64 x = 0; x < qq; ++x) d.involution = std::max(d.involution, std::abs(khh[x] - k[(qq - x) % qq]));
    std::vector<double> a(qq), b(qq);
    for (u64 x = 0; x < qq; ++x) {
      a[x] = std::norm(k[x]);
      b[x] = std::norm(kh[x]);
    }
    const double sa = pairwise_sum(a), sb = pairwise_sum(b);
    d.plancherel = std::max(d.plancherel, std::abs(sa - sb) / sa);
  }
  return d;
}

double convolution_kl2_delta(const PrimeModulus& q) {
  const TraceFunction psi = additive_phase(q, RationalFunctionModQ::identity(q.q()));
  const TraceFunction conv = mult_convolution(psi, psi);
  double worst = std::abs(conv[0]);
  for (u64 a = 1; a < q.q(); ++a) {
    worst = std::max(worst, std::abs(conv[a] - kloosterman_direct(q, 2, static_cast<i64>(a))));
  }
  return worst;
}

double hyper_direct_delta(const PrimeModulus& q, int k) {
  const TraceFunction kl = hyper_kloosterman_all(q, k);
  double worst = 0.0;
  for (u64 a = 1; a < q.q(); ++a) {
    worst = std::max(worst, std::abs(kl[a] - kloosterman_direct(q, k, static_cast<i64>(a))));
  }
  return worst;
}

TwistedSweep twisted_multiplicativity_sweep(u64 c_max, std::span<const i64> as) {
  std::vector<u64> moduli;
  for (u64 c = 3; c <= c_max; c += 2)
    if (is_squarefree(c)) moduli.push_back(c);
  std::vector<double> worst(moduli.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const CompositeModulus cm = make_composite_modulus(moduli[i]);
    for (i64 a : as) {
      const auto r = composite_kloosterman(cm, a);
      worst[i] = std::max(worst[i], std::abs(r.direct - r.via_factors));
    }
  }
  TwistedSweep s;
  s.moduli = moduli.size();
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (worst[i] > s.delta) {
      s.delta = worst[i];
      s.worst_c = moduli[i];
    }
  }
  return s;
}

double voronoi_dirac_delta(const PrimeModulus& q, i64 a) {
  const u64 qq = q.q();
  const TraceFunction v = voronoi_transform(dirac(q, a));
  const double rq = std::sqrt(static_cast<double>(qq));
  double worst = std::abs(v[0] - cplx(-1.0 / static_cast<double>(qq), 0.0));
  for (u64 n = 1; n < qq; ++n) {
    const cplx expected = kloosterman_direct(q, 2, static_cast<i64>(mulmod(reduce(a, qq), n, qq))) / rq;
    worst = std::max(worst, std::abs(v[n] - expected));
  }
  return worst;
}

double heath_brown_delta(int J, u64 X) {
  const u64 limit = 2 * X;
  const ArithmeticTables t = sieve_tables(limit);
  const auto rhs = heath_brown_table(J, X, limit);
  double worst = 0.0;
  for (u64 n = 1; n < limit; ++n) worst = std::max(worst, std::abs(t.lambda(n) - rhs[n]));
  return worst;
}

double poisson_delta(const PrimeModulus& q, std::span<const std::string> families, const SmoothBump& v) {
  double worst = 0.0;
  const double qd = static_cast<double>(q.q());
  for (const auto& name : families) {
    const TraceFunction k = named_family(name, q);
    for (double N : {qd / 20.0, qd / 5.0}) worst = std::max(worst, poisson_dual_sum(k, v, N).delta);
  }
  return worst;
}

// ---------------------------------------------------------------------------

double sup_abs(const TraceFunction& k) {
  double m = 0.0;
  for (const auto& z : k.values()) m = std::max(m, std::abs(z));
  return m;
}

double pv_ratio(const TraceFunction& k) {
  const double q = static_cast<double>(k.modulus());
  return pv_extremal_scan(k).max_abs / (std::sqrt(q) * std::log(q));
}

double quasi_orthogonality_scaled(const PrimeModulus& q) {
  const TraceFunction kl = hyper_kloosterman_all(q, 2);
  double worst = 0.0;
  for (u64 a = 2; a < q.q(); ++a) {
    worst = std::max(worst, std::abs(correlation(dilate(kl, static_cast<i64>(a)), kl)));
  }
  return worst * std::sqrt(static_cast<double>(q.q()));
}

KhanNgo khan_ngo(const PrimeModulus& q, i64 L) {
  if (L < 1 || static_cast<u64>(L) >= q.q()) throw InvalidArgument("khan_ngo: need 1 <= L < q");
  const TraceFunction kl = hyper_kloosterman_all(q, 2);
  const double qd = static_cast<double>(q.q());
  KhanNgo r;
  r.paired_min_scaled = std::numeric_limits<double>::infinity();
  std::vector<i64> ls(4);
  for (ls[0] = 1; ls[0] <= L; ++ls[0])
    for (ls[1] = 1; ls[1] <= L; ++ls[1])
      for (ls[2] = 1; ls[2] <= L; ++ls[2])
        for (ls[3] = 1; ls[3] <= L; ++ls[3]) {
          auto s = ls;
          std::sort(s.begin(), s.end());
          const bool paired = s[0] == s[1] && s[2] == s[3];
          const cplx v = dilated_product_sum(kl, ls);
          if (paired) {
            ++r.paired;
            r.paired_min_scaled = std::min(r.paired_min_scaled, v.real() / qd);
          } else {
            ++r.unpaired;
            r.unpaired_max_scaled = std::max(r.unpaired_max_scaled, std::abs(v) / std::sqrt(qd));
          }
        }
  return r;
}

VdcPoint vdc_point(u64 p, u64 q, const SmoothBump& v) {
  if (p == q) throw InvalidArgument("vdc_point: p and q must differ");
  const PrimeModulus P(p), Q(q);
  const u64 qbar = P.inverse(q % p), pbar = Q.inverse(p % q);
  const TraceFunction kp = dilate(hyper_kloosterman_all(P, 2), static_cast<i64>(mulmod(qbar, qbar, p)));
  const TraceFunction kq = dilate(hyper_kloosterman_all(Q, 2), static_cast<i64>(mulmod(pbar, pbar, q)));
  VdcPoint pt;
  pt.p = p;
  pt.q = q;
  pt.N = std::floor(std::pow(static_cast<double>(p) * static_cast<double>(q), 2.0 / 3.0));
  const VdcResult r = vdc_sum(kp, kq, pt.N, v);
  pt.bound_ratio = r.bound_ratio;
  pt.optimal_ratio = r.optimal_ratio;
  return pt;
}

std::vector<std::pair<u64, u64>> vdc_grid(u64 c_max) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 p = 5; p <= 43; ++p) {
    if (!is_prime(p)) continue;
    u64 q = p * p + 1;
    while (!is_prime(q)) ++q;
    if (p * q <= c_max) out.emplace_back(p, q);
  }
  if (31 * 1009 <= c_max) out.emplace_back(31, 1009);
  return out;
}

BurgessSweep burgess_sweep(const PrimeModulus& q, int l, i64 lo, i64 hi, std::span<const u64> chars) {
  if (l < 1 || hi <= lo) throw InvalidArgument("burgess_sweep: empty box or l < 1");
  const u64 n = q.group_order();
  for (u64 m : chars)
    if (m == 0 || m >= n) throw InvalidArgument("burgess_sweep: character index must lie in 1..q-2");
  const u64 width = static_cast<u64>(hi - lo);
  u64 count = 1;
  for (int i = 0; i < 2 * l; ++i) {
    count *= width;
    if (count > 50'000'000) throw CapacityError("burgess_sweep: more than 5e7 tuples");
  }
  const double rq = std::sqrt(static_cast<double>(q.q()));
  const double bound = (2.0 * l - 1.0) * rq;
  struct Row {
    u64 bad = 0, good = 0, over = 0;
    double max_good = 0.0, max_bad = 0.0;
  };
  std::vector<Row> rows(count);
#pragma omp parallel for schedule(dynamic, 256) num_threads(thread_count())
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<i64> b(2 * l);
    u64 r = idx;
    for (int i = 2 * l - 1; i >= 0; --i) {
      b[i] = lo + static_cast<i64>(r % width);
      r /= width;
    }
    const ShiftTuple t = make_shift_tuple_in_box(std::move(b), lo, hi);
    const auto sums = burgess_complete_sums(q, t);
    const u64 g = burgess_exponent_gcd(q, t);
    Row& row = rows[idx];
    for (u64 m : chars) {
      const u64 order = n / std::gcd(m, n);
      const double v = std::abs(sums[m]);
      if (g % order == 0) {
        ++row.bad;
        row.max_bad = std::max(row.max_bad, v / rq);
      } else {
        ++row.good;
        row.max_good = std::max(row.max_good, v / rq);
        if (v > bound) ++row.over;
      }
    }
  }
  BurgessSweep s;
  s.tuples = count;
  for (const Row& row : rows) {
    s.bad += row.bad;
    s.good += row.good;
    s.good_over_bound += row.over;
    s.max_good_scaled = std::max(s.max_good_scaled, row.max_good);
    s.max_bad_scaled = std::max(s.max_bad_scaled, row.max_bad);
  }
  return s;
}

Type2Sweep type2_sweep(const TraceFunction& k, int l, i64 B) {
  if (l < 1 || B < 1) throw InvalidArgument("type2_sweep: need l >= 1 and B >= 1");
  u64 count = 1;
  for (int i = 0; i < 2 * l; ++i) {
    count *= static_cast<u64>(B);
    if (count > 1'000'000) throw CapacityError("type2_sweep: more than 1e6 tuples");
  }
  const double scale = std::pow(static_cast<double>(k.modulus()), 1.5);
  std::vector<double> vals(count, -1.0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<i64> b(2 * l);
    u64 r = idx;
    for (int i = 2 * l - 1; i >= 0; --i) {
      b[i] = B + static_cast<i64>(r % static_cast<u64>(B));
      r /= static_cast<u64>(B);
    }
    const ShiftTuple t = make_shift_tuple(std::move(b), B);
    if (shift_tuple_generic(t)) vals[idx] = std::abs(type2_complete_sum(k, t)) / scale;
  }
  Type2Sweep s;
  for (double v : vals) {
    if (v < 0) continue;
    ++s.tuples;
    s.max_scaled = std::max(s.max_scaled, v);
  }
  return s;
}

ShiftCaseReport shift_case_report(const PrimeModulus& q, const std::vector<std::vector<i64>>& tuples) {
  ShiftCaseReport rep;
  rep.min_delta_quotient = std::numeric_limits<double>::infinity();
  for (const auto& raw : tuples) {
    if (raw.empty()) throw InvalidArgument("shift_case_report: empty tuple");
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const ShiftTuple t = make_shift_tuple_in_box(raw, *lo, *hi + 1);
    for (u64 r = 0; r < q.q(); ++r) {
      const auto c = shift_kloosterman_candidates(q, static_cast<i64>(r), t);
      if (!c.defined) continue;
      ++rep.evaluated;
      rep.max_delta_product = std::max(rep.max_delta_product, c.delta_product);
      rep.min_delta_quotient = std::min(rep.min_delta_quotient, c.delta_quotient);
      if (c.delta_quotient <= 1e-8) ++rep.quotient_matches;
    }
  }
  return rep;
}

double prime_sum_ratio(const TraceFunction& k) {
  const u64 X = k.modulus();
  const ArithmeticTables t = sieve_tables(X);
  const double count = static_cast<double>(t.primes().size());
  return std::abs(prime_sum(k, X, t)) / count;
}

}  // namespace tracefn::experiments
