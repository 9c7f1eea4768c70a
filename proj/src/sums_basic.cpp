#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tracefn/parallel.hpp"
#include "tracefn/random.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

namespace tracefn {

cplx interval_sum(const TraceFunction& k, i64 a, i64 b) {
  const i64 q = static_cast<i64>(k.modulus());
  if (a < 0 || b < a || b >= q) {
    throw InvalidArgument("interval_sum: need 0 <= a <= b < q, got [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  return pairwise_sum(k.values().subspan(a, b - a + 1));
}

namespace {

struct Pt {
  double x, y;
  u64 idx;
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Prefix path P(0) = 0, P(n) = K(0) + ... + K(n-1), n = 0..q.
std::vector<cplx> prefix_path(const TraceFunction& k) {
  std::vector<cplx> p(k.size() + 1, 0.0);
  for (std::size_t n = 0; n < k.size(); ++n) p[n + 1] = p[n] + k[n];
  return p;
}

ExtremalInterval from_pair(const std::vector<cplx>& p, u64 i, u64 j, std::string method) {
  if (i > j) std::swap(i, j);
  ExtremalInterval r;
  r.max_abs = std::abs(p[j] - p[i]);
  r.a = i;
  r.b = j == i ? i : j - 1;
  r.method = std::move(method);
  return r;
}

}  // namespace

ExtremalInterval pv_extremal_scan(const TraceFunction& k) {
  const std::vector<cplx> p = prefix_path(k);
  std::vector<Pt> pts(p.size());
  for (u64 n = 0; n < p.size(); ++n) pts[n] = {p[n].real(), p[n].imag(), n};
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });

  // Andrew's monotone chain, counter-clockwise, collinear points dropped.
  std::vector<Pt> hull(2 * pts.size());
  std::size_t h = 0;
  for (const Pt& pt : pts) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], pt) <= 0) --h;
    hull[h++] = pt;
  }
  for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h > 1 ? h - 1 : h);

  const std::size_t n = hull.size();
  u64 bi = hull[0].idx, bj = hull[0].idx;
  double best = -1.0;
  auto consider = [&](const Pt& a, const Pt& b) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    if (d > best) {
      best = d;
      bi = a.idx;
      bj = b.idx;
    }
  };
  if (n <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) consider(hull[i], hull[j]);
  } else {
    // Rotating calipers over antipodal pairs.
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ni = (i + 1) % n;
      for (std::size_t guard = 0; guard < n; ++guard) {
        const std::size_t nj = (j + 1) % n;
        const double ex = hull[ni].x - hull[i].x, ey = hull[ni].y - hull[i].y;
        const double fx = hull[nj].x - hull[j].x, fy = hull[nj].y - hull[j].y;
        if (ex * fy - ey * fx > 0) {
          j = nj;
        } else {
          break;
        }
      }
      consider(hull[i], hull[j]);
      consider(hull[ni], hull[j]);
    }
  }
  return from_pair(p, bi, bj, "hull-diameter");
}

ExtremalInterval pv_extremal_bruteforce(const TraceFunction& k) {
  if (k.size() > 20000) throw CapacityError("pv_extremal_bruteforce: q > 20000");
  const std::vector<cplx> p = prefix_path(k);
  double best = -1.0;
  u64 bi = 0, bj = 0;
  for (u64 i = 0; i < p.size(); ++i) {
    for (u64 j = i + 1; j < p.size(); ++j) {
      const double d = std::norm(p[j] - p[i]);
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  return from_pair(p, bi, bj, "exhaustive");
}

FkmrrsResult fkmrrs_scan(const TraceFunction& k, int samples, u64 seed) {
  const u64 q = k.modulus();
  const double sq = std::sqrt(static_cast<double>(q));
  const u64 min_len = static_cast<u64>(std::floor(sq)) + 1;
  if (min_len > q) throw InvalidArgument("fkmrrs_scan: modulus too small");
  const std::vector<cplx> p = prefix_path(k);
  std::mt19937_64 rng(seed);
  FkmrrsResult r;
  r.samples = samples;
  r.seed = seed;
  for (int s = 0; s < samples; ++s) {
    const u64 len = min_len + uniform_below(rng, q - min_len + 1);
    const u64 a = uniform_below(rng, q - len + 1);
    const double val = std::abs(p[a + len] - p[a]);
    const double ratio = val / (sq * (1.0 + std::log(static_cast<double>(len) / sq)));
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.a = a;
      r.b = a + len - 1;
    }
  }
  return r;
}

cplx smoothed_sum(const TraceFunction& k, const SmoothBump& v, double N) {
  if (!(N > 0)) throw InvalidArgument("smoothed_sum: N must be positive");
  const i64 lo = static_cast<i64>(std::floor(N)) + 1;
  const i64 hi = static_cast<i64>(std::ceil(2 * N)) - 1;
  if (hi < lo) return 0.0;
  std::vector<cplx> terms;
  terms.reserve(hi - lo + 1);
  for (i64 n = lo; n <= hi; ++n) terms.push_back(k.at(n) * v(static_cast<double>(n) / N));
  return pairwise_sum(terms);
}

PoissonCheck poisson_dual_sum(const TraceFunction& k, const SmoothBump& v, double N, double trunc_factor) {
  const double q = static_cast<double>(k.modulus());
  const TraceFunction kh = fourier(k, +1);
  PoissonCheck c;
  c.lhs = smoothed_sum(k, v, N);
  c.truncation = static_cast<i64>(std::floor(trunc_factor * q / N));
  std::vector<cplx> terms;
  terms.reserve(2 * c.truncation + 1);
  for (i64 h = -c.truncation; h <= c.truncation; ++h) {
    terms.push_back(kh.at(h) * v.fourier(static_cast<double>(h) * N / q));
  }
  c.rhs = pairwise_sum(terms) * (N / std::sqrt(q));
  c.delta = std::abs(c.lhs - c.rhs);
  return c;
}

cplx correlation(const TraceFunction& k1, const TraceFunction& k2) {
  if (k1.modulus() != k2.modulus()) throw InvalidArgument("correlation: modulus mismatch");
  std::vector<cplx> t(k1.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = k1[x] * std::conj(k2[x]);
  return pairwise_sum(t) / static_cast<double>(k1.modulus());
}

cplx multicorrelation(const TraceFunction& k, std::span<const GammaFactor> gammas, i64 h) {
  const u64 q = k.modulus();
  for (const auto& g : gammas) {
    if (g.gamma.modulus() != q) throw InvalidArgument("multicorrelation: PGL2 modulus mismatch");
  }
  const u64 hr = reduce(h, q);
  std::vector<cplx> t(q, 0.0);
  for (u64 x = 0; x < q; ++x) {
    cplx prod = unit_root(static_cast<i64>(mulmod(x, hr, q)), static_cast<i64>(q));
    bool skip = false;
    for (const auto& g : gammas) {
      const auto y = g.gamma.apply(x);
      if (!y) {
        skip = true;
        break;
      }
      prod *= g.conjugated ? std::conj(k[*y]) : k[*y];
    }
    if (!skip) t[x] = prod;
  }
  return pairwise_sum(t) / static_cast<double>(q);
}

double moment(const TraceFunction& k, int l) {
  if (l < 0) throw InvalidArgument("moment: l must be >= 0");
  std::vector<double> t(k.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = l == 0 ? 1.0 : std::pow(std::norm(k[x]), l);
  return pairwise_sum(t) / static_cast<double>(k.modulus());
}

cplx dilated_product_sum(const TraceFunction& k, std::span<const i64> ls) {
  const u64 q = k.modulus();
  std::vector<u64> inv;
  for (i64 l : ls) {
    const auto i = inverse_mod(reduce(l, q), q);
    if (!i) throw InvalidArgument("dilated_product_sum: dilation factor not invertible");
    inv.push_back(*i);
  }
  std::vector<cplx> t(q, 0.0);
  for (u64 r = 1; r < q; ++r) {
    cplx prod = 1.0;
    for (u64 i : inv) prod *= k[mulmod(i, r, q)];
    t[r] = prod;
  }
  return pairwise_sum(t);
}

// ---------------------------------------------------------------------------

CoefficientSequence make_coefficients(i64 offset, std::vector<cplx> values) {
  if (offset < 1) throw InvalidArgument("coefficient sequence offset must be >= 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > 1.0 + 1e-12) {
      throw InvalidArgument("coefficient " + std::to_string(offset + static_cast<i64>(i)) + " exceeds 1 in modulus");
    }
  }
  return {offset, std::move(values)};
}

CoefficientSequence random_sign_coefficients(i64 offset, std::size_t length, u64 seed) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> v(length);
  for (auto& z : v) z = (rng() >> 63) ? 1.0 : -1.0;
  return make_coefficients(offset, std::move(v));
}

BilinearResult bilinear_form(const TraceFunction& k, const CoefficientSequence& alpha,
                             const CoefficientSequence& beta) {
  const u64 q = k.modulus();
  const double M = static_cast<double>(alpha.values.size());
  const double N = static_cast<double>(beta.values.size());
  if (alpha.values.empty() || beta.values.empty()) throw InvalidArgument("bilinear_form: empty coefficients");
  if (M >= q || N >= q) throw InvalidArgument("bilinear_form: need M, N < q");
  std::vector<cplx> rows(alpha.values.size());
  for (std::size_t i = 0; i < alpha.values.size(); ++i) {
    const u64 m = reduce(alpha.offset + static_cast<i64>(i), q);
    std::vector<cplx> t(beta.values.size());
    for (std::size_t j = 0; j < beta.values.size(); ++j) {
      const u64 n = reduce(beta.offset + static_cast<i64>(j), q);
      t[j] = beta.values[j] * k[mulmod(m, n, q)];
    }
    rows[i] = alpha.values[i] * pairwise_sum(t);
  }
  BilinearResult r;
  r.value = pairwise_sum(rows);
  double na = 0, nb = 0;
  for (auto z : alpha.values) na += std::norm(z);
  for (auto z : beta.values) nb += std::norm(z);
  const double qd = static_cast<double>(q);
  const double bound =
      std::sqrt(na) * std::sqrt(nb) * std::sqrt(M * N) * std::sqrt(1.0 / M + std::sqrt(qd) * std::log(qd) / N);
  r.bound_ratio = bound > 0 ? std::abs(r.value) / bound : 0.0;
  return r;
}

VdcResult vdc_sum(const TraceFunction& kp, const TraceFunction& kq, double N, const SmoothBump& v) {
  const double p = static_cast<double>(kp.modulus());
  const double q = static_cast<double>(kq.modulus());
  if (std::gcd(kp.modulus(), kq.modulus()) != 1) throw InvalidArgument("vdc_sum: moduli must be coprime");
  if (!(2 * N < p * q)) throw InvalidArgument("vdc_sum: need 2N < pq");
  const i64 lo = static_cast<i64>(std::floor(N)) + 1;
  const i64 hi = static_cast<i64>(std::ceil(2 * N)) - 1;
  std::vector<cplx> t;
  for (i64 n = lo; n <= hi; ++n) t.push_back(kp.at(n) * kq.at(n) * v(static_cast<double>(n) / N));
  VdcResult r;
  r.value = t.empty() ? cplx{0.0} : pairwise_sum(t);
  r.bound_ratio = std::abs(r.value) / (std::sqrt(N) * std::sqrt(p + std::sqrt(q)));
  r.optimal_ratio = std::abs(r.value) / (std::sqrt(N) * std::pow(p * q, 1.0 / 6.0));
  return r;
}

AbShiftResult ab_shift_sum(const TraceFunction& k, const CoefficientSequence& alpha, double N,
                           const SmoothBump& v, int l, double gamma, double C) {
  const double q = static_cast<double>(k.modulus());
  const double M = static_cast<double>(alpha.values.size());
  if (l < 1) throw InvalidArgument("ab_shift_sum: l must be >= 1");
  if (!(M * N < q)) throw InvalidArgument("ab_shift_sum: need M N < q");
  const i64 lo = static_cast<i64>(std::floor(N)) + 1;
  const i64 hi = static_cast<i64>(std::ceil(2 * N)) - 1;
  std::vector<double> w;
  for (i64 n = lo; n <= hi; ++n) w.push_back(v(static_cast<double>(n) / N));
  std::vector<cplx> rows(alpha.values.size(), 0.0);
  for (std::size_t i = 0; i < alpha.values.size(); ++i) {
    if (alpha.values[i] == 0.0) continue;
    const i64 m = alpha.offset + static_cast<i64>(i);
    std::vector<cplx> t(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) t[j] = w[j] * k.at(m * (lo + static_cast<i64>(j)));
    rows[i] = alpha.values[i] * (t.empty() ? cplx{0.0} : pairwise_sum(t));
  }
  AbShiftResult r;
  r.value = pairwise_sum(rows);
  r.bound = C * std::pow(q, gamma) * M * N * std::pow(N * N * M / std::pow(q, 1.0 + 1.0 / l), -1.0 / (2.0 * l));
  r.ratio = std::abs(r.value) / r.bound;
  return r;
}

}  // namespace tracefn
