#include "tracefn/transforms.hpp"

#include <cmath>
#include <string>

namespace tracefn {
namespace {

// u[j] = K(g^j), j = 0..q-2
std::vector<cplx> log_reindex(const TraceFunction& k) {
  const auto& f = k.field();
  const auto pw = f.power_table();
  std::vector<cplx> u(f.group_order());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = k[pw[j]];
  return u;
}

// Inverse of log_reindex; value at 0 is 0.
std::vector<cplx> exp_reindex(std::span<const cplx> u, const PrimeModulus& f) {
  const auto pw = f.power_table();
  std::vector<cplx> v(f.q(), 0.0);
  for (std::size_t j = 0; j < u.size(); ++j) v[pw[j]] = u[j];
  return v;
}

void require_same_field(const TraceFunction& a, const TraceFunction& b) {
  if (!(a.field() == b.field())) {
    throw InvalidArgument("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                          std::to_string(b.modulus()));
  }
}

}  // namespace

TraceFunction fourier(const TraceFunction& k, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("fourier: sign must be +1 or -1");
  const auto& f = k.field();
  std::vector<cplx> out = dft(k.values(), sign);
  const double norm = 1.0 / std::sqrt(static_cast<double>(f.q()));
  for (auto& z : out) z *= norm;
  TraceMeta meta;
  meta.family = "fourier" + std::string(sign > 0 ? "+" : "-") + "(" + k.meta().family + ")";
  meta.conductor = k.meta().conductor;
  return TraceFunction(f, std::move(out), meta);
}

TraceFunction mult_convolution(const TraceFunction& k1, const TraceFunction& k2) {
  require_same_field(k1, k2);
  const auto& f = k1.field();
  const std::size_t n = f.group_order();
  std::vector<cplx> a = dft(log_reindex(k1), -1);
  const std::vector<cplx> b = dft(log_reindex(k2), -1);
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
  std::vector<cplx> w = dft(a, +1);
  const double norm = 1.0 / (static_cast<double>(n) * std::sqrt(static_cast<double>(f.q())));
  for (auto& z : w) z *= norm;
  TraceMeta meta;
  meta.family = "conv(" + k1.meta().family + "," + k2.meta().family + ")";
  return TraceFunction(f, exp_reindex(w, f), meta);
}

TraceFunction hyper_kloosterman_all(const PrimeModulus& q, int k) {
  if (k < 2) throw InvalidArgument("hyper_kloosterman_all: k must be >= 2");
  if (q.q() > kMaxDftLength) throw CapacityError("hyper_kloosterman_all: q exceeds " + std::to_string(kMaxDftLength));
  const std::size_t n = q.group_order();
  const auto pw = q.power_table();
  const auto e = q.e_table();
  std::vector<cplx> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = e[pw[j]];
  std::vector<cplx> spec = dft(u, -1);
  // The k-fold cyclic convolution is the k-th power of the spectrum.
  for (auto& z : spec) {
    cplx p = z;
    for (int i = 1; i < k; ++i) p *= z;
    z = p;
  }
  std::vector<cplx> w = dft(spec, +1);
  const double norm = std::pow(static_cast<double>(q.q()), -(k - 1) / 2.0) / static_cast<double>(n);
  for (auto& z : w) z *= norm;
  if (k % 2 == 0) {
    for (auto& z : w) z = {z.real(), 0.0};
  }
  TraceMeta meta;
  meta.family = "kl" + std::to_string(k);
  meta.params["k"] = std::to_string(k);
  meta.real_valued = (k % 2 == 0);
  meta.sup_norm = static_cast<double>(k);
  meta.conductor = k + 3;
  meta.description = "hyper-Kloosterman sums Kl_k(a; q), zero at a = 0";
  return TraceFunction(q, exp_reindex(w, q), meta);
}

cplx gauss_sum(const PrimeModulus& q, u64 char_index, i64 a) {
  const u64 n = q.group_order();
  if (char_index >= n) throw InvalidArgument("gauss_sum: character index out of range");
  const u64 ar = reduce(a, q.q());
  const auto e = q.e_table();
  const auto pw = q.power_table();
  cplx acc = 0.0;
  for (u64 j = 0; j < n; ++j) {
    acc += unit_root(static_cast<i64>(mulmod(char_index, j, n)), static_cast<i64>(n)) * e[mulmod(ar, pw[j], q.q())];
  }
  return acc / std::sqrt(static_cast<double>(q.q()));
}

std::vector<cplx> gauss_sums_at(const PrimeModulus& q, i64 a) {
  const u64 n = q.group_order();
  const u64 ar = reduce(a, q.q());
  const auto e = q.e_table();
  const auto pw = q.power_table();
  std::vector<cplx> u(n);
  for (u64 j = 0; j < n; ++j) u[j] = e[mulmod(ar, pw[j], q.q())];
  std::vector<cplx> out = dft(u, +1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(q.q()));
  for (auto& z : out) z *= norm;
  return out;
}

CharacterSpectrum mellin(const TraceFunction& k) {
  const auto& f = k.field();
  CharacterSpectrum s;
  s.q = f.q();
  s.values = dft(log_reindex(k), +1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(f.group_order()));
  for (auto& z : s.values) z *= norm;
  return s;
}

TraceFunction inverse_mellin(const CharacterSpectrum& spectrum, const PrimeModulus& q) {
  if (spectrum.q != q.q() || spectrum.values.size() != q.group_order()) {
    throw InvalidArgument("inverse_mellin: spectrum does not match modulus");
  }
  std::vector<cplx> u = dft(spectrum.values, -1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(q.group_order()));
  for (auto& z : u) z *= norm;
  TraceMeta meta;
  meta.family = "inverse_mellin";
  return TraceFunction(q, exp_reindex(u, q), meta);
}

TraceFunction voronoi_transform(const TraceFunction& k) {
  const auto& f = k.field();
  const TraceFunction kp = fourier(k, +1);
  // sum_{h != 0} F(h) e(h^-1 n) = sum_{u != 0} F(u^-1) e(u n)
  std::vector<cplx> g(f.q(), 0.0);
  for (u64 u = 1; u < f.q(); ++u) g[u] = kp[f.inverse(u)];
  std::vector<cplx> out = dft(g, +1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(f.q()));
  for (auto& z : out) z *= norm;
  TraceMeta meta;
  meta.family = "voronoi(" + k.meta().family + ")";
  return TraceFunction(f, std::move(out), meta);
}

}  // namespace tracefn
