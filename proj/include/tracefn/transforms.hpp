#pragma once

#include <span>
#include <vector>

#include "tracefn/common.hpp"
#include "tracefn/trace_function.hpp"

namespace tracefn {

inline constexpr u64 kMaxDftLength = 10'000'000;

/// out[y] = sum_x in[x] exp(direction * 2 pi i x y / N), any N >= 1.
/// Power-of-two lengths use radix-2 directly; all others go through a
/// Bluestein chirp-z convolution. Plans are cached per (N, direction).
std::vector<cplx> dft(std::span<const cplx> in, int direction);

/// Values indexed by character index m, for chi_m(g^j) = exp(2 pi i m j / (q-1)).
struct CharacterSpectrum {
  u64 q = 0;
  std::vector<cplx> values;
};

/// K^(y) = q^{-1/2} sum_x K(x) e_q(sign * x y).
TraceFunction fourier(const TraceFunction& k, int sign = -1);

/// (K1 * K2)(x) = q^{-1/2} sum_{x1 x2 = x} K1(x1) K2(x2) on F_q^x, 0 at 0.
TraceFunction mult_convolution(const TraceFunction& k1, const TraceFunction& k2);

/// Kl_k(a; q) for every a, as the k-fold convolution power of e_q(x).
TraceFunction hyper_kloosterman_all(const PrimeModulus& q, int k);

/// eps_chi(a) = q^{-1/2} sum_{x != 0} chi_m(x) e_q(a x), direct O(q).
cplx gauss_sum(const PrimeModulus& q, u64 char_index, i64 a);

/// eps_{chi_m}(a) for all m in one length q-1 transform.
std::vector<cplx> gauss_sums_at(const PrimeModulus& q, i64 a);

/// K~(m) = (q-1)^{-1/2} sum_{x != 0} K(x) chi_m(x).
CharacterSpectrum mellin(const TraceFunction& k);

/// Inverse of mellin on F_q^x; the value at 0 is set to 0.
TraceFunction inverse_mellin(const CharacterSpectrum& spectrum, const PrimeModulus& q);

/// K_check(n) = q^{-1/2} sum_{h != 0} F^+K(h) e_q(h^-1 n), F^+ = fourier(., +1).
TraceFunction voronoi_transform(const TraceFunction& k);

}  // namespace tracefn
