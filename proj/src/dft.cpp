#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "tracefn/transforms.hpp"

namespace tracefn {
namespace {

// Iterative radix-2 FFT, forward sign = direction.
struct Radix2Plan {
  std::size_t n = 0;
  std::vector<std::size_t> rev;
  std::vector<cplx> tw;  // exp(2 pi i k / n), k < n/2

  explicit Radix2Plan(std::size_t len) : n(len), rev(len), tw(len / 2) {
    const int bits = std::countr_zero(len);
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      rev[i] = r;
    }
    for (std::size_t k = 0; k < len / 2; ++k) {
      const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(len);
      tw[k] = {std::cos(a), std::sin(a)};
    }
  }

  void run(std::vector<cplx>& a, int direction) const {
    for (std::size_t i = 0; i < n; ++i)
      if (i < rev[i]) std::swap(a[i], a[rev[i]]);
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          cplx w = tw[j * stride];
          if (direction < 0) w = std::conj(w);
          const cplx u = a[start + j];
          const cplx v = a[start + j + half] * w;
          a[start + j] = u + v;
          a[start + j + half] = u - v;
        }
      }
    }
  }
};

struct BluesteinPlan {
  std::size_t n = 0;
  std::shared_ptr<const Radix2Plan> fft;
  std::vector<cplx> chirp;     // exp(direction * pi i k^2 / n)
  std::vector<cplx> kernel_f;  // forward FFT of the conjugate chirp, wrapped
};

std::mutex g_mutex;
std::map<std::size_t, std::shared_ptr<const Radix2Plan>> g_radix;
std::map<std::pair<std::size_t, int>, std::shared_ptr<const BluesteinPlan>> g_bluestein;
constexpr std::size_t kMaxCachedPlans = 64;

std::shared_ptr<const Radix2Plan> radix_plan(std::size_t m) {
  std::lock_guard lock(g_mutex);
  auto it = g_radix.find(m);
  if (it != g_radix.end()) return it->second;
  if (g_radix.size() >= kMaxCachedPlans) g_radix.clear();
  auto p = std::make_shared<const Radix2Plan>(m);
  g_radix.emplace(m, p);
  return p;
}

std::shared_ptr<const BluesteinPlan> bluestein_plan(std::size_t n, int direction) {
  {
    std::lock_guard lock(g_mutex);
    auto it = g_bluestein.find({n, direction});
    if (it != g_bluestein.end()) return it->second;
  }
  auto p = std::make_shared<BluesteinPlan>();
  p->n = n;
  const std::size_t m = std::bit_ceil(2 * n - 1);
  p->fft = radix_plan(m);
  p->chirp.resize(n);
  const u64 two_n = 2 * static_cast<u64>(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle small.
    const u64 k2 = static_cast<u64>((static_cast<unsigned __int128>(k) * k) % two_n);
    const double a = direction * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    p->chirp[k] = {std::cos(a), std::sin(a)};
  }
  p->kernel_f.assign(m, 0.0);
  p->kernel_f[0] = std::conj(p->chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    p->kernel_f[k] = std::conj(p->chirp[k]);
    p->kernel_f[m - k] = std::conj(p->chirp[k]);
  }
  p->fft->run(p->kernel_f, -1);

  std::lock_guard lock(g_mutex);
  if (g_bluestein.size() >= kMaxCachedPlans) g_bluestein.clear();
  g_bluestein.emplace(std::pair{n, direction}, p);
  return p;
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> in, int direction) {
  const std::size_t n = in.size();
  if (direction != 1 && direction != -1) throw InvalidArgument("dft: direction must be +1 or -1");
  if (n == 0) throw InvalidArgument("dft: empty input");
  if (n > kMaxDftLength) {
    throw CapacityError("dft length " + std::to_string(n) + " exceeds " + std::to_string(kMaxDftLength));
  }
  if (n == 1) return {in[0]};
  if (std::has_single_bit(n)) {
    std::vector<cplx> a(in.begin(), in.end());
    radix_plan(n)->run(a, direction);
    return a;
  }
  const auto plan = bluestein_plan(n, direction);
  const std::size_t m = plan->fft->n;
  std::vector<cplx> a(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) a[k] = in[k] * plan->chirp[k];
  plan->fft->run(a, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= plan->kernel_f[i];
  plan->fft->run(a, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<cplx> out(n);
  for (std::size_t y = 0; y < n; ++y) out[y] = a[y] * inv_m * plan->chirp[y];
  return out;
}

}  // namespace tracefn
