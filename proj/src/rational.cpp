#include <algorithm>
#include <string>

#include "tracefn/arith.hpp"

namespace tracefn {
namespace poly {

namespace {
void trim(PolyModQ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
}  // namespace

PolyModQ normalize(std::vector<i64> coeffs, u64 q) {
  PolyModQ p(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), p.begin(), [q](i64 c) { return reduce(c, q); });
  trim(p);
  return p;
}

u64 eval(const PolyModQ& p, u64 x, u64 q) {
  u64 acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = (mulmod(acc, x, q) + *it) % q;
  return acc;
}

PolyModQ derivative(const PolyModQ& p, u64 q) {
  PolyModQ d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(mulmod(p[i], i % q, q));
  trim(d);
  return d;
}

namespace {

// a mod b, b nonzero
PolyModQ remainder(PolyModQ a, const PolyModQ& b, u64 q) {
  const u64 lead_inv = *inverse_mod(b.back(), q);
  while (a.size() >= b.size() && !a.empty()) {
    const u64 factor = mulmod(a.back(), lead_inv, q);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + q - mulmod(factor, b[i], q)) % q;
    }
    trim(a);
  }
  return a;
}

PolyModQ make_monic(PolyModQ p, u64 q) {
  if (p.empty()) return p;
  const u64 inv = *inverse_mod(p.back(), q);
  for (auto& c : p) c = mulmod(c, inv, q);
  return p;
}

}  // namespace

PolyModQ gcd(PolyModQ a, PolyModQ b, u64 q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyModQ r = remainder(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), q);
}

PolyModQ divide_exact(const PolyModQ& a, const PolyModQ& b, u64 q) {
  if (b.empty()) throw InvalidArgument("polynomial division by zero");
  if (a.size() < b.size()) return {};
  PolyModQ rem = a;
  PolyModQ quot(a.size() - b.size() + 1, 0);
  const u64 lead_inv = *inverse_mod(b.back(), q);
  while (rem.size() >= b.size() && !rem.empty()) {
    const u64 factor = mulmod(rem.back(), lead_inv, q);
    const std::size_t shift = rem.size() - b.size();
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      rem[shift + i] = (rem[shift + i] + q - mulmod(factor, b[i], q)) % q;
    }
    trim(rem);
  }
  if (!rem.empty()) throw InvalidArgument("polynomial division is not exact");
  trim(quot);
  return quot;
}

}  // namespace poly

RationalFunctionModQ::RationalFunctionModQ(u64 q, std::vector<i64> numerator,
                                           std::vector<i64> denominator)
    : q_(q) {
  if (q < 2) throw InvalidModulus("rational function modulus must be >= 2");
  num_ = poly::normalize(std::move(numerator), q);
  den_ = poly::normalize(std::move(denominator), q);
  if (den_.empty()) throw InvalidArgument("denominator vanishes identically mod " + std::to_string(q));

  const PolyModQ g = poly::gcd(num_, den_, q);
  if (!num_.empty() && g.size() > 1) {
    num_ = poly::divide_exact(num_, g, q);
    den_ = poly::divide_exact(den_, g, q);
  }
  if (num_.empty()) den_ = {1};
  // Monic denominator keeps the representation canonical.
  const u64 lead_inv = *inverse_mod(den_.back(), q);
  for (auto& c : num_) c = mulmod(c, lead_inv, q);
  for (auto& c : den_) c = mulmod(c, lead_inv, q);
}

std::optional<u64> RationalFunctionModQ::operator()(u64 x) const {
  x %= q_;
  const u64 d = poly::eval(den_, x, q_);
  if (d == 0) return std::nullopt;
  const u64 n = poly::eval(num_, x, q_);
  return mulmod(n, *inverse_mod(d, q_), q_);
}

int RationalFunctionModQ::distinct_poles() const {
  int finite = 0;
  if (den_.size() > 1) {
    const PolyModQ dd = poly::derivative(den_, q_);
    const PolyModQ g = dd.empty() ? PolyModQ{1} : poly::gcd(den_, dd, q_);
    finite = denominator_degree() - (static_cast<int>(g.size()) - 1);
  }
  const int at_infinity = numerator_degree() > denominator_degree() ? 1 : 0;
  return finite + at_infinity;
}

int RationalFunctionModQ::pole_multiplicity() const {
  return denominator_degree() + std::max(0, numerator_degree() - denominator_degree());
}

}  // namespace tracefn
