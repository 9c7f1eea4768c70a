#include <cmath>
#include <numeric>
#include <string>

#include "tracefn/parallel.hpp"
#include "tracefn/trace_function.hpp"

namespace tracefn {
namespace {

// Legendre symbol table indexed by residue.
std::vector<int8_t> quadratic_table(const PrimeModulus& q) {
  std::vector<int8_t> chi(q.q(), 0);
  for (u64 x = 1; x < q.q(); ++x) chi[x] = (q.dlog(x) % 2 == 0) ? 1 : -1;
  return chi;
}

// exp(2 pi i j / m) as hi[j / step] * lo[j % step]; 2 sqrt(m) trig calls
// instead of m.
class RootTable {
 public:
  explicit RootTable(u64 m) : m_(m) {
    while ((u64{1} << shift_) * (u64{1} << shift_) < m) ++shift_;
    mask_ = (u64{1} << shift_) - 1;
    lo_.resize(mask_ + 1);
    hi_.resize((m >> shift_) + 1);
    for (u64 r = 0; r <= mask_; ++r) lo_[r] = unit_root(static_cast<i64>(r), static_cast<i64>(m));
    for (u64 j = 0; j < hi_.size(); ++j) hi_[j] = unit_root(static_cast<i64>(j << shift_), static_cast<i64>(m));
  }
  cplx operator()(u64 j) const { return hi_[j >> shift_] * lo_[j & mask_]; }

 private:
  u64 m_;
  int shift_ = 0;
  u64 mask_ = 0;
  std::vector<cplx> lo_, hi_;
};

// x mod m without a hardware divide (Lemire), for x < 2^32 and m < 2^32.
struct FastMod {
  explicit FastMod(u64 m) : m(m), M(~u64{0} / m + 1) {}
  u64 operator()(u64 x) const {
    const u64 low = M * x;
    return static_cast<u64>((static_cast<unsigned __int128>(low) * m) >> 64);
  }
  u64 mul(u64 a, u64 b) const { return m < (u64{1} << 16) ? (*this)(a * b) : mulmod(a, b, m); }
  u64 m, M;
};

// Number of distinct roots over the algebraic closure.
int distinct_roots(const PolyModQ& p, u64 q) {
  if (p.size() <= 1) return 0;
  const PolyModQ dp = poly::derivative(p, q);
  const PolyModQ g = dp.empty() ? PolyModQ{1} : poly::gcd(p, dp, q);
  return static_cast<int>(p.size()) - static_cast<int>(g.size());
}

std::string describe(const RationalFunctionModQ& f) {
  auto show = [](const PolyModQ& p) {
    if (p.empty()) return std::string("0");
    std::string s;
    for (std::size_t i = p.size(); i-- > 0;) {
      if (p[i] == 0) continue;
      if (!s.empty()) s += "+";
      s += std::to_string(p[i]);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  };
  if (f.is_polynomial()) return show(f.numerator());
  return "(" + show(f.numerator()) + ")/(" + show(f.denominator()) + ")";
}

}  // namespace

TraceFunction constant_function(const PrimeModulus& q, cplx value) {
  TraceMeta meta;
  meta.family = "constant";
  meta.params["value"] = std::to_string(value.real()) + "+" + std::to_string(value.imag()) + "i";
  meta.real_valued = value.imag() == 0.0;
  meta.sup_norm = std::abs(value);
  meta.conductor = 1;
  meta.description = "constant function";
  return TraceFunction(q, std::vector<cplx>(q.q(), value), meta);
}

TraceFunction dirac(const PrimeModulus& q, i64 a) {
  const u64 ar = reduce(a, q.q());
  std::vector<cplx> v(q.q(), 0.0);
  v[ar] = 1.0;
  TraceMeta meta;
  meta.family = "dirac";
  meta.params["a"] = std::to_string(ar);
  meta.real_valued = true;
  meta.sup_norm = 1.0;
  meta.conductor = 2;
  meta.description = "indicator of a single point";
  return TraceFunction(q, std::move(v), meta);
}

TraceFunction additive_phase(const PrimeModulus& q, const RationalFunctionModQ& f) {
  if (f.modulus() != q.q()) throw InvalidArgument("additive_phase: rational function modulus differs");
  std::vector<cplx> v(q.q());
  const auto e = q.e_table();
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (i64 x = 0; x < static_cast<i64>(q.q()); ++x) {
    const auto fx = f(static_cast<u64>(x));
    v[x] = fx ? e[*fx] : cplx{0.0, 0.0};
  }
  TraceMeta meta;
  meta.family = "additive_phase";
  meta.params["f"] = describe(f);
  meta.sup_norm = 1.0;
  meta.real_valued = f.is_constant() && (f.numerator().empty());
  meta.conductor = f.is_constant() ? 1 : 1 + f.distinct_poles() + f.pole_multiplicity();
  meta.description = "e_q(f(x)), zero at poles";
  return TraceFunction(q, std::move(v), meta);
}

TraceFunction mult_phase(const PrimeModulus& q, u64 char_index, const RationalFunctionModQ& f) {
  if (f.modulus() != q.q()) throw InvalidArgument("mult_phase: rational function modulus differs");
  const u64 n = q.group_order();
  if (char_index >= n) {
    throw InvalidArgument("character index " + std::to_string(char_index) + " must be < " + std::to_string(n));
  }
  std::vector<cplx> roots(n);
  for (u64 j = 0; j < n; ++j) roots[j] = unit_root(static_cast<i64>(j), static_cast<i64>(n));

  std::vector<cplx> v(q.q());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (i64 x = 0; x < static_cast<i64>(q.q()); ++x) {
    const auto fx = f(static_cast<u64>(x));
    if (!fx || *fx == 0) {
      v[x] = 0.0;
    } else {
      v[x] = roots[mulmod(char_index, q.dlog(*fx), n)];
    }
  }
  TraceMeta meta;
  meta.family = "mult_phase";
  meta.params["m"] = std::to_string(char_index);
  meta.params["f"] = describe(f);
  meta.sup_norm = 1.0;
  meta.real_valued = (2 * char_index) % n == 0;
  if (char_index == 0 || f.is_constant()) {
    meta.conductor = 1;
  } else {
    // Rank one, ramified at the zeros and poles of f on P^1.
    const int deg_num = f.numerator_degree();
    const int deg_den = f.denominator_degree();
    const int zeros = distinct_roots(f.numerator(), q.q()) + (deg_num < deg_den ? 1 : 0);
    const int poles = distinct_roots(f.denominator(), q.q()) + (deg_num > deg_den ? 1 : 0);
    meta.conductor = 1 + zeros + poles;
  }
  meta.description = "chi_m(f(x)), zero at zeros and poles";
  return TraceFunction(q, std::move(v), meta);
}

TraceFunction legendre_character(const PrimeModulus& q) {
  TraceFunction k = mult_phase(q, q.group_order() / 2, RationalFunctionModQ::identity(q.q()));
  TraceMeta meta = k.meta();
  meta.family = "legendre";
  std::vector<cplx> v(k.values().begin(), k.values().end());
  for (auto& z : v) z = {z.real(), 0.0};
  return TraceFunction(q, std::move(v), meta);
}

TraceFunction kloosterman_phase(const PrimeModulus& q, i64 u, i64 v) {
  const RationalFunctionModQ f(q.q(), {u, 0, v}, {0, 1});
  TraceFunction k = additive_phase(q, f);
  TraceMeta meta = k.meta();
  meta.family = "kloosterman_phase";
  meta.params["u"] = std::to_string(reduce(u, q.q()));
  meta.params["v"] = std::to_string(reduce(v, q.q()));
  return TraceFunction(q, std::vector<cplx>(k.values().begin(), k.values().end()), meta);
}

cplx kloosterman_direct(const PrimeModulus& q, int k, i64 a) {
  if (k < 2) throw InvalidArgument("kloosterman_direct: k must be >= 2");
  const u64 qq = q.q();
  const u64 ar = reduce(a, qq);
  if (ar == 0) throw InvalidArgument("kloosterman_direct: a must be a unit");
  const double cost = std::pow(static_cast<double>(qq), k - 1);
  if (cost > 1e9) {
    throw CapacityError("kloosterman_direct: q^(k-1) = " + std::to_string(cost) + " exceeds 1e9");
  }
  const u64 n = qq - 1;
  const auto e = q.e_table();
  const auto pw = q.power_table();
  const u64 la = q.dlog(ar);

  // Enumerate x_1..x_{k-1} by their logs; x_k is forced.
  auto rec = [&](auto&& self, int depth, u64 s, u64 logsum) -> cplx {
    cplx acc = 0.0;
    if (depth == k - 1) {
      const u64 xk = pw[(la + n - logsum) % n];
      return e[(s + xk) % qq];
    }
    for (u64 j = 0; j < n; ++j) acc += self(self, depth + 1, (s + pw[j]) % qq, (logsum + j) % n);
    return acc;
  };
  const cplx total = rec(rec, 0, 0, 0);
  return total * std::pow(static_cast<double>(qq), -(k - 1) / 2.0);
}

cplx salie(const PrimeModulus& q, i64 a) {
  const u64 qq = q.q();
  const u64 ar = reduce(a, qq);
  if (ar == 0) throw InvalidArgument("salie: a must be a unit");
  const auto e = q.e_table();
  cplx acc = 0.0;
  for (u64 x = 1; x < qq; ++x) {
    const int s = q.dlog(x) % 2 == 0 ? 1 : -1;
    acc += static_cast<double>(s) * e[(x + ar * q.inverse(x)) % qq];
  }
  return acc / std::sqrt(static_cast<double>(qq));
}

namespace {

std::vector<cplx> salie_values(const PrimeModulus& q) {
  const u64 qq = q.q();
  const auto e = q.e_table();
  const auto chi = quadratic_table(q);
  std::vector<u64> inv(qq, 0);
  for (u64 x = 1; x < qq; ++x) inv[x] = q.inverse(x);
  std::vector<cplx> v(qq, 0.0);
  const double norm = 1.0 / std::sqrt(static_cast<double>(qq));
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
  for (i64 a = 1; a < static_cast<i64>(qq); ++a) {
    cplx acc = 0.0;
    for (u64 x = 1; x < qq; ++x) acc += static_cast<double>(chi[x]) * e[(x + static_cast<u64>(a) * inv[x]) % qq];
    v[a] = acc * norm;
  }
  return v;
}

}  // namespace

TraceFunction salie_family(const PrimeModulus& q) {
  std::vector<cplx> v = salie_values(q);
  TraceMeta meta;
  meta.family = "salie";
  meta.sup_norm = 2.0;
  meta.real_valued = q.q() % 4 == 1;
  meta.conductor = 5;
  meta.description = "Salie sums; purely imaginary when q = 3 mod 4";
  return TraceFunction(q, std::move(v), meta);
}

TraceFunction salie_real_family(const PrimeModulus& q) {
  std::vector<cplx> v = salie_values(q);
  const bool rotate = q.q() % 4 == 3;
  for (auto& z : v) z = cplx{rotate ? z.imag() : z.real(), 0.0};
  TraceMeta meta;
  meta.family = "salie_real";
  meta.sup_norm = 2.0;
  meta.real_valued = true;
  meta.conductor = 5;
  meta.description = "Salie sums divided by i when q = 3 mod 4";
  return TraceFunction(q, std::move(v), meta);
}

double birch_value(const PrimeModulus& q, i64 a, i64 b) {
  const u64 qq = q.q();
  const u64 ar = reduce(a, qq), br = reduce(b, qq);
  i64 s = 0;
  for (u64 x = 0; x < qq; ++x) {
    const u64 x2 = x * x % qq;
    const u64 val = (x2 * x + ar * x + br) % qq;
    if (val != 0) s += (q.dlog(val) % 2 == 0) ? 1 : -1;
  }
  return -static_cast<double>(s) / std::sqrt(static_cast<double>(qq));
}

TraceFunction birch_family(const PrimeModulus& q, const RationalFunctionModQ& a_poly,
                           const RationalFunctionModQ& b_poly) {
  if (!a_poly.is_polynomial() || !b_poly.is_polynomial()) {
    throw InvalidArgument("birch_family: a(T) and b(T) must be polynomials");
  }
  if (a_poly.modulus() != q.q() || b_poly.modulus() != q.q()) {
    throw InvalidArgument("birch_family: polynomial modulus differs");
  }
  const u64 qq = q.q();
  const auto chi = quadratic_table(q);
  std::vector<cplx> v(qq, 0.0);
  int bad = 0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(qq));
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : bad) num_threads(thread_count())
  for (i64 t = 0; t < static_cast<i64>(qq); ++t) {
    const u64 A = *a_poly(static_cast<u64>(t));
    const u64 B = *b_poly(static_cast<u64>(t));
    const u64 disc = (4 * (A * A % qq) % qq * A + 27 * (B * B % qq)) % qq;
    if (disc == 0) {
      ++bad;
      continue;
    }
    i64 s = 0;
    for (u64 x = 0; x < qq; ++x) s += chi[((x * x % qq) * x + A * x + B) % qq];
    v[t] = -static_cast<double>(s) * norm;
  }
  TraceMeta meta;
  meta.family = "birch";
  meta.params["a"] = describe(a_poly);
  meta.params["b"] = describe(b_poly);
  meta.real_valued = true;
  meta.sup_norm = 2.0;
  // Rank two, ramified at the discriminant zeros in F_q and at infinity.
  meta.conductor = 2 + bad + 1;
  meta.description = "normalised a_q of y^2 = x^3 + a(t) x + b(t)";
  return TraceFunction(q, std::move(v), meta);
}

// ---------------------------------------------------------------------------

namespace {

void require_unit(const CompositeModulus& c, i64 a) {
  if (std::gcd(reduce(a, c.c), c.c) != 1) {
    throw InvalidArgument("composite_kloosterman: gcd(a, " + std::to_string(c.c) + ") != 1");
  }
}

// Kl_2(b; p) for a single prime p, from an O(p) inverse table.
cplx kl2_prime(u64 p, u64 b) {
  std::vector<u64> inv(p, 0);
  inv[1] = 1;
  for (u64 i = 2; i < p; ++i) inv[i] = (p - (p / i) * inv[p % i] % p) % p;
  const RootTable e(p);
  cplx acc = 0.0;
  u64 bx = 0;
  for (u64 x = 1; x < p; ++x) {
    bx += b;
    if (bx >= p) bx -= p;
    u64 j = inv[x] + bx;
    if (j >= p) j -= p;
    acc += e(j);
  }
  return acc / std::sqrt(static_cast<double>(p));
}

}  // namespace

cplx composite_kloosterman_direct(const CompositeModulus& c, i64 a) {
  require_unit(c, a);
  const u64 m = c.c;
  const u64 ar = reduce(a, m);
  std::vector<uint8_t> unit(m, 1);
  unit[0] = 0;
  for (u64 p : c.factors)
    for (u64 j = 0; j < m; j += p) unit[j] = 0;
  std::vector<u64> xs, axs;
  xs.reserve(m);
  axs.reserve(m);
  u64 ax = 0;
  for (u64 x = 1; x < m; ++x) {
    ax += ar;
    if (ax >= m) ax -= m;
    if (unit[x]) {
      xs.push_back(x);
      axs.push_back(ax);
    }
  }

  // Batch inversion: one extended gcd for the whole unit group.
  const FastMod fm(m);
  std::vector<u64> prefix(xs.size());
  u64 run = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    run = fm.mul(run, xs[i]);
    prefix[i] = run;
  }
  u64 inv_run = *inverse_mod(run, m);
  const RootTable e(m);
  cplx acc = 0.0;
  for (std::size_t i = xs.size(); i-- > 0;) {
    const u64 xinv = i == 0 ? inv_run : fm.mul(inv_run, prefix[i - 1]);
    inv_run = fm.mul(inv_run, xs[i]);
    u64 j = xinv + axs[i];
    if (j >= m) j -= m;
    acc += e(j);
  }
  return acc / std::sqrt(static_cast<double>(m));
}

cplx composite_kloosterman_factored(const CompositeModulus& c, i64 a) {
  require_unit(c, a);
  cplx prod = 1.0;
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    const u64 p = c.factors[i];
    const u64 w = c.cofactor_inverses[i];
    const u64 b = reduce(a, p) * (w * w % p) % p;
    prod *= kl2_prime(p, b);
  }
  return prod;
}

CompositeKloosterman composite_kloosterman(const CompositeModulus& c, i64 a) {
  return {composite_kloosterman_direct(c, a), composite_kloosterman_factored(c, a)};
}

}  // namespace tracefn
