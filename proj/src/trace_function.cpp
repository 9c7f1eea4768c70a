#include "tracefn/trace_function.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "tracefn/parallel.hpp"

namespace tracefn {

TraceFunction::TraceFunction(PrimeModulus field, std::vector<cplx> values, TraceMeta meta)
    : modulus_(field.q()), field_(std::move(field)), values_(std::move(values)), meta_(std::move(meta)) {
  validate();
}

TraceFunction::TraceFunction(u64 modulus, std::vector<cplx> values, TraceMeta meta)
    : modulus_(modulus), values_(std::move(values)), meta_(std::move(meta)) {
  if (modulus_ < 1) throw InvalidModulus("modulus must be positive");
  validate();
}

const PrimeModulus& TraceFunction::field() const {
  if (!field_) {
    throw InvalidArgument("trace function '" + meta_.family + "' has composite modulus " +
                          std::to_string(modulus_));
  }
  return *field_;
}

void TraceFunction::validate() const {
  if (values_.size() != modulus_) {
    throw InvalidArgument("trace function has " + std::to_string(values_.size()) +
                          " values for modulus " + std::to_string(modulus_));
  }
  for (std::size_t x = 0; x < values_.size(); ++x) {
    const cplx v = values_[x];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainViolation(meta_.family + ": non-finite value at x=" + std::to_string(x));
    }
    if (meta_.real_valued && std::abs(v.imag()) > kRealTolerance) {
      std::ostringstream os;
      os << meta_.family << ": declared real but Im K(" << x << ") = " << v.imag();
      throw DomainViolation(os.str());
    }
    if (meta_.sup_norm && std::abs(v) > *meta_.sup_norm + kSupTolerance) {
      std::ostringstream os;
      os << meta_.family << ": |K(" << x << ")| = " << std::abs(v) << " exceeds declared sup norm "
         << *meta_.sup_norm;
      throw DomainViolation(os.str());
    }
  }
}

// ---------------------------------------------------------------------------

Pgl2Element::Pgl2Element(u64 q, i64 a, i64 b, i64 c, i64 d) : q_(q) {
  if (q < 2) throw InvalidModulus("PGL2 modulus must be >= 2");
  u64 e[4] = {reduce(a, q), reduce(b, q), reduce(c, q), reduce(d, q)};
  const u64 det = (mulmod(e[0], e[3], q) + q - mulmod(e[1], e[2], q)) % q;
  if (det == 0) throw InvalidArgument("PGL2 element has zero determinant mod " + std::to_string(q));
  for (u64 v : e) {
    if (v == 0) continue;
    const auto inv = inverse_mod(v, q);
    if (!inv) throw InvalidModulus("PGL2 entry not invertible mod " + std::to_string(q));
    for (u64& w : e) w = mulmod(w, *inv, q);
    break;
  }
  a_ = e[0];
  b_ = e[1];
  c_ = e[2];
  d_ = e[3];
}

std::optional<u64> Pgl2Element::apply(u64 x) const {
  x %= q_;
  const u64 den = (mulmod(c_, x, q_) + d_) % q_;
  if (den == 0) return std::nullopt;
  const u64 num = (mulmod(a_, x, q_) + b_) % q_;
  const auto inv = inverse_mod(den, q_);
  if (!inv) return std::nullopt;
  return mulmod(num, *inv, q_);
}

Pgl2Element Pgl2Element::operator*(const Pgl2Element& o) const {
  if (q_ != o.q_) throw InvalidArgument("PGL2 product with mismatched moduli");
  auto mm = [q = q_](u64 x, u64 y, u64 z, u64 w) {
    return static_cast<i64>((mulmod(x, y, q) + mulmod(z, w, q)) % q);
  };
  return Pgl2Element(q_, mm(a_, o.a_, b_, o.c_), mm(a_, o.b_, b_, o.d_), mm(c_, o.a_, d_, o.c_),
                     mm(c_, o.b_, d_, o.d_));
}

// ---------------------------------------------------------------------------

namespace {

void require_same(const TraceFunction& k1, const TraceFunction& k2) {
  if (k1.modulus() != k2.modulus()) {
    throw InvalidArgument("modulus mismatch: " + std::to_string(k1.modulus()) + " vs " +
                          std::to_string(k2.modulus()));
  }
}

TraceFunction rebuild(const TraceFunction& like, std::vector<cplx> values, TraceMeta meta) {
  if (like.has_field()) return TraceFunction(like.field(), std::move(values), std::move(meta));
  return TraceFunction(like.modulus(), std::move(values), std::move(meta));
}

}  // namespace

TraceFunction pullback(const TraceFunction& k, const Pgl2Element& gamma) {
  const u64 q = k.modulus();
  if (gamma.modulus() != q) throw InvalidArgument("pullback: PGL2 element has a different modulus");
  std::vector<cplx> out(q);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (i64 x = 0; x < static_cast<i64>(q); ++x) {
    const auto y = gamma.apply(static_cast<u64>(x));
    out[x] = y ? k[*y] : cplx{0.0, 0.0};
  }
  TraceMeta meta = k.meta();
  meta.family = "pullback(" + k.meta().family + ")";
  std::ostringstream os;
  os << '[' << gamma.a() << ',' << gamma.b() << ';' << gamma.c() << ',' << gamma.d() << ']';
  meta.params["gamma"] = os.str();
  return rebuild(k, std::move(out), std::move(meta));
}

TraceFunction dilate(const TraceFunction& k, i64 a) {
  const u64 q = k.modulus();
  const u64 ar = reduce(a, q);
  std::vector<cplx> out(q);
  for (u64 x = 0; x < q; ++x) out[x] = k[mulmod(ar, x, q)];
  TraceMeta meta = k.meta();
  meta.family = "dilate(" + k.meta().family + ")";
  meta.params["a"] = std::to_string(ar);
  return rebuild(k, std::move(out), std::move(meta));
}

TraceFunction product(const TraceFunction& k1, const TraceFunction& k2) {
  require_same(k1, k2);
  std::vector<cplx> out(k1.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = k1[x] * k2[x];
  TraceMeta meta;
  meta.family = "product(" + k1.meta().family + "," + k2.meta().family + ")";
  meta.real_valued = k1.meta().real_valued && k2.meta().real_valued;
  if (k1.meta().sup_norm && k2.meta().sup_norm) meta.sup_norm = *k1.meta().sup_norm * *k2.meta().sup_norm;
  meta.conductor = k1.meta().conductor * k2.meta().conductor;
  return rebuild(k1, std::move(out), std::move(meta));
}

TraceFunction conjugate(const TraceFunction& k) {
  std::vector<cplx> out(k.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = std::conj(k[x]);
  TraceMeta meta = k.meta();
  meta.family = "conj(" + k.meta().family + ")";
  return rebuild(k, std::move(out), std::move(meta));
}

TraceFunction scale(const TraceFunction& k, cplx s) {
  std::vector<cplx> out(k.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = s * k[x];
  TraceMeta meta = k.meta();
  meta.family = "scale(" + k.meta().family + ")";
  meta.real_valued = k.meta().real_valued && s.imag() == 0.0;
  if (meta.sup_norm) meta.sup_norm = *meta.sup_norm * std::abs(s);
  return rebuild(k, std::move(out), std::move(meta));
}

}  // namespace tracefn
