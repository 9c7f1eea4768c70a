// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]... [--manifest PATH]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tracefn/calibration.hpp"
#include "tracefn/experiments.hpp"
#include "tracefn/satotate.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

using namespace tracefn;
namespace ex = tracefn::experiments;

namespace {

constexpr double kExact = 1e-8;
constexpr u64 kSeed = 0x5EEDF00D;

class Verdict {
 public:
  void require(const std::string& what, bool ok, double value) {
    std::ostringstream s;
    s << what << "=" << value;
    parts_.push_back(s.str());
    if (!ok) {
      pass_ = false;
      failed_.push_back(s.str());
    }
  }
  void note(const std::string& what, double value) {
    std::ostringstream s;
    s << what << "=" << value;
    parts_.push_back(s.str());
  }
  bool pass() const { return pass_; }
  std::string line() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "; " : "") + parts_[i];
    if (!failed_.empty()) {
      out += " | failed:";
      for (const auto& f : failed_) out += " " + f;
    }
    return out;
  }

 private:
  bool pass_ = true;
  std::vector<std::string> parts_, failed_;
};

std::vector<u64> primes_between(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double sup_over_nonzero(const TraceFunction& k) {
  double m = 0.0;
  for (u64 x = 1; x < k.size(); ++x) m = std::max(m, std::abs(k[x]));
  return m;
}

Verdict exact_identities(const Manifest&) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();

  double orth = 0.0;
  for (u64 q : primes_between(3, 503)) orth = std::max(orth, ex::orthogonality_delta(make_prime_modulus(q)));
  v.require("orthogonality(q<=503)", orth <= kExact, orth);

  double gmod = 0.0, gtwist = 0.0;
  for (u64 q : primes_between(3, 2003)) {
    const int samples = (q <= 503 || q == 2003) ? 0 : 16;
    const auto d = ex::gauss_deltas(make_prime_modulus(q), samples, kSeed ^ q);
    gmod = std::max(gmod, d.modulus);
    gtwist = std::max(gtwist, d.twist);
  }
  v.require("gauss_modulus(q<=2003)", gmod <= kExact, gmod);
  v.require("gauss_twist(q<=2003)", gtwist <= kExact, gtwist);

  double inv = 0.0, planch = 0.0;
  for (u64 q : primes_between(3, 2003)) {
    const auto d = ex::fourier_deltas(make_prime_modulus(q), kSeed + q, 5);
    inv = std::max(inv, d.involution);
    planch = std::max(planch, d.plancherel);
  }
  v.require("fourier_involution(q<=2003)", inv <= kExact, inv);
  v.require("plancherel(q<=2003)", planch <= kExact, planch);

  double conv = 0.0, hyper = 0.0;
  for (u64 q : primes_between(3, 101)) {
    const PrimeModulus pm = make_prime_modulus(q);
    conv = std::max(conv, ex::convolution_kl2_delta(pm));
    for (int k = 2; k <= 4; ++k) hyper = std::max(hyper, ex::hyper_direct_delta(pm, k));
  }
  v.require("psi*psi=Kl2(q<=101)", conv <= kExact, conv);
  v.require("hyper=direct(q<=101,k<=4)", hyper <= kExact, hyper);

  const std::vector<i64> as{1, 2};
  const auto tw = ex::twisted_multiplicativity_sweep(30000, as);
  v.require("twisted_mult(c<=3e4)", tw.delta <= kExact && tw.moduli > 0, tw.delta);
  v.note("moduli", static_cast<double>(tw.moduli));

  const PrimeModulus q101 = make_prime_modulus(101);
  double vor = 0.0;
  for (i64 a : {1, 2, 57, 100}) vor = std::max(vor, ex::voronoi_dirac_delta(q101, a));
  v.require("voronoi_dirac(q=101)", vor <= kExact, vor);

  const double hb = ex::heath_brown_delta(3, 10000);
  v.require("heath_brown(J=3,X=1e4)", hb <= kExact, hb);

  const SmoothBump bump;
  const auto fams = ex::family_names();
  double pois = 0.0;
  for (u64 q : {101, 1009, 2003}) pois = std::max(pois, ex::poisson_delta(make_prime_modulus(q), fams, bump));
  v.require("poisson(q in {101,1009,2003})", pois <= kExact, pois);

  const double secs = seconds_since(t0);
  v.require("runtime_s<60", secs < 60.0, secs);
  return v;
}

Verdict weil_deligne(const Manifest&) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  double kl2 = 0.0;
  u64 moduli = 0;
  for (u64 q : primes_between(3, 10000)) {
    kl2 = std::max(kl2, sup_over_nonzero(hyper_kloosterman_all(make_prime_modulus(q), 2)));
    ++moduli;
  }
  v.require("max|Kl2|(q<=1e4)", kl2 <= 2.0 + 1e-9, kl2);
  v.note("moduli", static_cast<double>(moduli));
  const double secs = seconds_since(t0);
  v.require("kl2_runtime_s<300", secs < 300.0, secs);

  for (int k = 3; k <= 6; ++k) {
    double m = 0.0;
    for (u64 q : primes_between(3, 2003)) m = std::max(m, sup_over_nonzero(hyper_kloosterman_all(make_prime_modulus(q), k)));
    v.require("max|Kl" + std::to_string(k) + "|/" + std::to_string(k) + "(q<=2003)", m <= k + 1e-9, m / k);
  }
  return v;
}

Verdict moments(const Manifest&) {
  Verdict v;
  const SpectralMeasure st = SpectralMeasure::sato_tate();
  const double expected[] = {1.0, 2.0, 5.0};
  for (int l = 1; l <= 3; ++l) {
    const double quad = st.moment(l);
    v.require("quadrature_C" + std::to_string(l), std::abs(quad - expected[l - 1]) <= 1e-10 &&
                                                      catalan(l) == expected[l - 1],
              quad);
  }
  double dev[2][3];
  const u64 qs[2] = {1009, 10007};
  for (int i = 0; i < 2; ++i) {
    const PrimeModulus pm = make_prime_modulus(qs[i]);
    const AngleSample s = extract_angles(hyper_kloosterman_all(pm, 2), AngleDomain::nonzero());
    for (int l = 1; l <= 3; ++l) {
      dev[i][l - 1] = std::abs(angle_moment(s, l) - expected[l - 1]);
      const double scaled = dev[i][l - 1] * std::sqrt(static_cast<double>(qs[i]));
      v.require("sqrtq|M" + std::to_string(2 * l) + "-C|(q=" + std::to_string(qs[i]) + ")/10^" + std::to_string(l),
                scaled <= std::pow(10.0, l), scaled / std::pow(10.0, l));
    }
  }
  for (int l = 1; l <= 3; ++l)
    v.require("monotone_l" + std::to_string(l) + "(dev10007/dev1009)", dev[1][l - 1] < dev[0][l - 1],
              dev[1][l - 1] / dev[0][l - 1]);
  return v;
}

Verdict equidistribution(const Manifest& m) {
  Verdict v;
  const PrimeModulus q = make_prime_modulus(10007);
  const double kl = ks_distance(extract_angles(hyper_kloosterman_all(q, 2), AngleDomain::nonzero()),
                                SpectralMeasure::sato_tate());
  v.require("KS_kl2(q=10007)", kl <= m.threshold("ks_kl2"), kl);

  const double sal = ks_distance(extract_angles(salie_real_family(q), AngleDomain::squares()),
                                 SpectralMeasure::uniform_interval());
  v.require("KS_salie(q=10007)", sal <= m.threshold("ks_salie"), sal);

  const auto birch = birch_vertical_survey(make_prime_modulus(199), BirchMode::full, kSeed);
  const double bks = ks_distance(birch.sample, SpectralMeasure::sato_tate());
  v.require("KS_birch_full(q=199)", bks <= m.threshold("ks_birch"), bks);
  v.require("birch_excluded_matches", birch.excluded == birch.excluded_expected, static_cast<double>(birch.excluded));

  const double g = ks_distance(gauss_angle_survey(q), SpectralMeasure::uniform_circle());
  v.require("KS_gauss(q=10007)", g <= m.threshold("ks_gauss"), g);
  return v;
}

Verdict quasi_orthogonality(const Manifest& m) {
  Verdict v;
  for (u64 qv : {101, 499, 1009}) {
    const PrimeModulus q = make_prime_modulus(qv);
    const double s = ex::quasi_orthogonality_scaled(q);
    v.require("sqrtq|C|(q=" + std::to_string(qv) + ")", s <= m.threshold("quasi_orth"), s);
    const TraceFunction k = hyper_kloosterman_all(q, 2);
    const double self = correlation(k, k).real();
    v.require("C(K,K)(q=" + std::to_string(qv) + ")", self >= 0.9, self);
  }
  return v;
}

Verdict completion_methods(const Manifest& m) {
  Verdict v;
  double pv = 0.0;
  for (u64 qv : primes_between(3, 2003)) {
    const PrimeModulus q = make_prime_modulus(qv);
    for (const char* fam : {"kl2", "legendre", "inverse_phase"}) pv = std::max(pv, ex::pv_ratio(ex::named_family(fam, q)));
  }
  v.require("pv(q<=2003)", pv <= m.threshold("pv"), pv);

  double fk = 0.0;
  for (u64 qv : primes_between(5, 2003)) {
    const auto r = fkmrrs_scan(ex::named_family("kl2", make_prime_modulus(qv)), 50, kSeed ^ qv);
    fk = std::max(fk, r.max_ratio);
  }
  v.require("fkmrrs(q<=2003)", fk <= m.threshold("fkmrrs"), fk);

  const SmoothBump bump;
  double vdc = 0.0;
  for (const auto& [p, q] : ex::vdc_grid(100000)) vdc = std::max(vdc, ex::vdc_point(p, q, bump).bound_ratio);
  v.require("vdc(c<=1e5)", vdc <= m.threshold("vdc"), vdc);

  std::vector<u64> chars;
  for (u64 c = 1; c < 60; ++c) chars.push_back(c);
  const auto bs = ex::burgess_sweep(make_prime_modulus(61), 2, 0, 20, chars);
  v.require("burgess_good/sqrtq(q=61)", bs.max_good_scaled <= m.threshold("burgess"), bs.max_good_scaled);
  v.note("burgess_tuples", static_cast<double>(bs.tuples));

  const auto t2 = ex::type2_sweep(ex::named_family("kloosterman_phase", make_prime_modulus(101)), 2, 10);
  v.require("type2/q^1.5(q=101)", t2.max_scaled <= m.threshold("type2"), t2.max_scaled);

  const auto kn = ex::khan_ngo(make_prime_modulus(499), 8);
  v.require("khan_ngo_unpaired/sqrtq(q=499)", kn.unpaired_max_scaled <= m.threshold("khan_ngo_unpaired"),
            kn.unpaired_max_scaled);
  v.require("khan_ngo_paired/q(q=499)", kn.paired_min_scaled >= m.threshold("khan_ngo_paired"), kn.paired_min_scaled);
  return v;
}

Verdict fourth_moment(const Manifest&) {
  Verdict v;
  auto spectral = [](u64 q) {
    const TraceFunction k = hyper_kloosterman_all(make_prime_modulus(q), 2);
    double s = 0.0;
    for (u64 a = 1; a < q; ++a) s += std::pow(std::norm(k[a]), 2);
    return s * static_cast<double>(q) * static_cast<double>(q);
  };
  for (u64 q : {13, 101}) {
    const u64 exact = kloosterman_fourth_moment_exact(q);
    const double f = spectral(q);
    const bool ok = static_cast<u64>(std::llround(f)) == exact && std::abs(f - static_cast<double>(exact)) < 1e-6 * f;
    v.require("sum|S|^4 vs oracle(q=" + std::to_string(q) + ")", ok, f - static_cast<double>(exact));
    v.require("closed_form==oracle(q=" + std::to_string(q) + ")", kloosterman_fourth_moment_closed_form(q) == exact,
              static_cast<double>(exact));
  }
  const double closed = static_cast<double>(kloosterman_fourth_moment_closed_form(1009));
  const double rel = std::abs(spectral(1009) - closed) / closed;
  v.require("closed_form_rel(q=1009)", rel <= 1e-6, rel);
  return v;
}

// d3 by direct triple counting, independent of the sieve.
std::vector<u32> d3_by_counting(u64 X) {
  std::vector<u32> d(X + 1, 0);
  for (u64 a = 1; a <= X; ++a)
    for (u64 b = 1; a * b <= X; ++b)
      for (u64 c = 1; a * b * c <= X; ++c) ++d[a * b * c];
  return d;
}

Verdict asymptotic_claims(const Manifest&) {
  Verdict v;
  const double small = ex::prime_sum_ratio(ex::named_family("kl2", make_prime_modulus(101)));
  const double large = ex::prime_sum_ratio(ex::named_family("kl2", make_prime_modulus(4001)));
  v.require("primesum_ratio(4001)<ratio(101)", large < small, large / small);
  v.note("ratio101", small);
  v.note("ratio4001", large);

  const double hb = ex::heath_brown_delta(2, 1000);
  v.require("heath_brown(J=2,X=1e3)", hb <= kExact, hb);

  const PrimeModulus q101 = make_prime_modulus(101);
  const auto sc = ex::shift_case_report(q101, {{1, 2, 3, 5}, {2, 7, 4, 9}, {3, 11, 6, 13}});
  v.require("shift_sum_closed_form(q=101)", sc.max_delta_product <= kExact && sc.evaluated > 0, sc.max_delta_product);

  const PrimeModulus q61 = make_prime_modulus(61);
  const ShiftTuple diag = make_shift_tuple(std::vector<i64>{12, 15, 15, 12}, 10);
  double bd = 0.0;
  for (u64 c = 1; c < 60; ++c) bd = std::max(bd, std::abs(burgess_complete_sum(q61, c, diag) - cplx(61.0 - 2.0)));
  v.require("burgess_diagonal=q-2(q=61)", bd <= kExact, bd);

  const PrimeModulus q1009 = make_prime_modulus(1009);
  const TraceFunction kl = ex::named_family("kl2", q1009);
  const SmoothBump bump;
  const std::vector<double> Ns{40.0, 40.0};
  const cplx direct = smoothed_product_sum(kl, 2, 1, Ns, bump);
  const cplx dual = smoothed_product_sum_dual(kl, 1, 40.0, 40.0, bump);
  v.require("type_I_poisson(q=1009)", std::abs(direct - dual) <= 1e-6, std::abs(direct - dual));

  const u64 X = 100000;
  const ArithmeticTables t = sieve_tables(X);
  const auto d3 = d3_by_counting(X);
  double prog = 0.0, cop = 0.0;
  for (u64 n = 1; n <= X; ++n) {
    if (n % 101 == 1) prog += d3[n];
    if (n % 101 != 0) cop += d3[n];
  }
  const auto rep = divisor_in_ap(3, X, 101, 1, t);
  const double e = prog - cop / 100.0;
  v.require("d3_discrepancy_exact(q=101,X=1e5)", std::abs(rep.discrepancy - e) <= 1e-6, std::abs(rep.discrepancy - e));
  v.note("d3_ratio_report_only", rep.ratio);
  return v;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict(const Manifest&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracefn acceptance criteria"};
  std::vector<int> which;
  std::string manifest_path = default_manifest_path();
  app.add_option("--criterion", which, "Criterion number (repeatable); default all")->check(CLI::Range(1, 8));
  app.add_option("--manifest", manifest_path, "Calibration manifest");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "exact identities", exact_identities},
      {2, "Weil and Deligne bounds", weil_deligne},
      {3, "Sato-Tate moments", moments},
      {4, "equidistribution", equidistribution},
      {5, "quasi-orthogonality", quasi_orthogonality},
      {6, "completion-method ratios", completion_methods},
      {7, "Kloosterman fourth moment", fourth_moment},
      {8, "asymptotic claims: identities and monotone cancellation", asymptotic_claims},
  };
  if (which.empty())
    for (const auto& c : all) which.push_back(c.id);

  Manifest manifest;
  try {
    manifest = load_manifest(manifest_path);
  } catch (const std::exception& e) {
    std::cout << "FAIL manifest: " << e.what() << "\n";
    return 1;
  }

  bool ok = true;
  for (int id : which) {
    const Criterion& c = all[id - 1];
    const auto t0 = std::chrono::steady_clock::now();
    std::string status, detail;
    try {
      const Verdict v = c.run(manifest);
      status = v.pass() ? "PASS" : "FAIL";
      detail = v.line();
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    ok = ok && status == "PASS";
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", seconds_since(t0));
    std::cout << status << " criterion " << c.id << " (" << c.title << ", " << secs << "): " << detail << std::endl;
  }
  return ok ? 0 : 1;
}
