#include "tracefn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "tracefn/calibration.hpp"
#include "tracefn/experiments.hpp"
#include "tracefn/parallel.hpp"
#include "tracefn/random.hpp"
#include "tracefn/report.hpp"
#include "tracefn/satotate.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

namespace tracefn {
namespace {

namespace ex = experiments;

constexpr double kIdentityTolerance = 1e-8;

struct Globals {
  int threads = 0;
  u64 seed = kDefaultSeed;
  std::string out_path;
  std::string format = "json";
  std::string manifest_path;
};

struct Output {
  Report report;
  std::optional<CsvTable> table;
};

// Manifest thresholds are loaded on first use only.
class Thresholds {
 public:
  explicit Thresholds(std::string path) : path_(std::move(path)) {}
  double get(const std::string& suite) {
    if (!m_) m_ = load_manifest(path_);
    return m_->threshold(suite);
  }
  std::string ref(const std::string& suite) {
    get(suite);
    return m_->find(suite)->ref;
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::optional<Manifest> m_;
};

PrimeModulus prime(u64 q) {
  if (q < 3 || !is_prime(q)) throw InvalidModulus(std::to_string(q) + " is not an odd prime");
  return PrimeModulus(q);
}

Json u64_list(const std::vector<u64>& v) { return Json(v); }

CsvTable checks_table(const Report& r) {
  CsvTable t({"name", "bound", "value", "threshold", "direction", "pass"});
  for (const auto& c : r.checks()) {
    t.add({c.name, c.bound, format_double(c.value), format_double(c.threshold), c.direction, c.pass ? "1" : "0"});
  }
  return t;
}

// ---------------------------------------------------------------------------

struct IdentitiesOpts {
  u64 q = 101;
  u64 c_max = 30000;
  int hb_J = 3;
  u64 hb_X = 10000;
  int count = 5;
};

Output run_identities(const IdentitiesOpts& o, const Globals& g) {
  const PrimeModulus q = prime(o.q);
  Output out{Report("identities", g.seed), std::nullopt};
  Report& r = out.report;
  r.params()["q"] = o.q;
  r.params()["c_max"] = o.c_max;
  r.params()["heath_brown_J"] = o.hb_J;
  r.params()["heath_brown_X"] = o.hb_X;
  r.params()["random_functions"] = o.count;
  r.params()["tolerance"] = kIdentityTolerance;
  auto add = [&](const std::string& name, const std::string& bound, double delta) {
    r.results()[name] = delta;
    r.check(name, bound, delta, kIdentityTolerance);
  };

  add("orthogonality", "character orthogonality relations", ex::orthogonality_delta(q));
  const int gauss_samples = o.q <= 2003 ? 0 : 64;
  const auto gd = ex::gauss_deltas(q, gauss_samples, g.seed);
  add("gauss_modulus", "Gauss sums have modulus one", gd.modulus);
  add("gauss_twist", "Gauss sum change of variable", gd.twist);
  const auto fd = ex::fourier_deltas(q, g.seed, o.count);
  add("fourier_involution", "Fourier involution", fd.involution);
  add("plancherel", "Plancherel formula", fd.plancherel);
  add("convolution_kl2", "convolution construction of Kl_2", ex::convolution_kl2_delta(q));
  for (int k = 3; k <= 4; ++k) {
    const double cost = std::pow(static_cast<double>(o.q), k);
    if (cost > 2e8) continue;
    add("hyper_kloosterman_k" + std::to_string(k), "hyper-Kloosterman sums as convolution powers",
        ex::hyper_direct_delta(q, k));
  }
  const std::vector<i64> as{1, 2};
  const auto tw = ex::twisted_multiplicativity_sweep(o.c_max, as);
  r.results()["twisted_moduli"] = tw.moduli;
  r.results()["twisted_worst_c"] = tw.worst_c;
  add("twisted_multiplicativity", "twisted multiplicativity of Kloosterman sums", tw.delta);
  add("heath_brown", "Heath-Brown identity", ex::heath_brown_delta(o.hb_J, o.hb_X));
  const auto fams = ex::family_names();
  add("poisson", "Poisson summation formula", ex::poisson_delta(q, fams, SmoothBump()));
  add("voronoi_dirac", "Voronoi image of a Dirac mass", ex::voronoi_dirac_delta(q, 1));
  return out;
}

// ---------------------------------------------------------------------------

struct BoundsOpts {
  u64 q = 1009;
  std::vector<std::string> families;
  int samples = 50;
};

Output run_bounds(const BoundsOpts& o, const Globals& g, Thresholds& th) {
  const PrimeModulus q = prime(o.q);
  Output out{Report("bounds", g.seed), std::nullopt};
  Report& r = out.report;
  auto fams = o.families.empty() ? std::vector<std::string>{"kl2", "legendre", "inverse_phase"} : o.families;
  r.params()["q"] = o.q;
  r.params()["families"] = fams;
  r.params()["fkmrrs_samples"] = o.samples;

  for (int k = 2; k <= 6; ++k) {
    const double sup = ex::sup_abs(hyper_kloosterman_all(q, k));
    r.results()["sup_kl" + std::to_string(k)] = sup;
    r.check("sup_kl" + std::to_string(k), k == 2 ? "Weil bound" : "Deligne bound", sup, k + 1e-9);
  }
  const double pv_thr = th.get("pv"), fk_thr = th.get("fkmrrs");
  for (const auto& f : fams) {
    const TraceFunction k = ex::named_family(f, q);
    const auto scan = pv_extremal_scan(k);
    const double ratio = scan.max_abs / (std::sqrt(double(o.q)) * std::log(double(o.q)));
    Json pv;
    pv["max_abs"] = scan.max_abs;
    pv["a"] = scan.a;
    pv["b"] = scan.b;
    pv["method"] = scan.method;
    pv["ratio"] = ratio;
    r.results()["pv_" + f] = pv;
    r.check("pv_" + f, "Polya-Vinogradov bound", ratio, pv_thr);
    const auto fk = fkmrrs_scan(k, o.samples, g.seed);
    r.results()["fkmrrs_" + f] = fk.max_ratio;
    r.check("fkmrrs_" + f, "FKMRRS refinement of Polya-Vinogradov", fk.max_ratio, fk_thr);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SatoTateOpts {
  std::string family = "kl2";
  std::vector<u64> qs;
  std::string mode = "full";
  bool assert_ks = false;
};

Output run_satotate(const SatoTateOpts& o, const Globals& g, Thresholds& th) {
  Output out{Report("satotate", g.seed), CsvTable({"family", "q", "x", "value", "theta"})};
  Report& r = out.report;
  r.params()["family"] = o.family;
  r.params()["q"] = u64_list(o.qs);
  if (o.family == "birch") r.params()["mode"] = o.mode;
  CsvTable& t = *out.table;
  Json per_q = Json::array();
  for (u64 qv : o.qs) {
    const PrimeModulus q = prime(qv);
    Json row;
    row["q"] = qv;
    AngleSample s;
    std::string suite;
    std::optional<SpectralMeasure> mu;
    if (o.family == "kl2" || o.family == "salie") {
      const bool kl = o.family == "kl2";
      const TraceFunction k = kl ? hyper_kloosterman_all(q, 2) : salie_real_family(q);
      const AngleDomain d = kl ? AngleDomain::nonzero() : AngleDomain::squares();
      s = extract_angles(k, d);
      const auto pts = domain_points(k, d);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        t.add({o.family, std::to_string(qv), std::to_string(pts[i]), format_double(k[pts[i]].real()),
               format_double(s.angles[i])});
      }
      mu = kl ? SpectralMeasure::sato_tate() : SpectralMeasure::uniform_interval();
      suite = kl ? "ks_kl2" : "ks_salie";
      if (kl) {
        Json w = Json::array();
        for (int sym = 1; sym <= 6; ++sym) w.push_back(std::abs(weyl_sym_power(k, sym, d)));
        row["weyl_abs"] = w;
      }
    } else if (o.family == "birch") {
      BirchMode mode;
      if (o.mode == "full") {
        mode = BirchMode::full;
      } else if (o.mode == "sampled") {
        mode = BirchMode::sampled;
      } else {
        throw InvalidArgument("--mode must be full or sampled");
      }
      const auto b = birch_vertical_survey(q, mode, g.seed);
      s = b.sample;
      row["excluded"] = b.excluded;
      if (mode == BirchMode::full) row["excluded_expected"] = b.excluded_expected;
      for (std::size_t i = 0; i < s.angles.size(); ++i) {
        t.add({o.family, std::to_string(qv), std::to_string(i), format_double(2.0 * std::cos(s.angles[i])),
               format_double(s.angles[i])});
      }
      mu = SpectralMeasure::sato_tate();
      suite = "ks_birch";
    } else if (o.family == "gauss") {
      s = gauss_angle_survey(q);
      for (std::size_t i = 0; i < s.angles.size(); ++i) {
        t.add({o.family, std::to_string(qv), std::to_string(i + 1), "1", format_double(s.angles[i])});
      }
      mu = SpectralMeasure::uniform_circle();
      suite = "ks_gauss";
    } else {
      throw InvalidArgument("--family must be one of kl2, salie, birch, gauss");
    }
    const double ks = ks_distance(s, *mu);
    row["sample_size"] = s.angles.size();
    row["measure"] = mu->name();
    row["ks"] = ks;
    if (o.family != "gauss") {
      Json m = Json::array();
      for (int l = 1; l <= 3; ++l) m.push_back(angle_moment(s, l));
      row["moments_2l"] = m;
    }
    per_q.push_back(row);
    if (o.assert_ks) r.check("ks_q" + std::to_string(qv), th.ref(suite), ks, th.get(suite));
  }
  r.results()["surveys"] = per_q;
  return out;
}

Output run_horizontal(u64 X, const Globals& g) {
  Output out{Report("horizontal", g.seed), CsvTable({"q", "kl2", "theta"})};
  const auto h = horizontal_survey(X, 1);
  out.report.params()["X"] = X;
  out.report.results()["angles"] = h.rows.size();
  out.report.results()["ks_sato_tate"] = h.ks;
  out.report.results()["status"] = h.status;
  for (const auto& row : h.rows) {
    out.table->add({std::to_string(row.q), format_double(row.kl2), format_double(row.theta)});
  }
  return out;
}

// ---------------------------------------------------------------------------

Output run_vdc(u64 p, u64 qv, const std::vector<double>& Ns, const Globals& g, Thresholds& th) {
  prime(p);
  prime(qv);
  Output out{Report("vdc", g.seed), CsvTable({"p", "q", "N", "re", "im", "bound_ratio", "optimal_ratio"})};
  Report& r = out.report;
  const PrimeModulus P(p), Q(qv);
  const u64 qbar = P.inverse(qv % p), pbar = Q.inverse(p % qv);
  const TraceFunction kp = dilate(hyper_kloosterman_all(P, 2), static_cast<i64>(mulmod(qbar, qbar, p)));
  const TraceFunction kq = dilate(hyper_kloosterman_all(Q, 2), static_cast<i64>(mulmod(pbar, pbar, qv)));
  std::vector<double> grid = Ns;
  if (grid.empty()) grid.push_back(std::floor(std::pow(double(p) * double(qv), 2.0 / 3.0)));
  r.params()["p"] = p;
  r.params()["q"] = qv;
  r.params()["N"] = grid;
  const SmoothBump v;
  const double thr = th.get("vdc");
  Json rows = Json::array();
  for (double N : grid) {
    if (!(2 * N < double(p) * double(qv))) throw InvalidArgument("--N must satisfy 2N < pq");
    const auto res = vdc_sum(kp, kq, N, v);
    Json row;
    row["N"] = N;
    row["value"] = to_json(res.value);
    row["bound_ratio"] = res.bound_ratio;
    row["optimal_ratio"] = res.optimal_ratio;
    rows.push_back(row);
    out.table->add({std::to_string(p), std::to_string(qv), format_double(N), format_double(res.value.real()),
                    format_double(res.value.imag()), format_double(res.bound_ratio),
                    format_double(res.optimal_ratio)});
    r.check("vdc_N" + format_double(N), "q-van der Corput bound", res.bound_ratio, thr);
  }
  r.results()["sums"] = rows;
  return out;
}

struct BurgessOpts {
  u64 q = 61;
  int l = 2;
  i64 B = 10;
  std::vector<u64> chars;
  bool wide = false;
};

Output run_burgess(const BurgessOpts& o, const Globals& g) {
  const PrimeModulus q = prime(o.q);
  if (o.B < 1) throw InvalidArgument("--B must be >= 1");
  if (o.chars.empty()) throw InvalidArgument("--char is required");
  for (u64 m : o.chars)
    if (m == 0 || m >= o.q - 1) throw InvalidArgument("--char must lie in 1..q-2");
  const i64 lo = o.wide ? 0 : o.B, hi = 2 * o.B;
  Output out{Report("burgess", g.seed), std::nullopt};
  Report& r = out.report;
  r.params()["q"] = o.q;
  r.params()["l"] = o.l;
  r.params()["B"] = o.B;
  r.params()["box"] = Json::array({lo, hi});
  r.params()["chars"] = u64_list(o.chars);
  const auto s = ex::burgess_sweep(q, o.l, lo, hi, o.chars);
  r.results()["tuples"] = s.tuples;
  r.results()["bad"] = s.bad;
  r.results()["good"] = s.good;
  r.results()["max_good_scaled"] = s.max_good_scaled;
  r.results()["max_bad_scaled"] = s.max_bad_scaled;
  r.results()["good_over_bound"] = s.good_over_bound;
  r.check("burgess_good", "Weil bound for the Burgess fraction", s.max_good_scaled, 2.0 * o.l - 1.0);
  return out;
}

struct AbShiftOpts {
  std::string family = "kloosterman_phase";
  u64 q = 1009;
  u64 M = 10;
  double N = 100;
  int l = 2;
  double gamma = 0.0;
  double C = 1.0;
};

Output run_abshift(const AbShiftOpts& o, const Globals& g) {
  const PrimeModulus q = prime(o.q);
  const TraceFunction k = ex::named_family(o.family, q);
  const auto alpha = random_sign_coefficients(static_cast<i64>(o.M), o.M, g.seed);
  const auto res = ab_shift_sum(k, alpha, o.N, SmoothBump(), o.l, o.gamma, o.C);
  Output out{Report("abshift", g.seed), std::nullopt};
  Report& r = out.report;
  r.params()["family"] = o.family;
  r.params()["q"] = o.q;
  r.params()["M"] = o.M;
  r.params()["N"] = o.N;
  r.params()["l"] = o.l;
  r.params()["gamma"] = o.gamma;
  r.params()["C"] = o.C;
  r.results()["value"] = to_json(res.value);
  r.results()["bound"] = res.bound;
  r.results()["ratio"] = res.ratio;
  r.results()["status"] = "report only";
  return out;
}

Output run_dap(int k, u64 X, u64 qv, i64 a, const Globals& g) {
  prime(qv);
  if (k != 2 && k != 3) throw InvalidArgument("--k must be 2 or 3");
  if (X < 2) throw InvalidArgument("--X must be >= 2");
  const ArithmeticTables t = sieve_tables(X);
  const auto d = divisor_in_ap(k, X, qv, a, t);
  Output out{Report("dap", g.seed), std::nullopt};
  Report& r = out.report;
  r.params()["k"] = k;
  r.params()["X"] = X;
  r.params()["q"] = qv;
  r.params()["a"] = a;
  r.results()["progression_sum"] = d.progression_sum;
  r.results()["coprime_sum"] = d.coprime_sum;
  r.results()["phi_q"] = d.phi_q;
  r.results()["discrepancy"] = d.discrepancy;
  r.results()["scale"] = d.scale;
  r.results()["ratio"] = d.ratio;
  r.results()["status"] = "report only";
  return out;
}

Output run_primesum(const std::string& family, u64 qv, u64 X, const Globals& g, Thresholds& th) {
  const PrimeModulus q = prime(qv);
  if (X == 0) X = qv;
  const TraceFunction k = ex::named_family(family, q);
  const ArithmeticTables t = sieve_tables(std::max<u64>(X, 2));
  const cplx s = prime_sum(k, X, t);
  u64 pi = 0;
  for (u32 p : t.primes())
    if (p <= X) ++pi;
  const double ratio = pi ? std::abs(s) / double(pi) : 0.0;
  Output out{Report("primesum", g.seed), std::nullopt};
  Report& r = out.report;
  r.params()["family"] = family;
  r.params()["q"] = qv;
  r.params()["X"] = X;
  r.results()["sum"] = to_json(s);
  r.results()["prime_count"] = pi;
  r.results()["ratio"] = ratio;
  r.check("primesum_ratio", "trace functions vs primes", ratio, th.get("primesum"));
  return out;
}

Output run_calibrate(const std::vector<std::string>& suites, const std::vector<u64>& grid, const Globals& g,
                     const std::string& manifest_path) {
  std::vector<std::string> todo = suites;
  const bool all = todo.empty() || (todo.size() == 1 && todo[0] == "all");
  if (all) todo = suite_names();
  // a full run rewrites the manifest; a partial run keeps the other suites
  Manifest m;
  if (!all && std::filesystem::exists(manifest_path)) m = load_manifest(manifest_path);
  m.seed = g.seed;
  Output out{Report("calibrate", g.seed), std::nullopt};
  Report& r = out.report;
  r.params()["suites"] = todo;
  r.params()["manifest"] = std::filesystem::path(manifest_path).filename().string();
  if (!grid.empty()) r.params()["q_grid"] = u64_list(grid);
  for (const auto& s : todo) {
    std::optional<std::vector<u64>> gr;
    if (!grid.empty()) gr = grid;
    const ManifestEntry e = calibrate_suite(s, gr, g.seed);
    Json row;
    row["observed"] = e.observed;
    row["suggested_threshold"] = e.suggested_threshold;
    row["threshold"] = e.threshold;
    r.results()[s] = row;
    m.upsert(e);
  }
  save_manifest(m, manifest_path);
  return out;
}

std::vector<std::string> reversed(const std::vector<std::string>& v) { return {v.rbegin(), v.rend()}; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tracefn-lab: trace functions over prime fields, their sums and statistics"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "Worker thread cap (results do not depend on it)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for every randomized input");
  app.add_option("--out", g.out_path, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Output format: json or csv");
  app.add_option("--manifest", g.manifest_path, "Calibration manifest path");

  IdentitiesOpts io;
  auto* s_id = app.add_subcommand("identities", "Exact-identity suites; nonzero exit on any failure");
  s_id->add_option("--q", io.q, "Prime modulus")->required();
  s_id->add_option("--c-max", io.c_max, "Largest composite modulus for twisted multiplicativity");
  s_id->add_option("--hb-J", io.hb_J, "Heath-Brown J");
  s_id->add_option("--hb-X", io.hb_X, "Heath-Brown X");
  s_id->add_option("--count", io.count, "Random functions for the Fourier checks");

  BoundsOpts bo;
  auto* s_b = app.add_subcommand("bounds", "Weil, Deligne, Polya-Vinogradov and FKMRRS ratio suites");
  s_b->add_option("--q", bo.q, "Prime modulus")->required();
  s_b->add_option("--family", bo.families, "Family name (repeatable)");
  s_b->add_option("--samples", bo.samples, "Sampled intervals for FKMRRS");

  SatoTateOpts so;
  auto* s_st = app.add_subcommand("satotate", "Angle surveys and KS distances");
  s_st->add_option("--family", so.family, "kl2, salie, birch or gauss")->required();
  s_st->add_option("--q", so.qs, "Prime modulus (repeatable or comma separated)")->required()->delimiter(',');
  s_st->add_option("--mode", so.mode, "Birch mode: full or sampled");
  s_st->add_flag("--assert", so.assert_ks, "Assert KS against the frozen thresholds");

  u64 hx = 100;
  auto* s_h = app.add_subcommand("horizontal", "Horizontal Kloosterman angle survey (report only)");
  s_h->add_option("--X", hx, "Prime bound")->required();

  u64 vp = 0, vq = 0;
  std::vector<double> vN;
  auto* s_v = app.add_subcommand("vdc", "q-van der Corput sums for c = pq");
  s_v->add_option("--p", vp, "Small prime")->required();
  s_v->add_option("--q", vq, "Large prime")->required();
  s_v->add_option("--N-grid,--N", vN, "Lengths N (default floor((pq)^(2/3)))")->delimiter(',');

  BurgessOpts bu;
  auto* s_bu = app.add_subcommand("burgess", "Exhaustive Burgess complete sums");
  s_bu->add_option("--q", bu.q, "Prime modulus")->required();
  s_bu->add_option("--l", bu.l, "Half length");
  s_bu->add_option("--B", bu.B, "Box parameter: entries in [B, 2B)");
  s_bu->add_option("--char", bu.chars, "Character index (repeatable)")->required()->delimiter(',');
  s_bu->add_flag("--wide", bu.wide, "Use the box [0, 2B) instead of [B, 2B)");

  AbShiftOpts ab;
  auto* s_ab = app.add_subcommand("abshift", "Type I sums sum_m alpha_m sum_n V(n/N) K(mn), report only");
  s_ab->add_option("--family", ab.family, "Family name");
  s_ab->add_option("--q", ab.q, "Prime modulus")->required();
  s_ab->add_option("--M", ab.M, "Length of alpha");
  s_ab->add_option("--N", ab.N, "Smooth length");
  s_ab->add_option("--l", ab.l, "Shift parameter l");
  s_ab->add_option("--gamma", ab.gamma, "Exponent of q in the bound");
  s_ab->add_option("--C", ab.C, "Constant in the bound");

  int dk = 2;
  u64 dX = 0, dq = 0;
  i64 da = 1;
  auto* s_d = app.add_subcommand("dap", "Divisor functions in arithmetic progressions");
  s_d->add_option("--k", dk, "2 or 3")->required();
  s_d->add_option("--X", dX, "Length")->required();
  s_d->add_option("--q", dq, "Prime modulus")->required();
  s_d->add_option("--a", da, "Residue class")->required();

  std::string pf = "kl2";
  u64 pq = 0, pX = 0;
  auto* s_p = app.add_subcommand("primesum", "Sums of trace functions over primes");
  s_p->add_option("--family", pf, "Family name");
  s_p->add_option("--q", pq, "Prime modulus")->required();
  s_p->add_option("--X", pX, "Prime bound (default q)");

  std::vector<std::string> cs;
  std::vector<u64> cg;
  auto* s_c = app.add_subcommand("calibrate", "Regenerate calibration manifest entries");
  s_c->add_option("--suite", cs, "Suite name or 'all' (repeatable)")->delimiter(',');
  s_c->add_option("--q-grid", cg, "Override the calibration grid")->delimiter(',');

  try {
    app.parse(reversed(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  // "--out csv" / "--out json" select the format and keep stdout.
  if (g.out_path == "csv" || g.out_path == "json") {
    g.format = g.out_path;
    g.out_path.clear();
  }
  if (g.format != "json" && g.format != "csv") {
    err << "usage error: --format must be json or csv\n";
    return kExitUsage;
  }
  if (g.threads > 0) set_thread_count(g.threads);
  if (g.manifest_path.empty()) g.manifest_path = default_manifest_path();
  Thresholds th(g.manifest_path);

  try {
    Output o{Report("none", g.seed), std::nullopt};
    if (s_id->parsed()) {
      o = run_identities(io, g);
    } else if (s_b->parsed()) {
      o = run_bounds(bo, g, th);
    } else if (s_st->parsed()) {
      o = run_satotate(so, g, th);
    } else if (s_h->parsed()) {
      o = run_horizontal(hx, g);
    } else if (s_v->parsed()) {
      o = run_vdc(vp, vq, vN, g, th);
    } else if (s_bu->parsed()) {
      o = run_burgess(bu, g);
    } else if (s_ab->parsed()) {
      o = run_abshift(ab, g);
    } else if (s_d->parsed()) {
      o = run_dap(dk, dX, dq, da, g);
    } else if (s_p->parsed()) {
      o = run_primesum(pf, pq, pX, g, th);
    } else if (s_c->parsed()) {
      o = run_calibrate(cs, cg, g, g.manifest_path);
    }

    std::string text;
    if (g.format == "csv") {
      text = o.table ? o.table->str() : checks_table(o.report).str();
    } else {
      text = o.report.dump();
    }
    if (g.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(g.out_path, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write --out file '" + g.out_path + "'");
      f << text;
      // With CSV going to a file, the JSON summary still goes to stdout.
      if (g.format == "csv") out << o.report.dump();
    }
    for (const Check* c : o.report.failures()) {
      err << "assertion failed: " << c->name << " = " << format_double(c->value)
          << (c->direction == "min" ? " < " : " > ") << format_double(c->threshold) << " (" << c->bound << ")\n";
    }
    return o.report.ok() ? kExitOk : kExitAssertion;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DomainViolation& e) {
    err << "domain violation: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const InvalidModulus& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
}

}  // namespace tracefn
