#include "tracefn/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "tracefn/experiments.hpp"
#include "tracefn/satotate.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

#ifndef TRACEFN_DEFAULT_MANIFEST
#define TRACEFN_DEFAULT_MANIFEST "calibration/manifest.json"
#endif

namespace tracefn {

using json = nlohmann::ordered_json;

const ManifestEntry* Manifest::find(const std::string& suite) const {
  for (const auto& e : entries)
    if (e.suite == suite) return &e;
  return nullptr;
}

double Manifest::threshold(const std::string& suite) const {
  const ManifestEntry* e = find(suite);
  if (!e) throw InvalidArgument("manifest has no entry for suite '" + suite + "'");
  return e->threshold;
}

void Manifest::upsert(ManifestEntry e) {
  for (auto& old : entries) {
    if (old.suite == e.suite) {
      old = std::move(e);
      return;
    }
  }
  entries.push_back(std::move(e));
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.suite < b.suite; });
}

std::string default_manifest_path() {
  if (const char* env = std::getenv("TRACEFN_LAB_MANIFEST"); env && *env) return env;
  return TRACEFN_DEFAULT_MANIFEST;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open manifest '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw InvalidArgument("manifest '" + path + "' is not valid JSON: " + ex.what());
  }
  Manifest m;
  m.version = j.at("version").get<int>();
  m.seed = j.at("seed").get<u64>();
  for (const auto& e : j.at("entries")) {
    ManifestEntry me;
    me.suite = e.at("suite").get<std::string>();
    me.family = e.value("family", "");
    me.statistic = e.value("statistic", "");
    me.direction = e.value("direction", "max");
    me.q_grid = e.value("q_grid", std::vector<u64>{});
    me.observed = e.value("observed", 0.0);
    me.suggested_threshold = e.value("suggested_threshold", 0.0);
    me.threshold = e.at("threshold").get<double>();
    me.ref = e.value("ref", "");
    m.entries.push_back(std::move(me));
  }
  return m;
}

std::string manifest_to_string(const Manifest& m) {
  json j;
  j["version"] = m.version;
  j["seed"] = m.seed;
  json arr = json::array();
  auto sorted = m.entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.suite < b.suite; });
  for (const auto& e : sorted) {
    json o;
    o["suite"] = e.suite;
    o["family"] = e.family;
    o["statistic"] = e.statistic;
    o["direction"] = e.direction;
    o["q_grid"] = e.q_grid;
    o["observed"] = e.observed;
    o["suggested_threshold"] = e.suggested_threshold;
    o["threshold"] = e.threshold;
    o["ref"] = e.ref;
    arr.push_back(std::move(o));
  }
  j["entries"] = std::move(arr);
  return j.dump(2) + "\n";
}

void save_manifest(const Manifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write manifest '" + path + "'");
  out << manifest_to_string(m);
}

std::vector<ManifestEntry> pinned_entries() {
  auto e = [](std::string suite, std::string family, std::string stat, std::string dir, std::vector<u64> grid,
              double thr, std::string ref) {
    ManifestEntry m;
    m.suite = std::move(suite);
    m.family = std::move(family);
    m.statistic = std::move(stat);
    m.direction = std::move(dir);
    m.q_grid = std::move(grid);
    m.threshold = thr;
    m.ref = std::move(ref);
    return m;
  };
  return {
      e("bilinear", "kl2", "bilinear bound_ratio, M = N = 31, random signs", "max", {211, 503}, 30.0,
        "bilinear sums of trace functions"),
      e("burgess", "multiplicative characters", "max |sum_r chi(F_b(r))| / sqrt q over good tuples, l = 2", "max",
        {31, 37}, 3.0, "Weil bound for F_b, constant 2l - 1"),
      e("fkmrrs", "kl2", "max |S(K;I)| / (sqrt q (1 + log(|I|/sqrt q))), 50 intervals", "max", {101, 503, 1009},
        25.0, "FKMRRS refinement of Polya-Vinogradov"),
      e("khan_ngo_paired", "kl2", "min paired 4-fold sum / q, tuples in [1,8]^4", "min", {101, 211}, 0.5,
        "diagonal of the Khan-Ngo 4-fold sum"),
      e("khan_ngo_unpaired", "kl2", "max unpaired |4-fold sum| / sqrt q, tuples in [1,8]^4", "max", {101, 211},
        8.0, "Khan-Ngo 4-fold Kloosterman bound"),
      e("ks_birch", "birch", "KS of the full (a, b) grid vs Sato-Tate", "max", {101, 151}, 0.05,
        "Birch vertical Sato-Tate law"),
      e("ks_birch_family", "birch_t1", "KS of a = T, b = 1 vs Sato-Tate", "max", {1009}, 0.06,
        "Sato-Tate law for elliptic families"),
      e("ks_gauss", "gauss", "KS of Gauss-sum arguments vs uniform circle", "max", {1009, 2003}, 0.03,
        "equidistribution of Gauss sums"),
      e("ks_kl2", "kl2", "KS of Kloosterman angles vs Sato-Tate", "max", {1009, 2003}, 0.02,
        "Sato-Tate law for Kloosterman sums"),
      e("ks_salie", "salie_real", "KS of Salie angles over squares vs uniform", "max", {1009, 2003}, 0.02,
        "uniform law for Salie angles"),
      e("moments_l1", "kl2", "sqrt q |M_2 - 1|", "max", {101, 211, 503}, 10.0, "Sato-Tate moments, Catalan C_1"),
      e("moments_l2", "kl2", "sqrt q |M_4 - 2|", "max", {101, 211, 503}, 100.0, "Sato-Tate moments, Catalan C_2"),
      e("moments_l3", "kl2", "sqrt q |M_6 - 5|", "max", {101, 211, 503}, 1000.0, "Sato-Tate moments, Catalan C_3"),
      e("primesum", "kl2", "|sum_{p <= q} K(p)| / pi(q)", "max", {101, 211}, 0.8, "trace functions vs primes"),
      e("pv", "kl2,legendre,inverse_phase", "max |S(K;I)| / (sqrt q log q), exact scan", "max", {101, 211, 503, 997},
        5.0, "Polya-Vinogradov bound"),
      e("quasi_orth", "kl2", "max over a != 1 of sqrt q |C([x a]* Kl2, Kl2)|", "max", {101, 211}, 25.0,
        "quasi-orthogonality relations"),
      e("salie_m2", "salie_real", "sqrt q |mean (2 cos theta)^2 - 2| over squares", "max", {1009, 2003}, 10.0,
        "uniform law for Salie angles, central binomial moment"),
      e("type2", "kloosterman_phase", "max |type II complete sum| / q^{3/2}, generic tuples, l = 2, B = 10", "max",
        {31, 53}, 10.0, "type II complete sum bound"),
      e("vdc", "kl2 mod pq", "max vdC bound_ratio over the p ~ c^{1/3} grid (grid value = c_max)", "max", {30000},
        10.0, "q-van der Corput bound"),
      e("weyl", "kl2", "max_{1 <= k <= 6} sqrt q |Weyl sum of Sym^k|", "max", {1009, 2003}, 10.0,
        "Weyl criterion for Sato-Tate"),
  };
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& e : pinned_entries()) out.push_back(e.suite);
  return out;
}

namespace {

double sqrtq(u64 q) { return std::sqrt(static_cast<double>(q)); }

// One statistic of a suite at one grid value.
double measure(const std::string& suite, u64 g, u64 seed) {
  using namespace experiments;
  if (suite == "vdc") {
    const SmoothBump v;
    double worst = 0.0;
    for (auto [p, q] : vdc_grid(g)) worst = std::max(worst, vdc_point(p, q, v).bound_ratio);
    return worst;
  }
  const PrimeModulus q(g);
  if (suite == "pv") {
    double worst = 0.0;
    for (const char* f : {"kl2", "legendre", "inverse_phase"}) worst = std::max(worst, pv_ratio(named_family(f, q)));
    return worst;
  }
  if (suite == "fkmrrs") return fkmrrs_scan(named_family("kl2", q), 50, seed).max_ratio;
  if (suite == "type2") return type2_sweep(kloosterman_phase(q, 1, 1), 2, 10).max_scaled;
  if (suite == "khan_ngo_unpaired") return khan_ngo(q, 8).unpaired_max_scaled;
  if (suite == "khan_ngo_paired") return khan_ngo(q, 8).paired_min_scaled;
  if (suite == "quasi_orth") return quasi_orthogonality_scaled(q);
  if (suite == "ks_kl2") {
    return ks_distance(extract_angles(named_family("kl2", q), AngleDomain::nonzero()), SpectralMeasure::sato_tate());
  }
  if (suite == "ks_salie") {
    return ks_distance(extract_angles(named_family("salie_real", q), AngleDomain::squares()),
                       SpectralMeasure::uniform_interval());
  }
  if (suite == "salie_m2") {
    const auto s = extract_angles(named_family("salie_real", q), AngleDomain::squares());
    return sqrtq(g) * std::abs(angle_moment(s, 1) - 2.0);
  }
  if (suite == "ks_birch") {
    return ks_distance(birch_vertical_survey(q, BirchMode::full, seed).sample, SpectralMeasure::sato_tate());
  }
  if (suite == "ks_birch_family") {
    return ks_distance(birch_family_angles(q), SpectralMeasure::sato_tate());
  }
  if (suite == "ks_gauss") return ks_distance(gauss_angle_survey(q), SpectralMeasure::uniform_circle());
  if (suite == "weyl") {
    const TraceFunction k = named_family("kl2", q);
    double worst = 0.0;
    for (int s = 1; s <= 6; ++s)
      worst = std::max(worst, std::abs(weyl_sym_power(k, s, AngleDomain::nonzero())));
    return sqrtq(g) * worst;
  }
  if (suite.rfind("moments_l", 0) == 0) {
    const int l = suite.back() - '0';
    return sqrtq(g) * std::abs(moment(named_family("kl2", q), l) - catalan(l));
  }
  if (suite == "bilinear") {
    const auto a = random_sign_coefficients(31, 31, seed);
    const auto b = random_sign_coefficients(31, 31, seed + 1);
    return bilinear_form(named_family("kl2", q), a, b).bound_ratio;
  }
  if (suite == "burgess") {
    std::vector<u64> chars{1, (g - 1) / 2};
    if ((g - 1) % 3 == 0) chars.push_back((g - 1) / 3);
    return burgess_sweep(q, 2, 0, 10, chars).max_good_scaled;
  }
  if (suite == "primesum") return prime_sum_ratio(named_family("kl2", q));
  throw InvalidArgument("unknown calibration suite '" + suite + "'");
}

}  // namespace

ManifestEntry calibrate_suite(const std::string& suite, const std::optional<std::vector<u64>>& grid, u64 seed) {
  const auto pinned = pinned_entries();
  auto it = std::find_if(pinned.begin(), pinned.end(), [&](const auto& e) { return e.suite == suite; });
  if (it == pinned.end()) throw InvalidArgument("unknown calibration suite '" + suite + "'");
  ManifestEntry e = *it;
  if (grid) e.q_grid = *grid;
  if (e.q_grid.empty()) throw InvalidArgument("calibration grid is empty");
  const bool is_min = e.direction == "min";
  e.observed = is_min ? std::numeric_limits<double>::infinity() : 0.0;
  for (u64 g : e.q_grid) {
    const double v = measure(suite, g, seed);
    e.observed = is_min ? std::min(e.observed, v) : std::max(e.observed, v);
  }
  e.suggested_threshold = is_min ? e.observed / 2.0 : 2.0 * e.observed;
  return e;
}

}  // namespace tracefn
