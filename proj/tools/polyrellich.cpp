#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "polyrellich/acceptance.hpp"
#include "polyrellich/polyrellich.hpp"

namespace pr = polyrellich;
using nlohmann::ordered_json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_config_error(pr::ErrorCode c) {
  switch (c) {
    case pr::ErrorCode::ParseError:
    case pr::ErrorCode::InvalidArgument:
    case pr::ErrorCode::MissingKernelConstant:
    case pr::ErrorCode::UnboundedWithoutWindow:
    case pr::ErrorCode::DimensionMismatch:
    case pr::ErrorCode::UnsupportedDimension:
    case pr::ErrorCode::GammaTooSmall:
      return true;
    default:
      return false;
  }
}

// Numerical failure after outputs were written; the message names the invariant.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_writable(const std::string& path) {
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw ConfigError("cannot write output file '" + path + "'");
}

std::string summary_path(const std::string& out) {
  return std::filesystem::path(out).replace_extension(".json").string();
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write summary file '" + path + "'");
  f << j.dump(2) << "\n";
}

std::optional<pr::AxisBox> parse_window(const std::vector<double>& w, int dim) {
  if (w.empty()) return std::nullopt;
  if (static_cast<int>(w.size()) != 2 * dim)
    throw ConfigError("--window needs " + std::to_string(2 * dim) + " numbers (lower corner then upper corner)");
  pr::AxisBox b{pr::Point::zero(dim), pr::Point::zero(dim)};
  for (int i = 0; i < dim; ++i) {
    b.lower[i] = w[static_cast<std::size_t>(i)];
    b.upper[i] = w[static_cast<std::size_t>(dim + i)];
    if (!(b.lower[i] < b.upper[i])) throw ConfigError("--window lower corner must be below the upper corner");
  }
  return b;
}

std::optional<double> parse_kernel_constant(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !(v > 0.0)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("--kernel-constant must be 'auto' or a positive number, got '" + s + "'");
  }
}

// Heat trace of the region when it is an interval (any m) or an axis box (m = 1).
std::optional<double> exact_heat_trace(const pr::Region& region, int m, double t) {
  if (const auto* iu = region.as<pr::IntervalUnion>()) {
    if (iu->intervals.size() != 1) return std::nullopt;
    const double len = iu->intervals[0].hi - iu->intervals[0].lo;
    if (!std::isfinite(len)) return std::nullopt;
    return pr::heat_trace_interval(m, t / std::pow(len, 2.0 * m));
  }
  if (const auto* b = region.as<pr::AxisBox>(); b && m == 1) {
    double v = 1.0;
    for (int i = 0; i < region.dim(); ++i) v *= pr::heat_trace_interval(1, t / std::pow(b->upper[i] - b->lower[i], 2));
    return v;
  }
  return std::nullopt;
}

std::optional<double> exact_resolvent_trace(const pr::Region& region, int m, double gamma) {
  const auto* iu = region.as<pr::IntervalUnion>();
  if (!iu || iu->intervals.size() != 1) return std::nullopt;
  const double len = iu->intervals[0].hi - iu->intervals[0].lo;
  if (!std::isfinite(len)) return std::nullopt;
  return std::pow(len, 2.0 * m * gamma) * pr::resolvent_series(m, gamma).value;
}

std::string index_column(int i) { return "index_" + std::to_string(i + 1); }

// ---------------------------------------------------------------- pseudo
struct PseudoOptions {
  std::string region, out = "pseudo.csv";
  double m = 1.0;
  std::size_t samples = 10000;
  int resolution = 0;
  std::uint64_t seed = 0;
  std::vector<double> window;
};

int run_pseudo(const PseudoOptions& o) {
  const auto region = pr::load_region(o.region);
  check_writable(o.out);
  pr::SamplerConfig sc{o.samples, o.seed, parse_window(o.window, region.dim())};
  const int res = o.resolution > 0 ? o.resolution : pr::default_resolution(o.m);
  const auto rule = pr::build_rule(region.dim(), res);
  const auto samples = pr::pseudodistance_samples(region, o.m, sc, rule);
  {
    std::vector<std::string> cols;
    for (int i = 0; i < region.dim(); ++i) cols.push_back("x_" + std::to_string(i + 1));
    for (const char* c : {"d", "a_m", "ratio"}) cols.emplace_back(c);
    pr::CsvWriter csv(o.out, "pseudo v1; one row per seeded interior sample; ratio = a_m / d", cols);
    for (const auto& s : samples) {
      auto row = csv.row();
      for (int i = 0; i < region.dim(); ++i) row << s.x[i];
      row << s.d << s.a << s.a / s.d;
    }
  }
  const auto rep = pr::regularity_from_samples(region, o.m, samples, o.seed);
  write_json(summary_path(o.out), ordered_json{{"subcommand", "pseudo"},
                                               {"region", pr::region_to_json(region)},
                                               {"m", o.m},
                                               {"resolution", res},
                                               {"samples", rep.sample_count},
                                               {"seed", o.seed},
                                               {"rng", pr::kRngAlgorithm},
                                               {"k_estimate", number(rep.k_estimate)},
                                               {"min_ratio", number(rep.min_ratio)},
                                               {"convex", rep.convex},
                                               {"convex_bound", number(rep.convex_bound)}});
  std::printf("k_m estimate %.10g (min a_m/d %.10g) over %zu samples\n", rep.k_estimate, rep.min_ratio,
              rep.sample_count);
  return 0;
}

// ---------------------------------------------------------------- whitney
struct WhitneyOptions {
  std::string region, out = "whitney.csv";
  int level_cap = 12;
  std::size_t cube_cap = 1000000;
  std::size_t samples = 10000;
  std::size_t per_cube = 4;
  std::uint64_t seed = 0;
};

int run_whitney(const WhitneyOptions& o) {
  const auto region = pr::load_region(o.region);
  check_writable(o.out);
  const auto dec = pr::decompose(region, o.level_cap, o.cube_cap);
  const auto ratios = pr::cube_distance_ratios(dec, region, o.per_cube, o.seed);
  {
    std::vector<std::string> cols{"level"};
    for (int i = 0; i < region.dim(); ++i) cols.push_back(index_column(i));
    cols.emplace_back("side");
    cols.emplace_back("max_sampled_distance_ratio");
    pr::CsvWriter csv(o.out, "whitney v1; maximal dyadic cubes sorted by (level, index); ratio = d / (2 sqrt(N) side)",
                      cols);
    for (std::size_t k = 0; k < dec.cubes.size(); ++k) {
      const auto& c = dec.cubes[k];
      auto row = csv.row();
      row << c.level;
      for (int i = 0; i < c.dim; ++i) row << static_cast<long long>(c.index[static_cast<std::size_t>(i)]);
      row << c.side() << ratios[k];
    }
  }
  const auto rep = pr::verify_partition(dec, region, o.samples, o.seed + 1);
  const auto gap = pr::coverage_gap_estimate(dec, region, std::max<std::size_t>(o.samples * 10, 2), o.seed + 2);
  write_json(summary_path(o.out),
             ordered_json{{"subcommand", "whitney"},
                          {"region", pr::region_to_json(region)},
                          {"level_cap", dec.level_cap},
                          {"coarsest_level", dec.coarsest_level},
                          {"cubes", dec.cubes.size()},
                          {"collar_cubes", dec.collar.size()},
                          {"residual_measure", dec.residual_measure},
                          {"residual_exact", dec.residual_exact},
                          {"coverage_gap_estimate", {{"value", gap.value}, {"sigma", gap.sigma}}},
                          {"verify",
                           {{"disjoint", rep.disjoint},
                            {"coverage_samples", rep.coverage_samples},
                            {"coverage_failures", rep.coverage_failures},
                            {"distance_samples", rep.distance_samples},
                            {"distance_violations", rep.distance_violations},
                            {"max_distance_ratio", rep.max_distance_ratio},
                            {"violations", rep.violations}}},
                          {"seed", o.seed}});
  std::printf("%zu cubes, %zu collar cubes, residual measure %.6g\n", dec.cubes.size(), dec.collar.size(),
              dec.residual_measure);
  if (!rep.ok()) throw InvariantFailure("partition check failed: " + rep.violations.front());
  return 0;
}

// ---------------------------------------------------------------- eig
struct EigOptions {
  std::string out = "eig.csv";
  int m = 2, count = 10, basis = 0;
  std::uint64_t seed = 0;
};

int run_eig(const EigOptions& o) {
  check_writable(o.out);
  const int basis = o.basis > 0 ? o.basis : pr::default_basis_size(o.m, o.count);
  const auto t = pr::eigenvalues_1d(o.m, o.count, basis);
  std::size_t outside = 0;
  {
    pr::CsvWriter csv(o.out, "eig v1; Rayleigh-Ritz eigenvalues of (-d^2/dx^2)^m on (0,1); bounds (n pi)^{2m}, ((m+n-1) pi)^{2m}",
                      {"n", "lambda", "residual", "lower", "upper", "in_sandwich"});
    for (int n = 1; n <= t.count; ++n) {
      const auto i = static_cast<std::size_t>(n - 1);
      const auto [lo, hi] = pr::eigenvalue_bounds(o.m, n);
      const bool in = t.values[i] >= lo - t.residuals[i] && t.values[i] <= hi + t.residuals[i];
      outside += in ? 0 : 1;
      csv.row() << n << t.values[i] << t.residuals[i] << lo << hi << in;
    }
  }
  write_json(summary_path(o.out), ordered_json{{"subcommand", "eig"},
                                               {"m", o.m},
                                               {"count", o.count},
                                               {"basis_size", basis},
                                               {"gram_condition", t.gram_condition},
                                               {"values", t.values},
                                               {"residuals", t.residuals}});
  if (outside) throw InvariantFailure("eigenvalue sandwich violated for " + std::to_string(outside) + " values");
  return 0;
}

// ---------------------------------------------------------------- hardy
struct HardyOptions {
  std::string out = "ratios.csv";
  int m = 1, fuzz = 100, grid = 8192;
  std::uint64_t seed = 0;
};

int run_hardy(const HardyOptions& o) {
  check_writable(o.out);
  if (o.fuzz < 1) throw ConfigError("--fuzz must be >= 1");
  struct Row {
    std::size_t components;
    double lo, hi, form, wd, wa, ratio, ratio_am;
  };
  std::vector<Row> rows(static_cast<std::size_t>(o.fuzz));
  pr::parallel_for(rows.size(), [&](std::size_t i) {
    const auto fc = pr::bump_fuzz_case(o.m, o.seed, i, o.grid);
    const double form = pr::qform_1d(fc.f, o.m);
    const double wd = pr::weighted_norm(fc.f, fc.region, o.m, pr::Weight::InverseD);
    const double wa = pr::weighted_norm(fc.f, fc.region, o.m, pr::Weight::InverseAm);
    rows[i] = {fc.region.as<pr::IntervalUnion>()->intervals.size(), fc.f.lo(), fc.f.hi(), form, wd, wa,
               pr::hardy_ratio_1d(fc.f, fc.region, o.m, pr::Weight::InverseD),
               pr::hardy_ratio_1d(fc.f, fc.region, o.m, pr::Weight::InverseAm)};
  });
  double worst = 0.0;
  {
    pr::CsvWriter csv(o.out, "hardy v1; seeded bump superpositions; ratio = (D^2/4^m) int f^2 w / int |f^(m)|^2 with w = d^{-2m} or a_m^{-2m}",
                      {"case", "components", "lo", "hi", "qform", "weighted_d", "weighted_am", "ratio", "ratio_am"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      worst = std::max({worst, r.ratio, r.ratio_am});
      csv.row() << i << r.components << r.lo << r.hi << r.form << r.wd << r.wa << r.ratio << r.ratio_am;
    }
  }
  write_json(summary_path(o.out), ordered_json{{"subcommand", "hardy"},
                                               {"m", o.m},
                                               {"cases", o.fuzz},
                                               {"grid", o.grid},
                                               {"seed", o.seed},
                                               {"max_ratio", worst}});
  std::printf("max ratio %.10g over %d cases\n", worst, o.fuzz);
  if (worst > 1.0 + 1e-6) throw InvariantFailure("Hardy-Rellich inequality violated: ratio " + std::to_string(worst));
  return 0;
}

// ---------------------------------------------------------------- sharpness
struct SharpnessOptions {
  std::string out = "sharp.csv";
  int m = 1, nmin = 4, nmax = 1024;
  std::uint64_t seed = 0;
};

int run_sharpness(const SharpnessOptions& o) {
  check_writable(o.out);
  if (o.nmin < 2 || o.nmax < o.nmin) throw ConfigError("need 2 <= --nmin <= --nmax");
  std::vector<pr::SharpnessRow> rows;
  for (int n = o.nmin; n <= o.nmax; n *= 2) rows.push_back(pr::sharpness_row(o.m, n));
  {
    pr::CsvWriter csv(o.out, "sharpness v1; g_n = x^{m-1/2} phi_n on (0,4); weighted = int g_n^2 / x^{2m}; form = Q_m(g_n)",
                      {"n", "ln_n", "weighted", "form", "ratio"});
    for (const auto& r : rows) csv.row() << r.n << std::log(r.n) << r.weighted << r.form << r.ratio;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].ratio >= rows[i - 1].ratio;
  std::vector<double> x, yw, yf;
  for (const auto& r : rows)
    if (r.n >= 64) {
      x.push_back(std::log(r.n));
      yw.push_back(r.weighted);
      yf.push_back(r.form);
    }
  ordered_json summary{{"subcommand", "sharpness"}, {"m", o.m}, {"nmin", o.nmin}, {"nmax", o.nmax}, {"monotone", monotone}};
  if (x.size() >= 2) {
    const auto fw = pr::least_squares(x, yw), ff = pr::least_squares(x, yf);
    summary["weighted_fit_n_ge_64"] = {{"slope", fw.slope}, {"intercept", fw.intercept}};
    summary["form_fit_n_ge_64"] = {{"slope", ff.slope}, {"intercept", ff.intercept}};
  }
  write_json(summary_path(o.out), summary);
  if (!monotone) throw InvariantFailure("sharpness ratio is not nondecreasing in n");
  return 0;
}

// ---------------------------------------------------------------- trace / resolvent
struct TraceOptions {
  std::string region, out = "trace.csv", kernel = "auto";
  int m = 1, level_cap = 10, resolution = 0;
  std::vector<double> t{0.01, 0.1, 1.0};
  std::vector<double> gamma{1.0};
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

int run_trace(const TraceOptions& o) {
  const auto region = pr::load_region(o.region);
  check_writable(o.out);
  for (double t : o.t)
    if (!(t > 0.0)) throw ConfigError("--t values must be positive");
  const auto tc = pr::trace_constants(o.m, region.dim(), parse_kernel_constant(o.kernel));
  const auto dec = pr::decompose(region, o.level_cap);
  const auto rule = pr::build_rule(region.dim(), o.resolution > 0 ? o.resolution : pr::default_resolution(o.m));
  std::vector<pr::TraceReport> reports;
  for (std::size_t i = 0; i < o.t.size(); ++i) {
    pr::TraceReport r;
    r.t = o.t[i];
    r.lower = pr::lower_trace_bound(region, r.t, dec, tc);
    r.upper = pr::upper_trace_bound(region, r.t, tc, rule, o.samples, o.seed + i);
    r.exact = exact_heat_trace(region, o.m, r.t);
    reports.push_back(r);
  }
  std::size_t violations = 0;
  {
    pr::CsvWriter csv(o.out, "trace v1; two-sided heat trace bounds; sigma is 3 standard errors of the upper bound",
                      {"t", "lower", "lower_error", "exact", "upper", "sigma"});
    for (const auto& r : reports) {
      csv.row() << r.t << r.lower.value << r.lower.error << r.exact << r.upper.value << r.upper.error;
      if (r.exact && (r.lower.value > *r.exact + 3.0 * r.lower.error || *r.exact > r.upper.value + r.upper.error))
        ++violations;
    }
  }
  write_json(summary_path(o.out), ordered_json{{"subcommand", "trace"},
                                               {"region", pr::region_to_json(region)},
                                               {"m", o.m},
                                               {"constants",
                                                {{"b", tc.b},
                                                 {"c", tc.c},
                                                 {"b_prime", tc.b_prime},
                                                 {"c_prime", tc.c_prime},
                                                 {"kernel_constant", tc.kernel_constant}}},
                                               {"cubes", dec.cubes.size()},
                                               {"residual_measure", dec.residual_measure},
                                               {"samples", o.samples},
                                               {"seed", o.seed}});
  if (violations) throw InvariantFailure("heat trace sandwich violated at " + std::to_string(violations) + " times");
  return 0;
}

int run_resolvent(const TraceOptions& o) {
  const auto region = pr::load_region(o.region);
  check_writable(o.out);
  const auto tc = pr::trace_constants(o.m, region.dim(), parse_kernel_constant(o.kernel));
  const auto dec = pr::decompose(region, o.level_cap);
  const auto rule = pr::build_rule(region.dim(), o.resolution > 0 ? o.resolution : pr::default_resolution(o.m));
  std::size_t violations = 0;
  {
    pr::CsvWriter csv(o.out, "resolvent v1; bounds on tr H^{-gamma}; sigma is 3 standard errors of the upper bound",
                      {"gamma", "lower", "exact", "upper", "sigma"});
    for (std::size_t i = 0; i < o.gamma.size(); ++i) {
      const auto b = pr::resolvent_trace_bounds(region, o.gamma[i], tc, dec, rule, o.samples, o.seed + i);
      const auto exact = exact_resolvent_trace(region, o.m, o.gamma[i]);
      csv.row() << o.gamma[i] << b.lower.value << exact << b.upper.value << b.upper.error;
      if (exact && (b.lower.value > *exact + 3.0 * b.lower.error || *exact > b.upper.value + b.upper.error)) ++violations;
    }
  }
  write_json(summary_path(o.out), ordered_json{{"subcommand", "resolvent"},
                                               {"region", pr::region_to_json(region)},
                                               {"m", o.m},
                                               {"gamma", o.gamma},
                                               {"samples", o.samples},
                                               {"seed", o.seed}});
  if (violations) throw InvariantFailure("resolvent sandwich violated for " + std::to_string(violations) + " gammas");
  return 0;
}

// ---------------------------------------------------------------- verify-all
struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 0;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  if (!o.out.empty()) check_writable(o.out);
  pr::acceptance::Options opt{o.seed, o.quick};
  const auto results = pr::acceptance::run_all(opt);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("criterion %2d  %-28s %s  (%.2f s)\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds);
  }
  const std::string report = pr::acceptance::format_report(results);
  if (!o.out.empty()) {
    std::ofstream(o.out) << report;
    ordered_json j = ordered_json::array();
    for (const auto& r : results) j.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
    write_json(summary_path(o.out), ordered_json{{"quick", o.quick}, {"seed", o.seed}, {"criteria", j}});
  } else {
    std::fputs(report.c_str(), stdout);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy-Rellich numerics: pseudodistances, dyadic decompositions, polyharmonic spectra, trace bounds"};
  app.require_subcommand(1);

  PseudoOptions po;
  auto* pseudo = app.add_subcommand("pseudo", "pseudodistance a_m and regularity constant on seeded samples");
  pseudo->add_option("--region", po.region, "region JSON file")->required();
  pseudo->add_option("--m", po.m, "order m >= 1");
  pseudo->add_option("--samples", po.samples, "number of interior samples");
  pseudo->add_option("--resolution", po.resolution, "spherical rule resolution (default max(2m+2, 16))");
  pseudo->add_option("--window", po.window, "sampling box for unbounded regions: lower corner then upper corner")
      ->delimiter(',');
  pseudo->add_option("--seed", po.seed, "random seed");
  pseudo->add_option("--out", po.out, "output CSV");

  WhitneyOptions wo;
  auto* whitney = app.add_subcommand("whitney", "maximal dyadic cube decomposition and partition checks");
  whitney->add_option("--region", wo.region, "region JSON file")->required();
  whitney->add_option("--level-cap", wo.level_cap, "finest cube level");
  whitney->add_option("--cube-cap", wo.cube_cap, "maximum number of cubes");
  whitney->add_option("--samples", wo.samples, "samples for the partition checks");
  whitney->add_option("--per-cube", wo.per_cube, "sampled points per cube for the distance ratio column");
  whitney->add_option("--seed", wo.seed, "random seed");
  whitney->add_option("--out", wo.out, "output CSV");

  EigOptions eo;
  auto* eig = app.add_subcommand("eig", "eigenvalues of (-d^2/dx^2)^m on (0,1)");
  eig->add_option("--m", eo.m, "order m in {1,2,3}");
  eig->add_option("--count", eo.count, "number of eigenvalues");
  eig->add_option("--basis", eo.basis, "Rayleigh-Ritz basis size (default 4(count+m) rounded up to a multiple of 8)");
  eig->add_option("--seed", eo.seed, "random seed (unused; accepted for uniformity)");
  eig->add_option("--out", eo.out, "output CSV");

  HardyOptions ho;
  auto* hardy = app.add_subcommand("hardy", "Hardy-Rellich ratios for seeded random test functions");
  hardy->add_option("--m", ho.m, "order m in {1,2,3}");
  hardy->add_option("--fuzz", ho.fuzz, "number of random test functions");
  hardy->add_option("--grid", ho.grid, "grid intervals per test function");
  hardy->add_option("--seed", ho.seed, "random seed");
  hardy->add_option("--out", ho.out, "output CSV");

  SharpnessOptions so;
  auto* sharp = app.add_subcommand("sharpness", "ratios along the optimality sequence");
  sharp->add_option("--m", so.m, "order m in {1,2,3}");
  sharp->add_option("--nmin", so.nmin, "first n (doubled up to nmax)");
  sharp->add_option("--nmax", so.nmax, "last n");
  sharp->add_option("--seed", so.seed, "random seed (unused; accepted for uniformity)");
  sharp->add_option("--out", so.out, "output CSV");

  TraceOptions to;
  auto* trace = app.add_subcommand("trace", "two-sided heat trace bounds");
  trace->add_option("--region", to.region, "region JSON file")->required();
  trace->add_option("--m", to.m, "order m");
  trace->add_option("--t", to.t, "times, comma separated")->delimiter(',');
  trace->add_option("--kernel-constant", to.kernel, "heat kernel constant, or 'auto' (m = 1 only)");
  trace->add_option("--level-cap", to.level_cap, "dyadic level cap for the lower bound");
  trace->add_option("--samples", to.samples, "Monte Carlo samples for the upper bound");
  trace->add_option("--resolution", to.resolution, "spherical rule resolution");
  trace->add_option("--seed", to.seed, "random seed");
  trace->add_option("--out", to.out, "output CSV");

  TraceOptions ro;
  ro.out = "resolvent.csv";
  auto* resolvent = app.add_subcommand("resolvent", "bounds on the resolvent trace tr H^{-gamma}");
  resolvent->add_option("--region", ro.region, "region JSON file")->required();
  resolvent->add_option("--m", ro.m, "order m");
  resolvent->add_option("--gamma", ro.gamma, "exponents, comma separated")->delimiter(',');
  resolvent->add_option("--kernel-constant", ro.kernel, "heat kernel constant, or 'auto' (m = 1 only)");
  resolvent->add_option("--level-cap", ro.level_cap, "dyadic level cap for the lower bound");
  resolvent->add_option("--samples", ro.samples, "Monte Carlo samples for the upper bound");
  resolvent->add_option("--resolution", ro.resolution, "spherical rule resolution");
  resolvent->add_option("--seed", ro.seed, "random seed");
  resolvent->add_option("--out", ro.out, "output CSV");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify-all", "run every acceptance criterion and print PASS/FAIL");
  verify->add_flag("--quick", vo.quick, "smaller Monte Carlo budgets");
  verify->add_option("--seed", vo.seed, "random seed");
  verify->add_option("--out", vo.out, "report file (text; JSON summary alongside)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*pseudo) return run_pseudo(po);
    if (*whitney) return run_whitney(wo);
    if (*eig) return run_eig(eo);
    if (*hardy) return run_hardy(ho);
    if (*sharp) return run_sharpness(so);
    if (*trace) return run_trace(to);
    if (*resolvent) return run_resolvent(ro);
    if (*verify) return run_verify(vo);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const InvariantFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  } catch (const pr::Error& e) {
    std::fprintf(stderr, "%s: %s\n", is_config_error(e.code()) ? "configuration error" : "numerical failure", e.what());
    return is_config_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
