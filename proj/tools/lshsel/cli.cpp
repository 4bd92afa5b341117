#include "lshsel/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "lshsel/analytic.hpp"
#include "lshsel/grid_index.hpp"
#include "lshsel/oracle.hpp"
#include "lshsel/simulator.hpp"

namespace lshsel::cli {

namespace {

constexpr int kMaxPointsPerAxis = 2000;
constexpr double kAgreeSigmas = 4.0;
constexpr double kRejectSigmas = 10.0;

std::optional<double> finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return std::nullopt;
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t row) {
  return RandomStream::substream(seed, row).next_u64();
}

// ---------------------------------------------------------------- constants

Json run_constants(const RunConfig& c) {
  Json rows = Json::array();
  for (const auto& e : analytic::integral_table(c.d)) {
    Json row = make_row(e.pairs, 0, e.group, "exact", e.value.to_string(), e.value.to_double(),
                        std::nullopt, e.value.to_string(), std::nullopt);
    row["id"] = e.id;
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------- predict

Json run_predict(const RunConfig& c) {
  const CoverageSpec spec(c.m, c.ell, c.d, c.b, c.s);
  spec.require_unit();
  const Rational value = *analytic::predicted(spec);
  Json row = make_row(c.m, c.ell, c.d, "analytic", value.to_string(), value.to_double(),
                      std::nullopt, value.to_string(), std::nullopt);
  row["normalized"] = spec.needs_normalization();
  return Json::array({row});
}

// ---------------------------------------------------------------- simulate / sweep

Json estimate_row(const CoverageSpec& requested, const simulator::Estimate& e,
                  const std::optional<Rational>& analytic_value) {
  std::optional<double> z;
  if (analytic_value) z = finite_or_null(simulator::z_score(e.mean, e.std_error, analytic_value->to_double()));
  Json row = make_row(requested.m(), requested.ell(), requested.d(),
                      std::string(simulator::to_string(e.method)), e.mean, e.mean, e.std_error,
                      analytic_value ? std::optional<std::string>(analytic_value->to_string()) : std::nullopt, z);
  row["samples"] = e.samples;
  row["normalized"] = e.normalized;
  return row;
}

Json run_simulate(const RunConfig& c) {
  const CoverageSpec spec(c.m, c.ell, c.d, c.b, c.s);
  simulator::Estimate e;
  if (c.estimator == "exact") {
    e = simulator::estimate(spec, c.samples, c.seed);
  } else if (c.estimator == "point") {
    e = simulator::estimate_pointwise(spec, c.samples, c.points, c.seed);
  } else {
    throw std::invalid_argument("unknown estimator '" + c.estimator + "' (exact|point)");
  }
  return Json::array({estimate_row(spec, e, analytic::predicted(spec))});
}

Json run_sweep(const RunConfig& c) {
  std::vector<CoverageSpec> specs;
  for (int m = 1; m <= c.m; ++m) {
    for (int d = 1; d <= c.d; ++d) specs.emplace_back(m, c.ell, d, c.b, c.s);
  }
  Json rows = Json::array();
  const auto results = simulator::sweep(specs, c.samples, c.seed);
  for (std::size_t k = 0; k < specs.size(); ++k) {
    rows.push_back(estimate_row(specs[k], results[k].estimate, results[k].analytic));
  }
  return rows;
}

// ---------------------------------------------------------------- verify

struct CatalogCheck {
  std::string id;
  oracle::Integrand integrand;
  Rational exact;
};

std::vector<CatalogCheck> verification_catalog(int max_d) {
  using oracle::Integrand;
  std::vector<CatalogCheck> checks;
  for (const auto& e : analytic::integral_table(max_d)) {
    if (e.id.starts_with("shift")) {
      checks.push_back({e.id, Integrand::shift_product(e.group), e.value});
    } else if (e.id.starts_with("max_shift")) {
      checks.push_back({e.id, Integrand::max_shift(e.group), e.value});
    } else if (e.id.starts_with("pair_difference")) {
      checks.push_back({e.id, Integrand::pair_difference(e.pairs), e.value});
    } else if (e.id == "combined") {
      checks.push_back({e.id, Integrand::combined(e.group, e.pairs), e.value});
    } else {
      throw std::logic_error("integral '" + e.id + "' has no catalog integrand");
    }
  }
  for (int d = 1; d <= max_d; ++d) {
    checks.push_back({"min_shift", Integrand::min_shift(d), analytic::min_shift_integral(d)});
  }
  for (int ell = 1; ell <= 4; ++ell) {
    checks.push_back({"overlap_piecewise", Integrand::overlap_piecewise(ell),
                      analytic::p_one_of_one_overlap(ell)});
  }
  return checks;
}

oracle::OracleResult run_oracle(const oracle::Integrand& integrand, const RunConfig& c,
                                std::size_t row) {
  const auto domain = integrand.natural_domain();
  if (integrand.arity() <= oracle::kMaxTensorArity) {
    const int ppa = std::min(kMaxPointsPerAxis, oracle::max_points_per_axis(integrand.arity(), c.budget));
    return oracle::integrate_tensor(integrand, domain, ppa);
  }
  return oracle::integrate_mc(integrand, domain, c.samples, row_seed(c.seed, row));
}

Json run_verify(const RunConfig& c, Json& summary) {
  if (c.budget < 1) throw std::invalid_argument("budget must be >= 1");
  Json rows = Json::array();
  int failures = 0;
  double worst = 0.0;
  const auto checks = verification_catalog(c.d);
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const CatalogCheck& check = checks[k];
    const oracle::OracleResult r = run_oracle(check.integrand, c, k);
    const double exact = check.exact.to_double();
    const double diff = r.value - exact;
    const bool ok = r.brackets(exact);
    failures += ok ? 0 : 1;
    worst = std::max(worst, std::abs(diff));
    std::optional<double> sigma;
    std::optional<double> z;
    if (r.method == oracle::OracleMethod::kMonteCarlo) {
      sigma = r.tolerance / kAgreeSigmas;
      z = finite_or_null(diff / *sigma);
    }
    Json row = make_row(check.integrand.pairs(), 0, check.integrand.group(),
                        std::string(oracle::to_string(r.method)), r.value, r.value, sigma,
                        check.exact.to_string(), z);
    row["id"] = check.id;
    row["tolerance"] = r.tolerance;
    row["evaluations"] = r.evaluations;
    row["within_tolerance"] = ok;
    rows.push_back(std::move(row));
  }
  summary["entries"] = checks.size();
  summary["failures"] = failures;
  summary["max_abs_discrepancy"] = worst;
  return rows;
}

// ---------------------------------------------------------------- index-bench

Json run_index_bench(const RunConfig& c) {
  if (c.n < 1) throw std::invalid_argument("n must be >= 1");
  if (c.queries < 1) throw std::invalid_argument("queries must be >= 1");
  const auto r = index::recall_experiment(static_cast<std::size_t>(c.n), c.d, c.domain_side, c.m,
                                          c.queries, c.seed);
  const double predicted = r.predicted.to_double();
  Json row = make_row(c.m, 1, c.d, "index-recall", r.mean_recall, r.mean_recall, r.std_error,
                      r.predicted.to_string(),
                      finite_or_null(simulator::z_score(r.mean_recall, r.std_error, predicted)));
  row["queries"] = r.queries;
  row["candidate_fraction"] = r.mean_candidate_fraction;
  row["redraws"] = r.redraws;
  row["within_tolerance"] = std::abs(r.mean_recall - predicted) <= std::max(0.02, 4.0 * r.std_error);
  return Json::array({row});
}

// ---------------------------------------------------------------- diagnose

Json diagnose_row(const std::string& id, int m, int ell, int d, const std::string& method,
                  double observed, double sigma, const Rational& candidate) {
  const double z = simulator::z_score(observed, sigma, candidate.to_double());
  Json row = make_row(m, ell, d, method, observed, observed, sigma, candidate.to_string(), finite_or_null(z));
  row["id"] = id;
  row["verdict"] = std::abs(z) <= kAgreeSigmas ? "agrees"
                   : std::abs(z) > kRejectSigmas ? "rejected"
                                                 : "inconclusive";
  return row;
}

Json run_diagnose(const RunConfig& c, Json& summary) {
  Json rows = Json::array();

  // Inclusion-exclusion final term: p(1,m,d) against p(1,m-1,d).
  const CoverageSpec union_spec(c.m, 1, c.d);
  const auto est = simulator::estimate(union_spec, c.samples, c.seed);
  const std::string sim = std::string(simulator::to_string(est.method));
  Json corrected = diagnose_row("inclusion_exclusion", c.m, 1, c.d, sim, est.mean, est.std_error,
                                analytic::p_at_least_one(c.m, c.d));
  Json shifted = diagnose_row("inclusion_exclusion_last_term_shifted", c.m, 1, c.d, sim, est.mean,
                              est.std_error, analytic::p_at_least_one_last_term_shifted(c.m, c.d));

  // Two-variable integral printed as 5/24: max vs min integrand.
  const std::int64_t mc_samples = std::max<std::int64_t>(c.samples, oracle::kMinMonteCarloSamples);
  auto mc = [&](const oracle::Integrand& f, std::size_t row) {
    return oracle::integrate_mc(f, f.natural_domain(), mc_samples, row_seed(c.seed, row));
  };
  const auto max2 = mc(oracle::Integrand::max_shift(2), 1);
  const auto min2 = mc(oracle::Integrand::min_shift(2), 2);
  Json max_reading = diagnose_row("two_variable_integral_max_reading", 0, 0, 2, "monte-carlo",
                                  max2.value, max2.tolerance / kAgreeSigmas, Rational(5, 24));
  Json min_reading = diagnose_row("two_variable_integral_min_reading", 0, 0, 2, "monte-carlo",
                                  min2.value, min2.tolerance / kAgreeSigmas, Rational(5, 24));

  // Combined integral with two x variables and one (y, v) pair.
  const auto comb = mc(oracle::Integrand::combined(2, 1), 3);
  Json comb_roles = diagnose_row("combined_integral", 1, 0, 2, "monte-carlo", comb.value,
                                 comb.tolerance / kAgreeSigmas, analytic::combined_integral(2, 1));
  Json comb_swapped = diagnose_row("combined_integral_roles_swapped", 1, 0, 2, "monte-carlo",
                                   comb.value, comb.tolerance / kAgreeSigmas,
                                   analytic::combined_integral_swapped(2, 1));

  summary["inclusion_exclusion_last_term"] =
      corrected["verdict"] == "agrees" && shifted["verdict"] == "rejected"
          ? "p(1,m,d) agrees with simulation; p(1,m-1,d) rejected"
          : "inconclusive";
  summary["two_variable_integral"] =
      max_reading["verdict"] == "agrees" && min_reading["verdict"] == "rejected"
          ? "5/24 is the max(x1,x2)+1/2 integral; min gives 1/6"
          : "inconclusive";
  summary["combined_integral"] =
      comb_roles["verdict"] == "agrees" && comb_swapped["verdict"] == "rejected"
          ? "max-group factor times (1/8)^pairs agrees; swapped roles rejected"
          : "inconclusive";

  for (Json* r : {&corrected, &shifted, &max_reading, &min_reading, &comb_roles, &comb_swapped}) {
    rows.push_back(std::move(*r));
  }
  return rows;
}

// ---------------------------------------------------------------- argument parsing

struct ParsedArgs {
  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* sub, ParsedArgs& p) {
  sub->add_option("--format", p.format, "Output format: json|csv|human");
  sub->add_option("--out", p.out, "Write the report to PATH instead of stdout");
}

void add_spec(CLI::App* sub, ParsedArgs& p) {
  sub->add_option("--m", p.config.m, "Number of grids / cells");
  sub->add_option("--ell", p.config.ell, "Coverage threshold");
  sub->add_option("--d", p.config.d, "Dimensionality");
  sub->add_option("--b", p.config.b, "Cell side length");
  sub->add_option("--s", p.config.s, "Query side length");
}

void add_sampling(CLI::App* sub, ParsedArgs& p) {
  sub->add_option("--samples", p.config.samples, "Monte Carlo sample count");
  sub->add_option("--seed", p.seed, "Random seed (default: OS entropy, always echoed)");
}

}  // namespace

std::string_view to_string(Subcommand subcommand) {
  switch (subcommand) {
    case Subcommand::kConstants: return "constants";
    case Subcommand::kPredict: return "predict";
    case Subcommand::kSimulate: return "simulate";
    case Subcommand::kSweep: return "sweep";
    case Subcommand::kVerify: return "verify";
    case Subcommand::kIndexBench: return "index-bench";
    case Subcommand::kDiagnose: return "diagnose";
  }
  return "unknown";
}

Json config_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = std::string(to_string(c.subcommand));
  switch (c.subcommand) {
    case Subcommand::kConstants:
      j["d"] = c.d;
      break;
    case Subcommand::kPredict:
      j["m"] = c.m; j["ell"] = c.ell; j["d"] = c.d; j["b"] = c.b; j["s"] = c.s;
      break;
    case Subcommand::kSimulate:
    case Subcommand::kSweep:
      j["m"] = c.m; j["ell"] = c.ell; j["d"] = c.d; j["b"] = c.b; j["s"] = c.s;
      j["samples"] = c.samples; j["seed"] = c.seed;
      if (c.subcommand == Subcommand::kSimulate) {
        j["estimator"] = c.estimator;
        if (c.estimator == "point") j["points"] = c.points;
      }
      break;
    case Subcommand::kVerify:
      j["d"] = c.d; j["samples"] = c.samples; j["seed"] = c.seed; j["budget"] = c.budget;
      break;
    case Subcommand::kIndexBench:
      j["m"] = c.m; j["ell"] = 1; j["d"] = c.d; j["b"] = 1.0; j["s"] = 1.0;
      j["n"] = c.n; j["L"] = c.domain_side; j["queries"] = c.queries; j["seed"] = c.seed;
      break;
    case Subcommand::kDiagnose:
      j["m"] = c.m; j["d"] = c.d; j["samples"] = c.samples; j["seed"] = c.seed;
      break;
  }
  j["format"] = std::string(to_string(c.format));
  j["out"] = c.out ? Json(*c.out) : Json(nullptr);
  return j;
}

Json execute(const RunConfig& c) {
  Json report;
  report["config"] = config_json(c);
  Json summary = Json::object();
  switch (c.subcommand) {
    case Subcommand::kConstants: report["rows"] = run_constants(c); break;
    case Subcommand::kPredict: report["rows"] = run_predict(c); break;
    case Subcommand::kSimulate: report["rows"] = run_simulate(c); break;
    case Subcommand::kSweep: report["rows"] = run_sweep(c); break;
    case Subcommand::kVerify: report["rows"] = run_verify(c, summary); break;
    case Subcommand::kIndexBench: report["rows"] = run_index_bench(c); break;
    case Subcommand::kDiagnose: report["rows"] = run_diagnose(c, summary); break;
  }
  if (!summary.empty()) report["summary"] = std::move(summary);
  return report;
}

int report_status(const Json& report) {
  if (report.contains("summary") && report["summary"].contains("failures") &&
      report["summary"]["failures"].get<int>() > 0) {
    return 1;
  }
  return 0;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selectivity model toolkit for multi-grid locality-sensitive hashing", "lshsel"};
  app.require_subcommand(1);

  std::map<CLI::App*, std::unique_ptr<ParsedArgs>> parsed;
  auto subcommand = [&](Subcommand kind, const std::string& description) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(kind)), description);
    auto p = std::make_unique<ParsedArgs>();
    p->config.subcommand = kind;
    add_common(sub, *p);
    ParsedArgs& ref = *p;
    parsed.emplace(sub, std::move(p));
    return std::pair<CLI::App*, ParsedArgs&>{sub, ref};
  };

  {
    auto [sub, p] = subcommand(Subcommand::kConstants, "Print the integral table as exact fractions");
    p.config.d = 6;
    sub->add_option("--d", p.config.d, "Largest dimension for the d-fold families");
  }
  {
    auto [sub, p] = subcommand(Subcommand::kPredict, "Closed-form p(m, ell, d)");
    add_spec(sub, p);
  }
  {
    auto [sub, p] = subcommand(Subcommand::kSimulate, "Monte Carlo estimate of p(m, ell, d)");
    add_spec(sub, p);
    add_sampling(sub, p);
    sub->add_option("--estimator", p.config.estimator, "exact (volume per cell set) or point (sampling)");
    sub->add_option("--points", p.config.points, "Points per cell set for the point estimator");
  }
  {
    auto [sub, p] = subcommand(Subcommand::kSweep, "Simulate m = 1..M, d = 1..D at fixed ell");
    add_spec(sub, p);
    add_sampling(sub, p);
  }
  {
    auto [sub, p] = subcommand(Subcommand::kVerify, "Check every integral against numeric quadrature");
    p.config.d = 6;
    p.config.samples = 1'000'000;
    sub->add_option("--d", p.config.d, "Largest dimension for the d-fold families");
    add_sampling(sub, p);
    sub->add_option("--budget", p.config.budget, "Evaluation budget per tensor-quadrature entry");
  }
  {
    auto [sub, p] = subcommand(Subcommand::kIndexBench, "Measure recall of a multi-grid index");
    sub->add_option("--m", p.config.m, "Number of grids");
    sub->add_option("--d", p.config.d, "Dimensionality");
    sub->add_option("--n", p.config.n, "Number of uniform points");
    sub->add_option("--L", p.config.domain_side, "Torus side length");
    sub->add_option("--queries", p.config.queries, "Number of queries");
    sub->add_option("--seed", p.seed, "Random seed (default: OS entropy, always echoed)");
  }
  {
    auto [sub, p] = subcommand(Subcommand::kDiagnose, "Adjudicate ambiguous formula readings");
    p.config.m = 3;
    sub->add_option("--m", p.config.m, "Number of cells for the inclusion-exclusion check");
    sub->add_option("--d", p.config.d, "Dimensionality for the inclusion-exclusion check");
    add_sampling(sub, p);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  ParsedArgs& p = *parsed.at(chosen);
  RunConfig config = p.config;

  std::string text;
  try {
    config.format = parse_format(p.format);
    config.seed = p.seed ? *p.seed : entropy_seed();
    if (!p.out.empty()) config.out = p.out;
    const Json report = execute(config);
    text = render(report, config.format);
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open '" + *config.out + "' for writing");
      file << text;
    } else {
      out << text;
    }
    return report_status(report);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lshsel::cli
