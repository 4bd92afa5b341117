// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion checks its numerical condition and its wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "lshsel/analytic.hpp"
#include "lshsel/cli.hpp"
#include "lshsel/geometry.hpp"
#include "lshsel/grid_index.hpp"
#include "lshsel/simulator.hpp"

namespace {

using namespace lshsel;
using cli::Json;

constexpr std::uint64_t kSeed = 20240601;
constexpr double kSigmas = 4.0;

struct Check {
  std::ostringstream notes;
  bool ok = true;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes << "\n      failed: " << what;
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<void(Check&)> body;
};

std::string str(const Rational& r) { return r.to_string(); }

Json execute_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  if (status != 0) throw std::runtime_error("lshsel " + args.front() + " exited " + std::to_string(status) + ": " + err.str());
  return Json::parse(out.str());
}

std::string execute_cli_text(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  cli::run(args, out, err);
  return out.str();
}

void constants_table(Check& c) {
  const Json report = execute_cli({"constants"});
  const auto produced = testing::constants_lines(report);
  const auto golden = testing::read_constants_golden(std::string(LSHSEL_GOLDEN_DIR) + "/constants.txt");
  c.require(produced == golden, "constants output differs from golden file");
  bool saw_max2 = false;
  for (const Json& row : report["rows"]) {
    if (row["id"] == "max_shift" && row["d"] == 2) {
      saw_max2 = true;
      c.require(row["value"] == "5/24", "d=2 member of the max family must be 5/24");
    }
  }
  c.require(saw_max2, "max family d=2 row present");
}

void closed_forms(Check& c) {
  using namespace analytic;
  for (int d = 1; d <= 10; ++d) {
    c.require(p_single(d) == pow(Rational(3, 4), static_cast<unsigned>(d)), "p(1,1,d) = (3/4)^d, d=" + std::to_string(d));
    c.require(p_at_least_ell(1, 1, d) == pow(Rational(3, 4), static_cast<unsigned>(d)), "p(1,1,d) via at-least-ell");
  }
  for (int d = 1; d <= 6; ++d) {
    c.require(p_one_of_one_overlap_dd(2, d) == pow(Rational(7, 12), static_cast<unsigned>(d)),
              "p(1,2,d) = (7/12)^d, d=" + std::to_string(d));
  }
  c.require(p_one_of_one_overlap_dd(3, 1) == Rational(15, 32), "p(1,3,1) = 15/32");
  c.require(str(p_one_of_one_overlap(1)) == "3/4", "quadrant sum ell=1 is 3/4");
  c.require(str(p_one_of_one_overlap(2)) == "7/12", "quadrant sum ell=2 is 7/12");
  c.require(str(p_one_of_one_overlap(3)) == "15/32", "quadrant sum ell=3 is 15/32");
}

void numeric_cross_check(Check& c) {
  const Json report = execute_cli({"verify", "--d", "6", "--samples", "1000000", "--budget", "100000000",
                                   "--seed", std::to_string(kSeed)});
  c.require(report["summary"]["failures"] == 0, "every catalog entry within oracle tolerance");
  int combined = 0;
  for (const Json& row : report["rows"]) {
    const int arity = row["d"].get<int>() + 2 * row["m"].get<int>();
    const std::string expected_method = arity <= 4 ? "tensor-midpoint" : "monte-carlo";
    c.require(row["method"] == expected_method, row["id"].get<std::string>() + " uses " + expected_method);
    if (row["method"] == "monte-carlo") c.require(row["evaluations"] == 1000000, "MC uses 1e6 samples");
    c.require(row["within_tolerance"].get<bool>(),
              row["id"].get<std::string>() + " d=" + row["d"].dump() + " m=" + row["m"].dump() +
                  " value=" + row["value"].dump() + " analytic=" + row["analytic"].get<std::string>());
    if (row["id"] == "combined") ++combined;
  }
  c.require(combined == 9, "combined integral checked for group <= 3 and pairs <= 3");
}

void simulator_agreement(Check& c) {
  std::vector<CoverageSpec> specs;
  for (int m = 1; m <= 3; ++m) {
    for (int d = 1; d <= 3; ++d) specs.emplace_back(m, 1, d);
  }
  for (int ell = 1; ell <= 4; ++ell) specs.emplace_back(ell, ell, 1);
  specs.emplace_back(3, 2, 1);

  const std::vector<std::pair<CoverageSpec, Rational>> named{
      {CoverageSpec(2, 1, 1), Rational(11, 12)}, {CoverageSpec(3, 1, 1), Rational(31, 32)},
      {CoverageSpec(2, 1, 2), Rational(113, 144)}, {CoverageSpec(4, 4, 1), Rational(31, 80)},
      {CoverageSpec(3, 2, 1), Rational(13, 16)}};
  for (const auto& [spec, value] : named) {
    c.require(*analytic::predicted(spec) == value, "analytic target " + spec.to_string() + " = " + str(value));
  }

  for (const CoverageSpec& spec : specs) {
    const Rational target = *analytic::predicted(spec);
    const auto exact = simulator::estimate(spec, 200'000, kSeed);
    c.require(std::abs(exact.mean - target.to_double()) <= kSigmas * exact.std_error,
              "exact-volume " + spec.to_string() + " mean=" + std::to_string(exact.mean) +
                  " target=" + str(target) + " se=" + std::to_string(exact.std_error));
    const auto point = simulator::estimate_pointwise(spec, 20'000, 500, kSeed + 1);
    c.require(std::abs(point.mean - target.to_double()) <= kSigmas * point.std_error,
              "point-sample " + spec.to_string() + " mean=" + std::to_string(point.mean) +
                  " target=" + str(target) + " se=" + std::to_string(point.std_error));
  }
}

void typo_adjudication(Check& c) {
  const Json report = execute_cli({"diagnose", "--m", "3", "--d", "1", "--samples", "200000", "--seed", std::to_string(kSeed)});
  const Json& corrected = report["rows"][0];
  const Json& shifted = report["rows"][1];
  c.require(corrected["id"] == "inclusion_exclusion" && corrected["analytic"] == "31/32", "corrected row is 31/32");
  c.require(shifted["id"] == "inclusion_exclusion_last_term_shifted", "shifted row present");
  const double mean = corrected["value"].get<double>();
  const double se = corrected["stderr"].get<double>();
  c.require(std::abs(mean - 31.0 / 32.0) <= 4.0 * se, "p(1,m,d) reading within 4 stderr");
  const double shifted_value = Rational::parse(shifted["analytic"].get<std::string>()).to_double();
  c.require(std::abs(mean - shifted_value) > 10.0 * se, "p(1,m-1,d) reading off by more than 10 stderr");
}

void index_recall(Check& c) {
  struct Case {
    int m;
    int d;
    Rational target;
  };
  for (const Case& k : {Case{1, 2, Rational(9, 16)}, Case{1, 1, Rational(3, 4)}, Case{2, 1, Rational(11, 12)},
                        Case{2, 2, Rational(113, 144)}}) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = index::recall_experiment(100'000, k.d, 10, k.m, 500, kSeed);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double allowed = std::max(0.02, 4.0 * r.std_error);
    std::ostringstream what;
    what << "m=" << k.m << " d=" << k.d << " recall=" << r.mean_recall << " target=" << k.target
         << " allowed=" << allowed << " time=" << seconds << "s";
    c.require(r.predicted == k.target, "predicted value for " + what.str());
    c.require(std::abs(r.mean_recall - k.target.to_double()) <= allowed, what.str());
    c.require(seconds < 60.0, "per-configuration budget " + what.str());
  }
}

void determinism(Check& c) {
  const std::string seed = std::to_string(kSeed);
  const std::vector<std::vector<std::string>> commands{
      {"constants"},
      {"predict", "--m", "3", "--ell", "2", "--d", "2"},
      {"simulate", "--m", "2", "--ell", "1", "--d", "2", "--samples", "50000", "--seed", seed},
      {"sweep", "--m", "2", "--ell", "1", "--d", "2", "--samples", "20000", "--seed", seed},
      {"verify", "--d", "3", "--samples", "100000", "--budget", "1000000", "--seed", seed},
      {"index-bench", "--m", "2", "--d", "2", "--n", "20000", "--L", "10", "--queries", "100", "--seed", seed},
      {"diagnose", "--samples", "50000", "--seed", seed},
  };
  for (const auto& args : commands) {
    const std::string first = execute_cli_text(args);
    // Replay from the configuration embedded in the first output.
    const Json config = Json::parse(first)["config"];
    std::vector<std::string> replay{config["subcommand"].get<std::string>()};
    for (const auto& [key, value] : config.items()) {
      if (key == "subcommand" || key == "format" || key == "out" || value.is_null()) continue;
      if (key == "ell" && config["subcommand"] == "index-bench") continue;
      if ((key == "b" || key == "s") && config["subcommand"] == "index-bench") continue;
      replay.push_back("--" + key);
      replay.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    const std::string second = execute_cli_text(replay);
    c.require(!first.empty() && first == second, args.front() + " reproduces byte-identical JSON");
  }
}

void property_suite(Check& c) {
  using namespace analytic;
  for (int m = 1; m <= 5; ++m) {
    for (int ell = 1; ell <= m; ++ell) {
      for (int d = 1; d <= 5; ++d) {
        const Rational p = p_at_least_ell(m, ell, d);
        const std::string at = "(" + std::to_string(m) + "," + std::to_string(ell) + "," + std::to_string(d) + ")";
        if (m < 5) c.require(p <= p_at_least_ell(m + 1, ell, d), "nondecreasing in m at " + at);
        if (ell < m) c.require(p >= p_at_least_ell(m, ell + 1, d), "nonincreasing in ell at " + at);
        if (d < 5) c.require(p >= p_at_least_ell(m, ell, d + 1), "nonincreasing in d at " + at);
      }
    }
  }
  RandomStream rng(kSeed);
  for (int m = 2; m <= 5; ++m) {
    for (int d = 1; d <= 3; ++d) {
      const int ell = m + 1;
      c.require(p_at_least_ell(m, ell, d).is_zero(), "analytic zero for ell > m");
      const auto e = simulator::estimate(CoverageSpec(m, ell, d), 1000, kSeed);
      c.require(e.mean == 0.0 && e.std_error == 0.0, "simulator zero for ell > m");
      const CellSet cells = sample_cell_set(rng, CoverageSpec(m, 1, d));
      c.require(coverage_volume(cells, ell) == 0.0, "coverage_volume zero for ell > m");
    }
  }
  for (int ell = 1; ell <= 5; ++ell) {
    for (int d1 = 1; d1 <= 5; ++d1) {
      for (int d2 = 1; d2 <= 5; ++d2) {
        c.require(p_one_of_one_overlap_dd(ell, d1 + d2) ==
                      p_one_of_one_overlap_dd(ell, d1) * p_one_of_one_overlap_dd(ell, d2),
                  "exponent law");
      }
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "constants table equals golden fractions", 1.0, constants_table},
      {2, "closed forms (3/4)^d, (7/12)^d, 15/32, quadrant sum", 1.0, closed_forms},
      {3, "integral catalog within oracle tolerance", 60.0, numeric_cross_check},
      {4, "simulator within 4 stderr of analytic values", 120.0, simulator_agreement},
      {5, "inclusion-exclusion last-term adjudication", 30.0, typo_adjudication},
      {6, "index recall within max(0.02, 4 stderr) of p(m,1,d)", 240.0, index_recall},
      {7, "byte-identical JSON on replay for every subcommand", 120.0, determinism},
      {8, "monotonicity, ell > m zeros, exponent law", 10.0, property_suite},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.require(seconds < criterion.budget_seconds,
                  "runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(criterion.budget_seconds) + " s");
    std::printf("[%s] criterion %d: %s (%.2f s)%s\n", check.ok ? "PASS" : "FAIL", criterion.number,
                criterion.title.c_str(), seconds, check.notes.str().c_str());
    std::fflush(stdout);
    failed += check.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
