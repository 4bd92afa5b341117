#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "lshsel/report.hpp"

namespace lshsel::cli {

enum class Subcommand { kConstants, kPredict, kSimulate, kSweep, kVerify, kIndexBench, kDiagnose };

std::string_view to_string(Subcommand subcommand);

/// Fully resolved run parameters. Every report embeds this verbatim, so a
/// run can be replayed from its own output.
struct RunConfig {
  Subcommand subcommand = Subcommand::kPredict;
  int m = 1;
  int ell = 1;
  int d = 1;
  double b = 1.0;
  double s = 1.0;
  std::int64_t samples = 200'000;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::kJson;
  std::optional<std::string> out;

  // simulate
  std::string estimator = "exact";  // exact | point
  std::int64_t points = 1000;

  // verify: evaluation budget per tensor-quadrature entry
  std::int64_t budget = 100'000'000;

  // index-bench
  std::int64_t n = 100'000;
  int domain_side = 10;
  std::int64_t queries = 500;
};

Json config_json(const RunConfig& config);

/// Runs the subcommand and returns its report document. Throws
/// std::invalid_argument on validation errors.
Json execute(const RunConfig& config);

/// Exit status of a report: nonzero when `verify` found entries outside
/// their tolerance.
int report_status(const Json& report);

/// Parses argv (without the program name), runs, and writes the report to
/// `out` or to --out. Returns 0 on success, 2 on validation errors and 1 on
/// internal failures.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lshsel::cli
