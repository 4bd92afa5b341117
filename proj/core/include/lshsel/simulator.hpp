#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lshsel/geometry.hpp"
#include "lshsel/rational.hpp"

namespace lshsel::simulator {

enum class EstimateMethod { kExactVolume, kPointSample };

std::string_view to_string(EstimateMethod method);

/// Monte Carlo estimate of p(m, ell, d).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  /// The spec actually simulated (after normalization).
  CoverageSpec spec{1, 1, 1};
  EstimateMethod method = EstimateMethod::kExactVolume;
  /// True when the request was (1, ell>1, d) and was rewritten to (ell, ell, d).
  bool normalized = false;
};

inline constexpr std::int64_t kMinCellSamples = 100;
inline constexpr std::int64_t kMinPointsPerCellSet = 100;

/// Averages exact coverage volumes over `samples` independent cell sets.
/// Cell set k is drawn from RandomStream::substream(seed, k). Throws
/// DecompositionLimitError beyond m, d <= 8.
Estimate estimate(const CoverageSpec& spec, std::int64_t samples, std::uint64_t seed);

/// Estimates each cell set's coverage by counting uniform query points with
/// multiplicity >= ell. The standard error is that of the per-cell-set
/// fractions, which carries both sampling stages.
Estimate estimate_pointwise(const CoverageSpec& spec, std::int64_t cell_samples,
                            std::int64_t points_per_cellset, std::uint64_t seed);

struct SweepRow {
  Estimate estimate;
  std::optional<Rational> analytic;
  std::optional<double> z;
};

/// Points per cell set used by sweep for specs beyond the exact limits.
inline constexpr std::int64_t kSweepFallbackPoints = 1000;

/// Runs every spec with the same seed; specs beyond the exact decomposition
/// limits fall back to point sampling.
std::vector<SweepRow> sweep(const std::vector<CoverageSpec>& specs, std::int64_t samples,
                            std::uint64_t seed);

/// (mean - analytic) / stderr; 0 when both the difference and stderr vanish,
/// infinite when only stderr vanishes.
double z_score(double mean, double std_error, double analytic);

}  // namespace lshsel::simulator
