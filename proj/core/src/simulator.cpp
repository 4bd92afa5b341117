#include "lshsel/simulator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail/parallel.hpp"
#include "lshsel/analytic.hpp"

namespace lshsel::simulator {

namespace {

CoverageSpec prepare(const CoverageSpec& requested, bool& normalized) {
  requested.require_equal_sides();
  normalized = requested.needs_normalization();
  return requested.normalized();
}

Estimate finish(std::span<const double> values, const CoverageSpec& spec, std::uint64_t seed,
                EstimateMethod method, bool normalized) {
  const detail::MeanAndError me = detail::mean_and_error(values);
  Estimate e;
  e.mean = std::clamp(me.mean, 0.0, 1.0);
  e.std_error = me.std_error;
  e.samples = static_cast<std::int64_t>(values.size());
  e.seed = seed;
  e.spec = spec;
  e.method = method;
  e.normalized = normalized;
  return e;
}

}  // namespace

std::string_view to_string(EstimateMethod method) {
  return method == EstimateMethod::kExactVolume ? "exact-volume" : "point-sample";
}

Estimate estimate(const CoverageSpec& requested, std::int64_t samples, std::uint64_t seed) {
  if (samples < kMinCellSamples) throw std::invalid_argument("samples must be >= 100");
  bool normalized = false;
  const CoverageSpec spec = prepare(requested, normalized);
  if (!spec.within_decomposition_limits()) {
    throw DecompositionLimitError("spec " + spec.to_string() +
                                  " exceeds the exact-volume limits m <= 8, d <= 8; "
                                  "use point sampling (estimate_pointwise)");
  }

  std::vector<double> volumes(static_cast<std::size_t>(samples), 0.0);
  if (spec.ell() <= spec.m()) {
    detail::parallel_for(volumes.size(), [&](std::size_t k) {
      RandomStream rng = RandomStream::substream(seed, k);
      volumes[k] = coverage_volume(sample_cell_set(rng, spec), spec.ell());
    });
  }
  return finish(volumes, spec, seed, EstimateMethod::kExactVolume, normalized);
}

Estimate estimate_pointwise(const CoverageSpec& requested, std::int64_t cell_samples,
                            std::int64_t points_per_cellset, std::uint64_t seed) {
  if (cell_samples < kMinCellSamples) throw std::invalid_argument("cell_samples must be >= 100");
  if (points_per_cellset < kMinPointsPerCellSet) {
    throw std::invalid_argument("points_per_cellset must be >= 100");
  }
  bool normalized = false;
  const CoverageSpec spec = prepare(requested, normalized);

  std::vector<double> fractions(static_cast<std::size_t>(cell_samples), 0.0);
  if (spec.ell() <= spec.m()) {
    detail::parallel_for(fractions.size(), [&](std::size_t k) {
      RandomStream rng = RandomStream::substream(seed, k);
      const CellSet cells = sample_cell_set(rng, spec);
      std::vector<double> point(static_cast<std::size_t>(spec.d()));
      std::int64_t hits = 0;
      for (std::int64_t p = 0; p < points_per_cellset; ++p) {
        for (double& x : point) x = rng.uniform(-0.5, 0.5);
        if (cells.multiplicity(point) >= spec.ell()) ++hits;
      }
      fractions[k] = static_cast<double>(hits) / static_cast<double>(points_per_cellset);
    });
  }
  return finish(fractions, spec, seed, EstimateMethod::kPointSample, normalized);
}

double z_score(double mean, double std_error, double analytic) {
  const double diff = mean - analytic;
  if (std_error > 0.0) return diff / std_error;
  if (diff == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

std::vector<SweepRow> sweep(const std::vector<CoverageSpec>& specs, std::int64_t samples,
                            std::uint64_t seed) {
  std::vector<SweepRow> rows;
  rows.reserve(specs.size());
  for (const CoverageSpec& spec : specs) {
    SweepRow row;
    row.estimate = spec.normalized().within_decomposition_limits()
                       ? estimate(spec, samples, seed)
                       : estimate_pointwise(spec, samples, kSweepFallbackPoints, seed);
    row.analytic = analytic::predicted(spec);
    if (row.analytic) {
      row.z = z_score(row.estimate.mean, row.estimate.std_error, row.analytic->to_double());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lshsel::simulator
