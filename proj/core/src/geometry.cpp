#include "lshsel/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace lshsel {

namespace {

constexpr double kHalf = 0.5;

}  // namespace

CoverageSpec::CoverageSpec(int m, int ell, int d, double b, double s)
    : m_(m), ell_(ell), d_(d), b_(b), s_(s) {
  if (m < 1) throw std::invalid_argument("m must be >= 1, got " + std::to_string(m));
  if (ell < 1) throw std::invalid_argument("ell must be >= 1, got " + std::to_string(ell));
  if (d < 1) throw std::invalid_argument("d must be >= 1, got " + std::to_string(d));
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("cell side b must be a positive real");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("query side s must be a positive real");
}

void CoverageSpec::require_unit() const {
  if (!is_unit()) {
    throw std::invalid_argument("closed forms require b = s = 1, got " + to_string());
  }
}

void CoverageSpec::require_equal_sides() const {
  if (b_ != s_) {
    throw std::invalid_argument("simulation requires b = s, got " + to_string());
  }
}

CoverageSpec CoverageSpec::normalized() const {
  if (!needs_normalization()) return *this;
  return CoverageSpec(ell_, ell_, d_, b_, s_);
}

std::string CoverageSpec::to_string() const {
  std::ostringstream os;
  os << "(m=" << m_ << ", ell=" << ell_ << ", d=" << d_ << ", b=" << b_ << ", s=" << s_ << ")";
  return os.str();
}

CellSet::CellSet(int m, int d, std::vector<double> offsets)
    : m_(m), d_(d), offsets_(std::move(offsets)) {
  if (m < 1 || d < 1) throw std::invalid_argument("CellSet needs m >= 1 and d >= 1");
  if (offsets_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("CellSet offsets must hold m * d entries");
  }
  for (double u : offsets_) {
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("cell offsets must lie in [0, 1)");
  }
}

CellSet CellSet::with_cell(std::span<const double> row) const {
  if (row.size() != static_cast<std::size_t>(d_)) {
    throw std::invalid_argument("appended cell must have d offsets");
  }
  std::vector<double> next = offsets_;
  next.insert(next.end(), row.begin(), row.end());
  return CellSet(m_ + 1, d_, std::move(next));
}

bool CellSet::contains(int cell, std::span<const double> point) const {
  for (int j = 0; j < d_; ++j) {
    const double u = offset(cell, j);
    const double x = point[static_cast<std::size_t>(j)];
    if (!(u - 1.0 <= x && x < u)) return false;
  }
  return true;
}

int CellSet::multiplicity(std::span<const double> point) const {
  int count = 0;
  for (int i = 0; i < m_; ++i) count += contains(i, point) ? 1 : 0;
  return count;
}

ClippedIntervalSet::ClippedIntervalSet(int m, int d, std::vector<Interval> intervals)
    : m_(m), d_(d), intervals_(std::move(intervals)) {
  if (intervals_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("ClippedIntervalSet must hold m * d intervals");
  }
  for (const Interval& iv : intervals_) {
    if (!(iv.lower < iv.upper) || iv.lower < -kHalf || iv.upper > kHalf) {
      throw std::invalid_argument("clipped intervals must be non-empty subsets of [-1/2, 1/2]");
    }
  }
}

CellSet sample_cell_set(RandomStream& rng, const CoverageSpec& spec) {
  std::vector<double> offsets(static_cast<std::size_t>(spec.m()) * static_cast<std::size_t>(spec.d()));
  for (double& u : offsets) u = rng.uniform();
  return CellSet(spec.m(), spec.d(), std::move(offsets));
}

ClippedIntervalSet clip_to_query(const CellSet& cells) {
  std::vector<Interval> intervals;
  intervals.reserve(cells.offsets().size());
  for (int j = 0; j < cells.d(); ++j) {
    for (int i = 0; i < cells.m(); ++i) {
      const double u = cells.offset(i, j);
      intervals.push_back({std::max(u - 1.0, -kHalf), std::min(u, kHalf)});
    }
  }
  return ClippedIntervalSet(cells.m(), cells.d(), std::move(intervals));
}

double coverage_volume(const CellSet& cells, int ell) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1, got " + std::to_string(ell));
  if (ell > cells.m()) return 0.0;
  if (cells.m() > kMaxDecompositionCells || cells.d() > kMaxDecompositionDims) {
    throw DecompositionLimitError(
        "exact coverage volume supports m <= 8 and d <= 8; use point sampling beyond that");
  }

  const ClippedIntervalSet clipped = clip_to_query(cells);
  const int m = cells.m();
  const std::size_t states = std::size_t{1} << m;

  // volume[mask]: measure of the boxes processed so far whose covering set is
  // exactly `mask`.
  std::vector<double> volume(states, 0.0);
  volume[states - 1] = 1.0;
  std::vector<double> next(states);
  std::vector<double> slab_length(states);
  std::vector<std::size_t> active;
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(2 * m + 2));

  for (int j = 0; j < cells.d(); ++j) {
    const auto intervals = clipped.dimension(j);
    breaks.assign({-kHalf, kHalf});
    for (const Interval& iv : intervals) {
      breaks.push_back(iv.lower);
      breaks.push_back(iv.upper);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::fill(slab_length.begin(), slab_length.end(), 0.0);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double lo = breaks[k];
      const double hi = breaks[k + 1];
      std::uint32_t mask = 0;
      for (int i = 0; i < m; ++i) {
        const Interval& iv = intervals[static_cast<std::size_t>(i)];
        if (iv.lower <= lo && hi <= iv.upper) mask |= std::uint32_t{1} << i;
      }
      slab_length[mask] += hi - lo;
    }

    active.clear();
    for (std::size_t slab = 0; slab < states; ++slab) {
      if (slab_length[slab] > 0.0) active.push_back(slab);
    }

    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (volume[mask] == 0.0) continue;
      for (std::size_t slab : active) next[mask & slab] += volume[mask] * slab_length[slab];
    }
    volume.swap(next);
  }

  double covered = 0.0;
  for (std::size_t mask = 0; mask < states; ++mask) {
    if (std::popcount(static_cast<std::uint32_t>(mask)) >= ell) covered += volume[mask];
  }
  return std::clamp(covered, 0.0, 1.0);
}

}  // namespace lshsel
