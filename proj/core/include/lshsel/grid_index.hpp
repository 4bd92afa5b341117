#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "lshsel/random.hpp"
#include "lshsel/rational.hpp"

namespace lshsel::index {

using PointId = std::uint32_t;

/// Points on the torus [0, L)^d, stored row-major.
class PointDataset {
 public:
  PointDataset(int d, int domain_side, std::vector<double> coords);

  int d() const { return d_; }
  int domain_side() const { return domain_side_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
  bool empty() const { return coords_.empty(); }
  std::span<const double> point(PointId id) const {
    return {coords_.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(d_),
            static_cast<std::size_t>(d_)};
  }
  const std::vector<double>& coords() const { return coords_; }

  /// True iff every coordinate of `q` lies in [0, L).
  bool in_domain(std::span<const double> q) const;

 private:
  int d_;
  int domain_side_;
  std::vector<double> coords_;
};

/// n i.i.d. uniform points on [0, L)^d.
PointDataset generate_dataset(std::size_t n, int d, int domain_side, std::uint64_t seed);

/// CSV with header `dim0,...,dim{d-1}` and one point per row.
void write_dataset_csv(std::ostream& os, const PointDataset& dataset);
PointDataset read_dataset_csv(std::istream& is, int domain_side);

/// m unit grids with offsets in [0, 1)^d, each hashing every point into the
/// cell floor(x - offset) wrapped into {0..L-1}^d. Immutable after build.
class MultiGridIndex {
 public:
  /// Cells are keyed by their coordinate tuple linearized in base L.
  using CellKey = std::uint64_t;
  using Buckets = std::unordered_map<CellKey, std::vector<PointId>>;

  int m() const { return static_cast<int>(buckets_.size()); }
  int d() const { return d_; }
  int domain_side() const { return domain_side_; }
  double offset(int grid, int dim) const {
    return offsets_[static_cast<std::size_t>(grid) * static_cast<std::size_t>(d_) +
                    static_cast<std::size_t>(dim)];
  }
  const Buckets& buckets(int grid) const { return buckets_[static_cast<std::size_t>(grid)]; }

  /// Integer cell coordinates of `x` in grid `grid`.
  std::vector<int> cell_coords(int grid, std::span<const double> x) const;
  CellKey cell_key(int grid, std::span<const double> x) const;

 private:
  friend MultiGridIndex build_with_offsets(const PointDataset&, int, std::vector<double>);

  MultiGridIndex(int d, int domain_side, std::vector<double> offsets, std::size_t m);

  int d_;
  int domain_side_;
  std::vector<double> offsets_;
  std::vector<Buckets> buckets_;
};

/// Samples m x d offsets from `seed` and buckets every point.
MultiGridIndex build(const PointDataset& dataset, int m, std::uint64_t seed);

/// Builds with explicit m x d offsets (row per grid).
MultiGridIndex build_with_offsets(const PointDataset& dataset, int m, std::vector<double> offsets);

/// Union of the buckets containing `q`, sorted and deduplicated.
/// Throws std::invalid_argument when q is outside [0, L)^d.
std::vector<PointId> query_candidates(const MultiGridIndex& index, std::span<const double> q);

/// Brute-force maximum-metric range query on the torus: x qualifies iff the
/// wrapped |x_j - q_j| < s/2 on every axis. Requires 0 < s <= L/2.
std::vector<PointId> range_query_exact(const PointDataset& dataset, std::span<const double> q,
                                       double s);

/// Fraction of `exact` found in `candidates` (both sorted); 1 when exact is empty.
double recall(std::span<const PointId> candidates, std::span<const PointId> exact);

struct RecallReport {
  std::int64_t queries = 0;
  double mean_recall = 0.0;
  double std_error = 0.0;
  Rational predicted;
  double mean_candidate_fraction = 0.0;
  /// Query draws discarded because their exact range result was empty.
  std::int64_t redraws = 0;
};

/// Recall of the union-of-m-cells candidates against the exact unit range
/// query (s = b = 1). Each query k uses RandomStream::substream(seed, k + 1)
/// to draw fresh grid offsets and the query point, then rebuilds the index;
/// the dataset is generate_dataset(n, d, L, seed).
RecallReport recall_experiment(std::size_t n, int d, int domain_side, int m,
                               std::int64_t queries, std::uint64_t seed);

}  // namespace lshsel::index
