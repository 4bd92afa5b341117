#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshsel/random.hpp"

namespace lshsel {

/// Raised when an exact elementary-box decomposition is requested beyond the
/// supported number of cells or dimensions. Callers fall back to point
/// sampling (see estimate_pointwise).
class DecompositionLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxDecompositionCells = 8;
inline constexpr int kMaxDecompositionDims = 8;

/// The quantity p(m, ell, d): m random origin-containing cells of side b,
/// a query hypercube of side s centered at the origin, coverage threshold ell.
class CoverageSpec {
 public:
  CoverageSpec(int m, int ell, int d, double b = 1.0, double s = 1.0);

  int m() const { return m_; }
  int ell() const { return ell_; }
  int d() const { return d_; }
  double b() const { return b_; }
  double s() const { return s_; }

  bool is_unit() const { return b_ == 1.0 && s_ == 1.0; }

  /// Throws std::invalid_argument unless b = s = 1 (closed forms only cover
  /// the unit case).
  void require_unit() const;

  /// Throws std::invalid_argument unless b = s (geometry is then rescaled
  /// to unit cells and a unit query).
  void require_equal_sides() const;

  /// A request with one cell and a threshold above one denotes the ell-fold
  /// overlap of ell independent cells; it is rewritten to (ell, ell, d).
  CoverageSpec normalized() const;
  bool needs_normalization() const { return m_ == 1 && ell_ > 1; }

  bool within_decomposition_limits() const {
    return m_ <= kMaxDecompositionCells && d_ <= kMaxDecompositionDims;
  }

  std::string to_string() const;

  friend bool operator==(const CoverageSpec&, const CoverageSpec&) = default;

 private:
  int m_;
  int ell_;
  int d_;
  double b_;
  double s_;
};

/// One realization of m origin-containing unit cells. Row i holds the upper
/// boundary offsets of grid i's cell; in dimension j it spans
/// [offset(i, j) - 1, offset(i, j)).
class CellSet {
 public:
  CellSet(int m, int d, std::vector<double> offsets);

  int m() const { return m_; }
  int d() const { return d_; }
  double offset(int cell, int dim) const { return offsets_[index(cell, dim)]; }
  std::span<const double> row(int cell) const {
    return {offsets_.data() + index(cell, 0), static_cast<std::size_t>(d_)};
  }
  const std::vector<double>& offsets() const { return offsets_; }

  /// Copy with an extra cell appended.
  CellSet with_cell(std::span<const double> row) const;

  /// True iff `point` lies in cell i, i.e. offset - 1 <= x < offset per axis.
  bool contains(int cell, std::span<const double> point) const;

  /// Number of cells containing `point`.
  int multiplicity(std::span<const double> point) const;

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::size_t index(int cell, int dim) const {
    return static_cast<std::size_t>(cell) * static_cast<std::size_t>(d_) +
           static_cast<std::size_t>(dim);
  }

  int m_;
  int d_;
  std::vector<double> offsets_;
};

struct Interval {
  double lower;
  double upper;

  double length() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x < upper; }
};

/// Cells intersected with the query hypercube [-1/2, 1/2)^d.
class ClippedIntervalSet {
 public:
  ClippedIntervalSet(int m, int d, std::vector<Interval> intervals);

  int m() const { return m_; }
  int d() const { return d_; }
  const Interval& interval(int cell, int dim) const {
    return intervals_[static_cast<std::size_t>(dim) * static_cast<std::size_t>(m_) +
                      static_cast<std::size_t>(cell)];
  }

  /// All m intervals of one dimension.
  std::span<const Interval> dimension(int dim) const {
    return {intervals_.data() + static_cast<std::size_t>(dim) * static_cast<std::size_t>(m_),
            static_cast<std::size_t>(m_)};
  }

 private:
  int m_;
  int d_;
  std::vector<Interval> intervals_;
};

/// Draws m x d independent uniform offsets in [0, 1).
CellSet sample_cell_set(RandomStream& rng, const CoverageSpec& spec);

ClippedIntervalSet clip_to_query(const CellSet& cells);

/// Exact volume fraction of the unit query hypercube covered by at least
/// `ell` of the cells. Zero when ell exceeds the number of cells.
///
/// Per axis the clipped endpoints cut [-1/2, 1/2) into at most 2m+1 slabs,
/// each with a fixed set of covering cells. The product of slabs forms the
/// elementary boxes; instead of enumerating them, volumes are accumulated
/// per coverage bitmask one axis at a time.
double coverage_volume(const CellSet& cells, int ell);

}  // namespace lshsel
