#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lshsel::oracle {

/// Which half of the cell-boundary range a variable ranges over.
enum class VariableRole {
  kNonnegativeHalf,  // [0, 1/2]
  kNegativeHalf,     // [-1/2, 0]
  kFull,             // [-1/2, 1/2]
};

struct VariableBound {
  double lower;
  double upper;
  VariableRole role;
};

/// Axis-aligned integration box, one bound per variable.
class BoxDomain {
 public:
  explicit BoxDomain(std::vector<VariableBound> bounds);

  /// Box whose bounds are the canonical ranges of the given roles.
  static BoxDomain from_roles(std::span<const VariableRole> roles);

  std::size_t arity() const { return bounds_.size(); }
  const VariableBound& bound(std::size_t i) const { return bounds_[i]; }
  double volume() const;

 private:
  std::vector<VariableBound> bounds_;
};

/// Closed catalog of integrands. Each kind fixes the variable layout its
/// evaluation expects.
enum class IntegrandKind {
  kConstant,          // 1, any arity
  kShiftProduct,      // (x1 + 1/2)...(xn + 1/2)
  kMaxShift,          // max(x1..xn) + 1/2
  kMinShift,          // min(x1..xn) + 1/2
  kPairDifference,    // (y1 - v1)...(yn - vn), variables laid out y1, v1, y2, v2, ...
  kCombined,          // (max(x1..xa) + 1/2) * prod (y - v); x's first, then pairs
  kOverlapPiecewise,  // 1 - max(nonnegative x) + min(negative x): ell-cell overlap length
};

class Integrand {
 public:
  static Integrand constant(int arity);
  static Integrand shift_product(int n);
  static Integrand max_shift(int n);
  static Integrand min_shift(int n);
  static Integrand pair_difference(int pairs);
  static Integrand combined(int group, int pairs);
  static Integrand overlap_piecewise(int ell);

  /// Looks up a catalog entry by name (e.g. "max_shift"), with `group` and
  /// `pairs` as its size parameters. Throws std::invalid_argument for names
  /// outside the catalog.
  static Integrand from_name(std::string_view name, int group, int pairs);

  IntegrandKind kind() const { return kind_; }
  int group() const { return group_; }
  int pairs() const { return pairs_; }
  std::size_t arity() const;
  std::string name() const;

  /// Domain the catalog entry is defined on.
  BoxDomain natural_domain() const;

  double operator()(std::span<const double> x) const;

 private:
  Integrand(IntegrandKind kind, int group, int pairs);

  IntegrandKind kind_;
  int group_;
  int pairs_;
};

enum class OracleMethod { kTensorMidpoint, kMonteCarlo };

std::string_view to_string(OracleMethod method);

struct OracleResult {
  double value = 0.0;
  /// Absolute error bound (tensor) or four standard errors (Monte Carlo).
  double tolerance = 0.0;
  OracleMethod method = OracleMethod::kTensorMidpoint;
  std::int64_t evaluations = 0;

  bool brackets(double exact) const;
};

inline constexpr std::int64_t kMaxTensorPoints = 100'000'000;
inline constexpr std::size_t kMaxTensorArity = 4;
inline constexpr std::int64_t kMinMonteCarloSamples = 10'000;

/// Tensor-product midpoint rule with `points_per_axis` nodes per variable.
/// Tolerance is 2 * arity / points_per_axis, valid for the catalog's
/// Lipschitz integrands on boxes inside [-1/2, 1/2]^n.
OracleResult integrate_tensor(const Integrand& integrand, const BoxDomain& domain,
                              int points_per_axis);

/// Largest points-per-axis whose grid stays within `budget` evaluations.
int max_points_per_axis(std::size_t arity, std::int64_t budget = kMaxTensorPoints);

/// Plain Monte Carlo; deterministic for a given seed regardless of threads.
OracleResult integrate_mc(const Integrand& integrand, const BoxDomain& domain,
                          std::int64_t samples, std::uint64_t seed);

}  // namespace lshsel::oracle
