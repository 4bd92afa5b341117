#include "lshsel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/parallel.hpp"
#include "lshsel/random.hpp"

namespace lshsel::oracle {

namespace {

VariableBound canonical_bound(VariableRole role) {
  switch (role) {
    case VariableRole::kNonnegativeHalf: return {0.0, 0.5, role};
    case VariableRole::kNegativeHalf: return {-0.5, 0.0, role};
    case VariableRole::kFull: return {-0.5, 0.5, role};
  }
  throw std::invalid_argument("unknown variable role");
}

void require_positive(int value, const char* what) {
  if (value < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

double max_shift_factor(std::span<const double> xs) {
  return *std::max_element(xs.begin(), xs.end()) + 0.5;
}

double pair_product(std::span<const double> yv) {
  double p = 1.0;
  for (std::size_t k = 0; k + 1 < yv.size(); k += 2) p *= yv[k] - yv[k + 1];
  return p;
}

// Chunk size for Monte Carlo substreams; fixed so results do not depend on
// the number of threads.
constexpr std::int64_t kChunk = 1 << 16;

}  // namespace

BoxDomain::BoxDomain(std::vector<VariableBound> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw std::invalid_argument("BoxDomain needs at least one variable");
  for (const VariableBound& b : bounds_) {
    if (!(b.lower < b.upper)) throw std::invalid_argument("BoxDomain bounds need lower < upper");
  }
}

BoxDomain BoxDomain::from_roles(std::span<const VariableRole> roles) {
  std::vector<VariableBound> bounds;
  bounds.reserve(roles.size());
  for (VariableRole r : roles) bounds.push_back(canonical_bound(r));
  return BoxDomain(std::move(bounds));
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (const VariableBound& b : bounds_) v *= b.upper - b.lower;
  return v;
}

Integrand::Integrand(IntegrandKind kind, int group, int pairs)
    : kind_(kind), group_(group), pairs_(pairs) {}

Integrand Integrand::constant(int arity) {
  require_positive(arity, "arity");
  return {IntegrandKind::kConstant, arity, 0};
}

Integrand Integrand::shift_product(int n) {
  require_positive(n, "n");
  return {IntegrandKind::kShiftProduct, n, 0};
}

Integrand Integrand::max_shift(int n) {
  require_positive(n, "n");
  return {IntegrandKind::kMaxShift, n, 0};
}

Integrand Integrand::min_shift(int n) {
  require_positive(n, "n");
  return {IntegrandKind::kMinShift, n, 0};
}

Integrand Integrand::pair_difference(int pairs) {
  require_positive(pairs, "pairs");
  return {IntegrandKind::kPairDifference, 0, pairs};
}

Integrand Integrand::combined(int group, int pairs) {
  require_positive(group, "group");
  require_positive(pairs, "pairs");
  return {IntegrandKind::kCombined, group, pairs};
}

Integrand Integrand::overlap_piecewise(int ell) {
  require_positive(ell, "ell");
  return {IntegrandKind::kOverlapPiecewise, ell, 0};
}

Integrand Integrand::from_name(std::string_view name, int group, int pairs) {
  if (name == "constant") return constant(group);
  if (name == "shift_product") return shift_product(group);
  if (name == "max_shift") return max_shift(group);
  if (name == "min_shift") return min_shift(group);
  if (name == "pair_difference") return pair_difference(pairs);
  if (name == "combined") return combined(group, pairs);
  if (name == "overlap_piecewise") return overlap_piecewise(group);
  throw std::invalid_argument("integrand '" + std::string(name) + "' is not in the catalog");
}

std::size_t Integrand::arity() const {
  return static_cast<std::size_t>(group_) + 2 * static_cast<std::size_t>(pairs_);
}

std::string Integrand::name() const {
  switch (kind_) {
    case IntegrandKind::kConstant: return "constant";
    case IntegrandKind::kShiftProduct: return "shift_product";
    case IntegrandKind::kMaxShift: return "max_shift";
    case IntegrandKind::kMinShift: return "min_shift";
    case IntegrandKind::kPairDifference: return "pair_difference";
    case IntegrandKind::kCombined: return "combined";
    case IntegrandKind::kOverlapPiecewise: return "overlap_piecewise";
  }
  return "unknown";
}

BoxDomain Integrand::natural_domain() const {
  std::vector<VariableRole> roles;
  const VariableRole x_role = kind_ == IntegrandKind::kOverlapPiecewise
                                  ? VariableRole::kFull
                                  : VariableRole::kNonnegativeHalf;
  roles.assign(static_cast<std::size_t>(group_), x_role);
  for (int p = 0; p < pairs_; ++p) {
    roles.push_back(VariableRole::kNonnegativeHalf);
    roles.push_back(VariableRole::kNegativeHalf);
  }
  return BoxDomain::from_roles(roles);
}

double Integrand::operator()(std::span<const double> x) const {
  const auto g = static_cast<std::size_t>(group_);
  switch (kind_) {
    case IntegrandKind::kConstant:
      return 1.0;
    case IntegrandKind::kShiftProduct: {
      double p = 1.0;
      for (double xi : x) p *= xi + 0.5;
      return p;
    }
    case IntegrandKind::kMaxShift:
      return max_shift_factor(x);
    case IntegrandKind::kMinShift:
      return *std::min_element(x.begin(), x.end()) + 0.5;
    case IntegrandKind::kPairDifference:
      return pair_product(x);
    case IntegrandKind::kCombined:
      return max_shift_factor(x.first(g)) * pair_product(x.subspan(g));
    case IntegrandKind::kOverlapPiecewise: {
      double hi = 0.0;
      double lo = 0.0;
      for (double xi : x) {
        if (xi >= 0.0) hi = std::max(hi, xi); else lo = std::min(lo, xi);
      }
      return 1.0 - hi + lo;
    }
  }
  return 0.0;
}

std::string_view to_string(OracleMethod method) {
  return method == OracleMethod::kTensorMidpoint ? "tensor-midpoint" : "monte-carlo";
}

bool OracleResult::brackets(double exact) const { return std::abs(value - exact) <= tolerance; }

int max_points_per_axis(std::size_t arity, std::int64_t budget) {
  if (arity == 0) throw std::invalid_argument("arity must be positive");
  auto n = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(arity))));
  auto fits = [&](std::int64_t p) {
    std::int64_t total = 1;
    for (std::size_t k = 0; k < arity; ++k) {
      if (total > budget / p) return false;
      total *= p;
    }
    return true;
  };
  while (n > 1 && !fits(n)) --n;
  while (fits(n + 1)) ++n;
  return static_cast<int>(std::max<std::int64_t>(n, 1));
}

OracleResult integrate_tensor(const Integrand& integrand, const BoxDomain& domain,
                              int points_per_axis) {
  const std::size_t arity = integrand.arity();
  if (domain.arity() != arity) throw std::invalid_argument("domain arity does not match integrand");
  if (arity > kMaxTensorArity) {
    throw std::invalid_argument("tensor quadrature supports arity <= 4; use Monte Carlo");
  }
  if (points_per_axis < 1) throw std::invalid_argument("points_per_axis must be >= 1");
  std::int64_t total = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    total *= points_per_axis;
    if (total > kMaxTensorPoints) throw std::invalid_argument("tensor grid exceeds 1e8 points");
  }

  const auto ppa = static_cast<std::size_t>(points_per_axis);
  std::vector<double> step(arity);
  for (std::size_t k = 0; k < arity; ++k) {
    step[k] = (domain.bound(k).upper - domain.bound(k).lower) / static_cast<double>(ppa);
  }
  auto node = [&](std::size_t axis, std::size_t i) {
    return domain.bound(axis).lower + (static_cast<double>(i) + 0.5) * step[axis];
  };

  // One partial sum per index of the first axis.
  std::vector<double> partial(ppa);
  // Middle axes (all but the first and last) are walked by linear index.
  std::size_t middle = 1;
  for (std::size_t k = 2; k < arity; ++k) middle *= ppa;

  detail::parallel_for(ppa, [&](std::size_t first) {
    std::vector<double> x(arity);
    x[0] = node(0, first);
    if (arity == 1) {
      partial[first] = integrand(x);
      return;
    }
    std::vector<double> row(ppa);
    std::vector<double> rows(middle);
    for (std::size_t mid = 0; mid < middle; ++mid) {
      std::size_t rest = mid;
      for (std::size_t axis = arity - 2; axis >= 1; --axis) {
        x[axis] = node(axis, rest % ppa);
        rest /= ppa;
      }
      for (std::size_t i = 0; i < ppa; ++i) {
        x[arity - 1] = node(arity - 1, i);
        row[i] = integrand(x);
      }
      rows[mid] = detail::pairwise_sum(row);
    }
    partial[first] = detail::pairwise_sum(rows);
  });

  OracleResult r;
  const double count = static_cast<double>(total);
  r.value = detail::pairwise_sum(partial) / count * domain.volume();
  r.tolerance = 2.0 * static_cast<double>(arity) / static_cast<double>(points_per_axis);
  r.method = OracleMethod::kTensorMidpoint;
  r.evaluations = total;
  return r;
}

OracleResult integrate_mc(const Integrand& integrand, const BoxDomain& domain,
                          std::int64_t samples, std::uint64_t seed) {
  const std::size_t arity = integrand.arity();
  if (domain.arity() != arity) throw std::invalid_argument("domain arity does not match integrand");
  if (samples < kMinMonteCarloSamples) throw std::invalid_argument("Monte Carlo needs >= 1e4 samples");

  const auto chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::vector<Moments> parts(chunks);
  detail::parallel_for(chunks, [&](std::size_t c) {
    RandomStream rng = RandomStream::substream(seed, c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(samples, begin + kChunk);
    std::vector<double> x(arity);
    Moments m;
    for (std::int64_t s = begin; s < end; ++s) {
      for (std::size_t k = 0; k < arity; ++k) x[k] = rng.uniform(domain.bound(k).lower, domain.bound(k).upper);
      const double f = integrand(x);
      m.n += 1.0;
      const double delta = f - m.mean;
      m.mean += delta / m.n;
      m.m2 += delta * (f - m.mean);
    }
    parts[c] = m;
  });

  Moments total;
  for (const Moments& p : parts) {
    const double n = total.n + p.n;
    const double delta = p.mean - total.mean;
    total.mean += delta * p.n / n;
    total.m2 += p.m2 + delta * delta * total.n * p.n / n;
    total.n = n;
  }

  const double volume = domain.volume();
  const double std_error = std::sqrt(total.m2 / (total.n - 1.0) / total.n);
  OracleResult r;
  r.value = total.mean * volume;
  r.tolerance = std::max(4.0 * std_error * volume, 1e-12);
  r.method = OracleMethod::kMonteCarlo;
  r.evaluations = samples;
  return r;
}

}  // namespace lshsel::oracle
