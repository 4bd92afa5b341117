#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lshsel/geometry.hpp"
#include "lshsel/rational.hpp"

namespace lshsel::analytic {

// Integrals over [0, 1/2]-type boxes, exact.

/// Integral of (x1 + 1/2)...(xn + 1/2) over [0, 1/2]^n: (3/8)^n.
Rational shift_product_integral(int n);

/// Integral of max(x1..xn) + 1/2 over [0, 1/2]^n: (2n+1) / ((n+1) 2^(n+1)).
Rational max_shift_integral(int n);

/// Integral of min(x1..xn) + 1/2 over [0, 1/2]^n: (n+2) / ((n+1) 2^(n+1)).
/// Differs from the max form for n >= 2.
Rational min_shift_integral(int n);

/// Integral of (y1 - v1)...(yn - vn) with y in [0, 1/2], v in [-1/2, 0]: (1/8)^n.
Rational pair_difference_integral(int pairs);

/// (max(x1..xa) + 1/2) (y1 - v1)...(yb - vb) over its box: the max factor
/// for `group` variables times (1/8)^pairs.
Rational combined_integral(int group, int pairs);

/// The alternative combined form (2m+1) / (8^d (m+1) 2^(m+1)), read with
/// d = group and m = pairs. Kept for diagnostics only.
Rational combined_integral_swapped(int group, int pairs);

/// One row of the constants table. `group` is the number of x-type
/// variables, `pairs` the number of (y, v) pairs; zero when not applicable.
struct IntegralEntry {
  std::string id;
  int group = 0;
  int pairs = 0;
  Rational value;
};

/// Every displayed integral. The d-fold families run over 1..max_d; the
/// combined family over group and pair counts 1..max_combined.
std::vector<IntegralEntry> integral_table(int max_d = 6, int max_combined = 3);

/// p(1,1,d) = (3/4)^d.
Rational p_single(int d);

/// One sign pattern class of the ell-variable overlap integral: i boundary
/// variables are nonnegative, k = ell - i are negative.
struct QuadrantTerm {
  int i = 0;
  int k = 0;
  Rational weight;  // C(ell, i)
  Rational value;   // integral of 1 - max(nonneg) + min(neg) over that quadrant
};

/// E[max of n uniforms on [0, 1/2]] = n / (2(n+1)); zero for n = 0.
Rational expected_max_half_uniform(int n);

std::vector<QuadrantTerm> quadrant_terms(int ell);

/// p(1, ell, 1): expected overlap length of ell independent cells, summed
/// over the sign quadrants.
Rational p_one_of_one_overlap(int ell);

/// p(1, ell, d) = p(1, ell, 1)^d.
Rational p_one_of_one_overlap_dd(int ell, int d);

/// p(m, 1, d) by inclusion-exclusion over j-fold overlaps, j = 1..m.
Rational p_at_least_one(int m, int d);

/// Inclusion-exclusion with the final term taken as C(m,m) p(1, m-1, d)
/// instead of p(1, m, d). Not a probability in general; diagnostics only.
Rational p_at_least_one_last_term_shifted(int m, int d);

/// p(m, ell, d) via sum_{j>=ell} (-1)^(j-ell) C(j-1, ell-1) C(m, j) p(1, j, d).
/// Zero when ell > m.
Rational p_at_least_ell(int m, int ell, int d);

/// Closed-form value for a spec after normalization, or nullopt when the
/// spec is not the unit case b = s = 1.
std::optional<Rational> predicted(const CoverageSpec& spec);

}  // namespace lshsel::analytic
