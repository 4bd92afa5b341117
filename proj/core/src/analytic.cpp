#include "lshsel/analytic.hpp"

#include <stdexcept>

namespace lshsel::analytic {

namespace {

void require_positive(int value, const char* name) {
  if (value < 1) {
    throw std::invalid_argument(std::string(name) + " must be >= 1, got " + std::to_string(value));
  }
}

Rational half_pow(int n) { return pow(Rational(1, 2), static_cast<unsigned>(n)); }

}  // namespace

Rational shift_product_integral(int n) {
  require_positive(n, "n");
  return pow(Rational(3, 8), static_cast<unsigned>(n));
}

Rational max_shift_integral(int n) {
  require_positive(n, "n");
  // n * int_0^{1/2} x^{n-1} (x + 1/2) dx
  return Rational(2 * n + 1, n + 1) * half_pow(n + 1);
}

Rational min_shift_integral(int n) {
  require_positive(n, "n");
  return Rational(n + 2, n + 1) * half_pow(n + 1);
}

Rational pair_difference_integral(int pairs) {
  require_positive(pairs, "pairs");
  return pow(Rational(1, 8), static_cast<unsigned>(pairs));
}

Rational combined_integral(int group, int pairs) {
  return max_shift_integral(group) * pair_difference_integral(pairs);
}

Rational combined_integral_swapped(int group, int pairs) {
  require_positive(group, "group");
  require_positive(pairs, "pairs");
  return Rational(2 * pairs + 1, pairs + 1) * half_pow(pairs + 1) *
         pow(Rational(1, 8), static_cast<unsigned>(group));
}

std::vector<IntegralEntry> integral_table(int max_d, int max_combined) {
  require_positive(max_d, "max_d");
  require_positive(max_combined, "max_combined");
  std::vector<IntegralEntry> table;
  table.push_back({"shift_1d", 1, 0, shift_product_integral(1)});
  table.push_back({"shift_2d", 2, 0, shift_product_integral(2)});
  for (int d = 1; d <= max_d; ++d) table.push_back({"shift_product", d, 0, shift_product_integral(d)});
  table.push_back({"max_shift_2d", 2, 0, max_shift_integral(2)});
  for (int d = 1; d <= max_d; ++d) table.push_back({"max_shift", d, 0, max_shift_integral(d)});
  table.push_back({"pair_difference_1", 0, 1, pair_difference_integral(1)});
  for (int d = 1; d <= max_d; ++d) {
    table.push_back({"pair_difference_product", 0, d, pair_difference_integral(d)});
  }
  for (int g = 1; g <= max_combined; ++g) {
    for (int p = 1; p <= max_combined; ++p) table.push_back({"combined", g, p, combined_integral(g, p)});
  }
  return table;
}

Rational p_single(int d) {
  require_positive(d, "d");
  return pow(Rational(3, 4), static_cast<unsigned>(d));
}

Rational expected_max_half_uniform(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (n == 0) return Rational(0);
  return Rational(n, 2 * (n + 1));
}

std::vector<QuadrantTerm> quadrant_terms(int ell) {
  require_positive(ell, "ell");
  std::vector<QuadrantTerm> terms;
  terms.reserve(static_cast<std::size_t>(ell) + 1);
  for (int i = 0; i <= ell; ++i) {
    const int k = ell - i;
    // Over the quadrant box the integrand 1 - max(x_1..x_i) + min(x_{i+1}..x_ell)
    // averages to 1 - E[max] - E[max of |negatives|]; the box volume is 2^-ell.
    Rational mean = Rational(1) - expected_max_half_uniform(i) - expected_max_half_uniform(k);
    terms.push_back({i, k, binomial(ell, i), half_pow(ell) * mean});
  }
  return terms;
}

Rational p_one_of_one_overlap(int ell) {
  Rational sum(0);
  for (const QuadrantTerm& t : quadrant_terms(ell)) sum += t.weight * t.value;
  return sum;
}

Rational p_one_of_one_overlap_dd(int ell, int d) {
  require_positive(d, "d");
  return pow(p_one_of_one_overlap(ell), static_cast<unsigned>(d));
}

Rational p_at_least_one(int m, int d) {
  require_positive(m, "m");
  require_positive(d, "d");
  Rational sum(0);
  for (int j = 1; j <= m; ++j) {
    Rational term = binomial(m, j) * p_one_of_one_overlap_dd(j, d);
    if (j % 2 == 1) sum += term; else sum -= term;
  }
  return sum;
}

Rational p_at_least_one_last_term_shifted(int m, int d) {
  require_positive(m, "m");
  require_positive(d, "d");
  if (m == 1) return p_single(d);
  Rational sum(0);
  for (int j = 1; j <= m; ++j) {
    const int overlap = j == m ? m - 1 : j;
    Rational term = binomial(m, j) * p_one_of_one_overlap_dd(overlap, d);
    if (j % 2 == 1) sum += term; else sum -= term;
  }
  return sum;
}

Rational p_at_least_ell(int m, int ell, int d) {
  require_positive(m, "m");
  require_positive(ell, "ell");
  require_positive(d, "d");
  if (ell > m) return Rational(0);
  Rational sum(0);
  for (int j = ell; j <= m; ++j) {
    Rational term = binomial(j - 1, ell - 1) * binomial(m, j) * p_one_of_one_overlap_dd(j, d);
    if ((j - ell) % 2 == 0) sum += term; else sum -= term;
  }
  return sum;
}

std::optional<Rational> predicted(const CoverageSpec& spec) {
  if (!spec.is_unit()) return std::nullopt;
  const CoverageSpec n = spec.normalized();
  return p_at_least_ell(n.m(), n.ell(), n.d());
}

}  // namespace lshsel::analytic
