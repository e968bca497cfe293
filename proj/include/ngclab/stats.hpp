#pragma once

#include <cstdint>
#include <vector>

namespace ngclab {

// Successes out of trials, with a 3-sigma (Wald) interval clipped to [0,1].
struct Proportion {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;

  void add(bool hit) {
    hits += hit ? 1 : 0;
    ++trials;
  }
  double estimate() const;
  double sigma() const;  // standard error of the estimate
  double ci_low() const;
  double ci_high() const;
};

// |p_hat - p0| <= 3 sqrt(p0 (1 - p0) / N).
bool within_3sigma(const Proportion& p, double p0);

// p_hat >= bound - 3 sqrt(bound (1 - bound) / N).
bool at_least_3sigma(const Proportion& p, double bound);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

double chi_square_sf(double statistic, double dof);

// Goodness of fit of `observed` against expected counts; cells whose expected
// count is zero must also be empty, and are dropped.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected);

ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& observed);

// Homogeneity test between two histograms over the same cells.
ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b);

// Pr[Bin(n, p) <= k].
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p);

}  // namespace ngclab
