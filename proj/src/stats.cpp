#include "ngclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

namespace ngclab {

double Proportion::estimate() const {
  return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

double Proportion::sigma() const {
  if (trials == 0) return 0.0;
  double p = estimate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double Proportion::ci_low() const { return std::max(0.0, estimate() - 3.0 * sigma()); }
double Proportion::ci_high() const { return std::min(1.0, estimate() + 3.0 * sigma()); }

bool within_3sigma(const Proportion& p, double p0) {
  if (p.trials == 0) return false;
  double s = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(p.trials));
  return std::fabs(p.estimate() - p0) <= 3.0 * s;
}

bool at_least_3sigma(const Proportion& p, double bound) {
  if (p.trials == 0) return false;
  double s = std::sqrt(bound * (1.0 - bound) / static_cast<double>(p.trials));
  return p.estimate() >= bound - 3.0 * s;
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
  ChiSquareResult r;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) {
      if (observed[i] != 0) {
        r.statistic = INFINITY;
        r.p_value = 0.0;
        return r;
      }
      continue;
    }
    double d = static_cast<double>(observed[i]) - expected[i];
    r.statistic += d * d / expected[i];
    ++cells;
  }
  r.dof = cells > 0 ? static_cast<double>(cells - 1) : 0.0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& observed) {
  std::uint64_t total = 0;
  for (auto o : observed) total += o;
  std::vector<double> expected(observed.size(),
                               static_cast<double>(total) / static_cast<double>(observed.size()));
  return chi_square_gof(observed, expected);
}

ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("chi_square_two_sample: size mismatch");
  double na = 0, nb = 0;
  for (auto x : a) na += static_cast<double>(x);
  for (auto x : b) nb += static_cast<double>(x);
  ChiSquareResult r;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double col = static_cast<double>(a[i] + b[i]);
    if (col == 0) continue;
    double ea = col * na / (na + nb);
    double eb = col * nb / (na + nb);
    double da = static_cast<double>(a[i]) - ea;
    double db = static_cast<double>(b[i]) - eb;
    r.statistic += da * da / ea + db * db / eb;
    ++cells;
  }
  r.dof = cells > 0 ? static_cast<double>(cells - 1) : 0.0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double binomial_cdf(std::uint64_t k, std::uint64_t n, double p) {
  if (k >= n) return 1.0;
  boost::math::binomial dist(static_cast<double>(n), p);
  return boost::math::cdf(dist, static_cast<double>(k));
}

}  // namespace ngclab
