#include "ngclab/distribution_table.hpp"

#include <cmath>
#include <stdexcept>

namespace ngclab {

void DistributionTable::add(const std::string& outcome, double probability) {
  if (probability < 0) throw std::invalid_argument("DistributionTable: negative probability");
  p_[outcome] += probability;
}

double DistributionTable::at(const std::string& outcome) const {
  auto it = p_.find(outcome);
  return it == p_.end() ? 0.0 : it->second;
}

double DistributionTable::total() const {
  double s = 0;
  for (auto& [k, v] : p_) s += v;
  return s;
}

void DistributionTable::check() const {
  const double tol = 1e-12 * std::max<double>(1.0, static_cast<double>(p_.size()));
  if (std::fabs(total() - 1.0) > tol) throw std::invalid_argument("DistributionTable: probabilities do not sum to 1");
}

DistributionTable DistributionTable::from_counts(const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t n = 0;
  for (auto& [k, c] : counts) n += c;
  if (n == 0) throw std::invalid_argument("DistributionTable: no samples");
  DistributionTable t;
  for (auto& [k, c] : counts) t.p_[k] = static_cast<double>(c) / static_cast<double>(n);
  return t;
}

double tvd(const DistributionTable& p, const DistributionTable& q) {
  p.check();
  q.check();
  double sum = 0;
  for (auto& [k, v] : p.entries()) sum += std::fabs(v - q.at(k));
  for (auto& [k, v] : q.entries())
    if (p.entries().find(k) == p.entries().end()) sum += v;
  return std::min(1.0, sum / 2.0);
}

}  // namespace ngclab
