#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace ngclab {

// A finite distribution keyed by an outcome label. Absent keys have
// probability zero, so two tables are compared over the union of their keys.
class DistributionTable {
 public:
  void add(const std::string& outcome, double probability);
  double at(const std::string& outcome) const;
  const std::map<std::string, double>& entries() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double total() const;
  // Throws unless the probabilities are non-negative and sum to 1.
  void check() const;

  static DistributionTable from_counts(const std::map<std::string, std::uint64_t>& counts);

 private:
  std::map<std::string, double> p_;
};

// Half the L1 distance.
double tvd(const DistributionTable& p, const DistributionTable& q);

// Best success probability of telling p from q with one sample.
inline double distinguishing_advantage(double tvd_value) { return 0.5 + tvd_value / 2.0; }

}  // namespace ngclab
