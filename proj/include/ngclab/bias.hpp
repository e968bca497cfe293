#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/rational.hpp>

#include "ngclab/rng.hpp"

namespace ngclab {

using Rational = boost::rational<std::int64_t>;

// Explicit subset of {0,1}^m, m <= 24. Coordinate i (1-based) is bit i-1.
class SupportSet {
 public:
  SupportSet(std::uint32_t m, std::vector<std::uint32_t> members);
  static SupportSet full_cube(std::uint32_t m);
  // Uniformly random subset of the given size.
  static SupportSet random(std::uint32_t m, std::uint32_t size, Engine& rng);

  std::uint32_t m() const { return m_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::uint32_t>& members() const { return members_; }

 private:
  std::uint32_t m_;
  std::vector<std::uint32_t> members_;
};

// |Pr[XOR_{i in S} Y_i = 1] - Pr[... = 0]| for Y uniform on A; S 1-based.
Rational bias_exact(const SupportSet& A, const std::vector<std::uint32_t>& S);
double bias(const SupportSet& A, const std::vector<std::uint32_t>& S);

// Average of bias^2 over all k-subsets; requires C(m, k) <= 10^6.
double mean_bias_sq_exact(const SupportSet& A, std::uint32_t k);

struct SampledMean {
  double mean = 0.0;
  double ci_low = 0.0, ci_high = 0.0;  // mean -/+ 3 standard errors
  std::uint64_t trials = 0;
};
SampledMean mean_bias_sq_sampled(const SupportSet& A, std::uint32_t k, std::uint64_t trials, const Seed& seed);

// ((1/m) log2(2^m / |A|))^k.
double kkl_rhs(std::uint32_t m, double cardinality_A, std::uint32_t k);

struct ProductBiasCheck {
  double bias_p = 0.0, bias_q = 0.0, bias_xor = 0.0;
  bool holds = false;  // |bias_xor - bias_p * bias_q| <= 1e-12
};
ProductBiasCheck product_bias_check(double p, double q);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);  // throws on overflow

// w_c^{t_a} / C(w_c t_a, t_a).
Rational valid_subset_prob(std::uint32_t w_c, std::uint32_t t_a);

// Alice maps an N-bit input to a message below 2^c. When bob is empty, Bob
// plays the best response to (message, Bob input), computed exactly.
struct ToyProtocol {
  std::uint32_t N = 0;
  std::function<std::uint64_t(std::uint64_t)> alice;
  std::uint64_t bob_inputs = 0;
  std::function<int(std::uint64_t alice_in, std::uint64_t bob_in)> target;
  std::function<int(std::uint64_t msg, std::uint64_t bob_in)> bob;
};

struct MessageClass {
  std::uint64_t message = 0;
  std::uint64_t size = 0;
  bool good = false;
  double success = 0.0;  // Pr[Bob correct | message], when a target is given
};

struct GoodMessageReport {
  std::uint64_t inputs = 0;
  double threshold = 0.0;        // 2^{N - 4c}
  double good_fraction = 0.0;    // mass of inputs in classes of size >= threshold
  double small_class_mass = 0.0;
  double bound = 0.0;            // 2^{-3c}
  bool small_mass_below_bound = false;
  std::vector<MessageClass> classes;
};
GoodMessageReport good_message_analysis(const ToyProtocol& protocol, std::uint32_t c);

// Alice holds t_a blocks of w_c bits, Bob one index per block, the target is
// the XOR of the indexed bits. Alice sends a seeded hash of her input.
ToyProtocol dhx_toy_protocol(std::uint32_t w_c, std::uint32_t t_a, std::uint32_t c, const Seed& seed);

}  // namespace ngclab
