#include "ngclab/bias.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ngclab {

SupportSet::SupportSet(std::uint32_t m, std::vector<std::uint32_t> members) : m_(m), members_(std::move(members)) {
  if (m == 0 || m > 24) throw std::invalid_argument("SupportSet: m must lie in [1, 24]");
  if (members_.empty()) throw std::invalid_argument("SupportSet: empty set");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw std::invalid_argument("SupportSet: duplicate member");
  if (members_.back() >= (1u << m)) throw std::invalid_argument("SupportSet: member has more than m bits");
}

SupportSet SupportSet::full_cube(std::uint32_t m) {
  std::vector<std::uint32_t> all(std::size_t{1} << m);
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  return SupportSet(m, std::move(all));
}

SupportSet SupportSet::random(std::uint32_t m, std::uint32_t size, Engine& rng) {
  if (m == 0 || m > 24) throw std::invalid_argument("SupportSet: m must lie in [1, 24]");
  const std::uint32_t cube = 1u << m;
  if (size == 0 || size > cube) throw std::invalid_argument("SupportSet: bad size");
  // Partial Fisher-Yates over the cube.
  std::vector<std::uint32_t> all(cube);
  for (std::uint32_t i = 0; i < cube; ++i) all[i] = i;
  for (std::uint32_t i = 0; i < size; ++i) std::swap(all[i], all[i + uniform_below(rng, cube - i)]);
  all.resize(size);
  return SupportSet(m, std::move(all));
}

namespace {

std::uint32_t mask_of(const SupportSet& A, const std::vector<std::uint32_t>& S) {
  std::uint32_t mask = 0;
  for (auto i : S) {
    if (i < 1 || i > A.m()) throw std::out_of_range("bias: index out of range");
    mask |= 1u << (i - 1);
  }
  return mask;
}

std::int64_t odd_count(const SupportSet& A, std::uint32_t mask) {
  std::int64_t ones = 0;
  for (auto y : A.members()) ones += std::popcount(y & mask) & 1;
  return ones;
}

double bias_sq_of_mask(const SupportSet& A, std::uint32_t mask) {
  const auto n = static_cast<std::int64_t>(A.size());
  const std::int64_t ones = odd_count(A, mask);
  const double b = static_cast<double>(std::llabs(2 * ones - n)) / static_cast<double>(n);
  return b * b;
}

}  // namespace

Rational bias_exact(const SupportSet& A, const std::vector<std::uint32_t>& S) {
  const std::uint32_t mask = mask_of(A, S);
  const auto n = static_cast<std::int64_t>(A.size());
  const std::int64_t ones = odd_count(A, mask);
  return Rational(std::llabs(2 * ones - n), n);
}

double bias(const SupportSet& A, const std::vector<std::uint32_t>& S) {
  return boost::rational_cast<double>(bias_exact(A, S));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > static_cast<unsigned __int128>(INT64_MAX)) throw std::overflow_error("binomial: overflow");
  }
  return static_cast<std::uint64_t>(c);
}

double mean_bias_sq_exact(const SupportSet& A, std::uint32_t k) {
  const std::uint32_t m = A.m();
  if (k > m) throw std::invalid_argument("mean_bias_sq: k exceeds m");
  if (binomial(m, k) > 1000000) throw std::length_error("mean_bias_sq: C(m, k) exceeds 10^6");
  if (k == 0) return 1.0;
  double sum = 0;
  std::uint64_t count = 0;
  // Gosper's hack over k-bit masks.
  std::uint32_t mask = (1u << k) - 1;
  while (mask < (1u << m)) {
    sum += bias_sq_of_mask(A, mask);
    ++count;
    const std::uint32_t c = mask & -mask;
    const std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return sum / static_cast<double>(count);
}

SampledMean mean_bias_sq_sampled(const SupportSet& A, std::uint32_t k, std::uint64_t trials, const Seed& seed) {
  const std::uint32_t m = A.m();
  if (k > m) throw std::invalid_argument("mean_bias_sq: k exceeds m");
  if (trials == 0) throw std::invalid_argument("mean_bias_sq: trials must be positive");
  Engine rng = seed.engine();
  std::vector<std::uint32_t> idx(m);
  double sum = 0, sumsq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::uint32_t i = 0; i < m; ++i) idx[i] = i;
    std::uint32_t mask = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + uniform_below(rng, m - i)]);
      mask |= 1u << idx[i];
    }
    const double v = bias_sq_of_mask(A, mask);
    sum += v;
    sumsq += v * v;
  }
  SampledMean r;
  r.trials = trials;
  r.mean = sum / static_cast<double>(trials);
  const double var = std::max(0.0, sumsq / static_cast<double>(trials) - r.mean * r.mean);
  const double se = std::sqrt(var / static_cast<double>(trials));
  r.ci_low = r.mean - 3 * se;
  r.ci_high = r.mean + 3 * se;
  return r;
}

double kkl_rhs(std::uint32_t m, double cardinality_A, std::uint32_t k) {
  if (m == 0) throw std::invalid_argument("kkl_rhs: m must be positive");
  if (cardinality_A < 1 || cardinality_A > std::ldexp(1.0, static_cast<int>(m)))
    throw std::invalid_argument("kkl_rhs: |A| must lie in [1, 2^m]");
  const double inner = (static_cast<double>(m) - std::log2(cardinality_A)) / static_cast<double>(m);
  return std::pow(inner, static_cast<double>(k));
}

ProductBiasCheck product_bias_check(double p, double q) {
  if (p < 0 || p > 1 || q < 0 || q > 1) throw std::invalid_argument("product_bias_check: probabilities in [0, 1]");
  ProductBiasCheck r;
  r.bias_p = std::fabs(2 * p - 1);
  r.bias_q = std::fabs(2 * q - 1);
  const double one = p * (1 - q) + q * (1 - p);  // Pr[P xor Q = 1]
  r.bias_xor = std::fabs(one - (1 - one));
  r.holds = std::fabs(r.bias_xor - r.bias_p * r.bias_q) <= 1e-12;
  return r;
}

Rational valid_subset_prob(std::uint32_t w_c, std::uint32_t t_a) {
  if (w_c == 0 || t_a == 0) throw std::invalid_argument("valid_subset_prob: w_c and t_a must be positive");
  std::int64_t num = 1;
  for (std::uint32_t i = 0; i < t_a; ++i)
    if (__builtin_mul_overflow(num, static_cast<std::int64_t>(w_c), &num))
      throw std::overflow_error("valid_subset_prob: overflow");
  const auto den = static_cast<std::int64_t>(binomial(static_cast<std::uint64_t>(w_c) * t_a, t_a));
  return Rational(num, den);
}

GoodMessageReport good_message_analysis(const ToyProtocol& protocol, std::uint32_t c) {
  if (protocol.N == 0 || protocol.N > 24) throw std::length_error("good_message_analysis: N must lie in [1, 24]");
  if (!protocol.alice) throw std::invalid_argument("good_message_analysis: missing Alice");
  const std::uint64_t inputs = std::uint64_t{1} << protocol.N;
  std::vector<std::uint64_t> msg_of(inputs);
  std::map<std::uint64_t, std::uint64_t> sizes;
  for (std::uint64_t x = 0; x < inputs; ++x) {
    const std::uint64_t msg = protocol.alice(x);
    if (c < 64 && msg >= (std::uint64_t{1} << c))
      throw std::invalid_argument("good_message_analysis: message exceeds c bits");
    msg_of[x] = msg;
    ++sizes[msg];
  }
  GoodMessageReport r;
  r.inputs = inputs;
  r.threshold = std::ldexp(1.0, static_cast<int>(protocol.N) - 4 * static_cast<int>(c));
  r.bound = std::ldexp(1.0, -3 * static_cast<int>(c));
  std::uint64_t small = 0;
  for (auto& [msg, size] : sizes) {
    MessageClass mc;
    mc.message = msg;
    mc.size = size;
    mc.good = static_cast<double>(size) >= r.threshold;
    if (!mc.good) small += size;
    r.classes.push_back(mc);
  }
  r.small_class_mass = static_cast<double>(small) / static_cast<double>(inputs);
  r.good_fraction = 1.0 - r.small_class_mass;
  r.small_mass_below_bound = r.small_class_mass < r.bound;

  if (protocol.target && protocol.bob_inputs > 0) {
    // votes[(msg, b)] = (#target 1, #total) over Alice inputs in the class.
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < r.classes.size(); ++i) index[r.classes[i].message] = i;
    std::vector<std::vector<std::uint64_t>> ones(r.classes.size(), std::vector<std::uint64_t>(protocol.bob_inputs, 0));
    for (std::uint64_t x = 0; x < inputs; ++x) {
      auto& row = ones[index[msg_of[x]]];
      for (std::uint64_t b = 0; b < protocol.bob_inputs; ++b) row[b] += protocol.target(x, b) & 1;
    }
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
      auto& mc = r.classes[i];
      std::uint64_t correct = 0;
      for (std::uint64_t b = 0; b < protocol.bob_inputs; ++b) {
        const std::uint64_t o = ones[i][b];
        if (protocol.bob)
          correct += protocol.bob(mc.message, b) ? o : mc.size - o;
        else
          correct += std::max(o, mc.size - o);
      }
      mc.success = static_cast<double>(correct) / static_cast<double>(mc.size * protocol.bob_inputs);
    }
  }
  return r;
}

ToyProtocol dhx_toy_protocol(std::uint32_t w_c, std::uint32_t t_a, std::uint32_t c, const Seed& seed) {
  if (w_c == 0 || t_a == 0) throw std::invalid_argument("dhx_toy_protocol: w_c and t_a must be positive");
  ToyProtocol p;
  p.N = w_c * t_a;
  if (p.N > 24) throw std::length_error("dhx_toy_protocol: w_c t_a exceeds 24");
  const std::uint64_t salt = seed.value();
  p.alice = [salt, c](std::uint64_t x) {
    if (c == 0) return std::uint64_t{0};
    const std::uint64_t h = splitmix64(x ^ salt);
    return c >= 64 ? h : h & ((std::uint64_t{1} << c) - 1);
  };
  std::uint64_t choices = 1;
  for (std::uint32_t i = 0; i < t_a; ++i) choices *= w_c;
  p.bob_inputs = choices;
  p.target = [w_c, t_a](std::uint64_t x, std::uint64_t b) {
    int acc = 0;
    for (std::uint32_t i = 0; i < t_a; ++i) {
      const std::uint64_t j = b % w_c;
      b /= w_c;
      acc ^= static_cast<int>((x >> (i * w_c + j)) & 1);
    }
    return acc;
  };
  return p;
}

}  // namespace ngclab
