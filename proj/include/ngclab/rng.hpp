#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ngclab {

using Engine = std::mt19937_64;

// A master seed plus a path of labels. Every random draw in the library
// goes through an Engine built from one of these, so any result can be
// replayed from (master, path) alone.
class Seed {
 public:
  explicit Seed(std::uint64_t master = 0) : master_(master) {}

  Seed child(std::string_view label) const;
  Seed child(std::uint64_t index) const;

  std::uint64_t master() const { return master_; }
  const std::vector<std::string>& path() const { return path_; }

  // 64-bit value derived from master and path (SplitMix64 over FNV-1a labels).
  std::uint64_t value() const;
  Engine engine() const { return Engine(value()); }

  // "master/label/label", used in CSV rows.
  std::string describe() const;

 private:
  std::uint64_t master_;
  std::vector<std::string> path_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Default master seed: NGC_LAB_SEED if set and parseable, otherwise `fallback`.
std::uint64_t default_master_seed(std::uint64_t fallback = 1);

// Unbiased integer in [0, n). n must be positive.
std::uint64_t uniform_below(Engine& rng, std::uint64_t n);

inline int coin(Engine& rng) { return static_cast<int>(rng() >> 63); }

// Uniform permutation of {0..n-1} (Fisher-Yates with uniform_below, so the
// output does not depend on the standard library's distributions).
std::vector<std::uint32_t> random_permutation(std::uint32_t n, Engine& rng);

std::vector<std::uint8_t> random_bits(std::uint32_t n, Engine& rng);

template <class T>
void shuffle(std::vector<T>& v, Engine& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace ngclab
