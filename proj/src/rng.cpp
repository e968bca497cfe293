#include "ngclab/rng.hpp"

#include <cstdlib>

namespace ngclab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

Seed Seed::child(std::string_view label) const {
  Seed s = *this;
  s.path_.emplace_back(label);
  return s;
}

Seed Seed::child(std::uint64_t index) const { return child(std::to_string(index)); }

std::uint64_t Seed::value() const {
  std::uint64_t h = splitmix64(master_);
  for (const auto& label : path_) h = splitmix64(h ^ fnv1a(label));
  return h;
}

std::string Seed::describe() const {
  std::string out = std::to_string(master_);
  for (const auto& label : path_) {
    out += '/';
    out += label;
  }
  return out;
}

std::uint64_t default_master_seed(std::uint64_t fallback) {
  const char* env = std::getenv("NGC_LAB_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 0);
  if (end == env || *end != '\0') return fallback;
  return v;
}

std::uint64_t uniform_below(Engine& rng, std::uint64_t n) {
  // Rejection on the top of the range keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::vector<std::uint32_t> random_permutation(std::uint32_t n, Engine& rng) {
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  shuffle(p, rng);
  return p;
}

std::vector<std::uint8_t> random_bits(std::uint32_t n, Engine& rng) {
  std::vector<std::uint8_t> bits(n);
  std::uint64_t word = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>(word & 1);
    word >>= 1;
  }
  return bits;
}

}  // namespace ngclab
