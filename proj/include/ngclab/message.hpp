#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ngclab {

// A message is a sequence of bits, one per element.
using Message = std::vector<std::uint8_t>;

// Bits needed to write any value in [0, n).
inline std::uint32_t bits_for(std::uint64_t n) {
  std::uint32_t b = 0;
  while (b < 64 && (std::uint64_t{1} << b) < n) ++b;
  return b;
}

class BitWriter {
 public:
  explicit BitWriter(Message& out) : out_(out) {}
  void put(std::uint64_t value, std::uint32_t width) {
    for (std::uint32_t i = 0; i < width; ++i) out_.push_back(static_cast<std::uint8_t>((value >> i) & 1));
  }

 private:
  Message& out_;
};

class BitReader {
 public:
  explicit BitReader(const Message& in) : in_(in) {}
  std::uint64_t get(std::uint32_t width) {
    if (pos_ + width > in_.size()) throw std::runtime_error("BitReader: message too short");
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i] & 1) << i;
    pos_ += width;
    return v;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  const Message& in_;
  std::size_t pos_ = 0;
};

}  // namespace ngclab
