#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "commlab/common/errors.hpp"

namespace commlab {

/// Message payload with an exact bit length. Framing is the engine's concern;
/// a BitString knows its own length, so no delimiter bits are ever stored or
/// counted.
class BitString {
 public:
  BitString() = default;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(std::size_t i) const { return bits_[i]; }

  void push_bit(int b) { bits_.push_back(static_cast<std::uint8_t>(b & 1)); }

  /// Appends `width` bits of `v`, most significant first.
  void append_uint(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) push_bit(static_cast<int>(v >> i));
  }

  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }

  std::uint64_t read_uint(std::size_t pos, int width) const {
    if (pos + static_cast<std::size_t>(width) > bits_.size())
      throw EngineViolation("BitString::read_uint past end of message");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | bits_[pos + i];
    return v;
  }

  BitString slice(std::size_t pos, std::size_t len) const {
    if (pos + len > bits_.size())
      throw EngineViolation("BitString::slice past end of message");
    BitString out;
    out.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + len);
    return out;
  }

  bool operator==(const BitString& o) const { return bits_ == o.bits_; }
  bool operator!=(const BitString& o) const { return bits_ != o.bits_; }

  /// Compact key for hashing messages (reconstruction caches).
  std::string key() const {
    std::string s;
    s.reserve(bits_.size() / 8 + 9);
    s.append(std::to_string(bits_.size()));
    s.push_back(':');
    std::uint8_t acc = 0;
    int n = 0;
    for (std::uint8_t b : bits_) {
      acc = static_cast<std::uint8_t>((acc << 1) | b);
      if (++n == 8) {
        s.push_back(static_cast<char>(acc));
        acc = 0;
        n = 0;
      }
    }
    if (n > 0) s.push_back(static_cast<char>(acc));
    return s;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// ceil(log2(n)) for n >= 1; 0 for n <= 1.
inline int bits_for_count(std::uint64_t n) {
  int b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

}  // namespace commlab
