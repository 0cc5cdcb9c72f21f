#pragma once

#include <cstdint>
#include <string_view>

namespace commlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b * 0xff51afd7ed558ccdULL));
}

inline std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Fixed keyed derivation of (master seed, role, index) -> seed. Every piece
/// of randomness in the library flows through this, so parallel trials and
/// replays are reproducible bit for bit.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view role,
                                 std::uint64_t index = 0) {
  return detail::mix2(detail::mix2(master, detail::hash_tag(role)), index);
}

/// Deterministic stream of random words with value semantics: copying a
/// SeedStream and reading from the copy replays the same bits. A CRS is
/// modeled as a SeedStream every player re-reads from position zero.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return detail::mix2(seed_, counter_++); }

  int next_bit() {
    if (bits_left_ == 0) {
      word_ = next_u64();
      bits_left_ = 64;
    }
    int b = static_cast<int>(word_ & 1);
    word_ >>= 1;
    --bits_left_;
    return b;
  }

  /// Uniform draw from [0, n). Rejection sampling keeps it exactly uniform.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi] inclusive.
  std::int64_t uniform_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double next_double() {  // [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Independent child stream; does not disturb this stream's position.
  SeedStream fork(std::string_view tag, std::uint64_t index = 0) const {
    return SeedStream(derive_seed(seed_, tag, index));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::uint64_t word_ = 0;
  int bits_left_ = 0;
};

}  // namespace commlab
