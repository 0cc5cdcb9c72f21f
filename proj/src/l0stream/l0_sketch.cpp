#include "commlab/l0stream/l0_sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "commlab/common/bits.hpp"
#include "commlab/common/errors.hpp"
#include "commlab/common/rng.hpp"
#include "commlab/numeric/primes.hpp"

namespace commlab::l0stream {

namespace {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mod61(unsigned __int128 x) {
  std::uint64_t r = static_cast<std::uint64_t>(x & kMersenne61) +
                    static_cast<std::uint64_t>(x >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

inline std::uint64_t hash61(std::uint64_t a, std::uint64_t b, std::uint64_t x) {
  return mod61(static_cast<unsigned __int128>(a) * x + b);
}

int counter_width(double epsilon, long long stream_len, long long magnitude) {
  const double mm = std::max(4.0, static_cast<double>(stream_len) *
                                      std::max(1.0, static_cast<double>(magnitude)));
  const int w = static_cast<int>(std::ceil(std::log2(1.0 / epsilon)) +
                                 std::ceil(std::log2(std::log2(mm))) + 6);
  return std::max(8, w);
}

}  // namespace

L0Sketch::L0Sketch(long long dimension, double epsilon, std::uint64_t seed,
                   long long stream_len, long long magnitude)
    : dimension_(dimension), epsilon_(epsilon), seed_(seed) {
  if (dimension < 1) throw ConfigError("sketch dimension must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("sketch epsilon must lie in (0,1)");
  levels_ = std::min(
      40, bits_for_count(static_cast<std::uint64_t>(dimension)) + 1);
  buckets_ = static_cast<int>(std::ceil(20.0 / (epsilon * epsilon)));
  counter_bits_ = counter_width(epsilon, stream_len, magnitude);

  SeedStream rng(derive_seed(seed, "l0-sketch"));
  auto draw61 = [&rng] { return rng.next_u64() % kMersenne61; };
  assign_a_ = draw61() | 1;
  assign_b_ = draw61();
  const auto prime_lo = std::uint64_t{1} << (counter_bits_ - 1);
  const auto prime_hi = (std::uint64_t{1} << counter_bits_) - 1;
  const auto pool = numeric::primes_in_range(prime_lo, prime_hi);
  if (pool.empty()) throw ConfigError("no primes for the counter width");
  for (int l = 0; l < levels_; ++l) {
    level_a_.push_back(draw61() | 1);
    level_b_.push_back(draw61());
    primes_.push_back(
        static_cast<std::uint32_t>(pool[rng.uniform_below(pool.size())]));
  }
  counters_.assign(static_cast<std::size_t>(levels_) *
                       static_cast<std::size_t>(buckets_),
                   0);
}

void L0Sketch::update(long long index, long long delta) {
  if (index < 0 || index >= dimension_)
    throw ConfigError("sketch update outside [0, N)");
  // A fixed bijective scramble ahead of the linear maps: consecutive indices
  // (the common case) must not form arithmetic progressions mod K.
  const std::uint64_t x =
      detail::splitmix64(static_cast<std::uint64_t>(index)) % kMersenne61;
  const std::uint64_t u = hash61(assign_a_, assign_b_, x);
  int top = std::countr_zero(u | (std::uint64_t{1} << 62));
  if (top >= levels_) top = levels_ - 1;
  for (int l = 0; l <= top; ++l) {
    const std::uint64_t p = primes_[static_cast<std::size_t>(l)];
    const std::uint64_t b =
        hash61(level_a_[static_cast<std::size_t>(l)],
               level_b_[static_cast<std::size_t>(l)], x) %
        static_cast<std::uint64_t>(buckets_);
    auto& c = counters_[static_cast<std::size_t>(l) *
                            static_cast<std::size_t>(buckets_) +
                        b];
    const long long next =
        (static_cast<long long>(c) + delta % static_cast<long long>(p) +
         static_cast<long long>(p)) %
        static_cast<long long>(p);
    c = static_cast<std::uint32_t>(next);
  }
}

void L0Sketch::consume(const TurnstileStream& s) {
  if (s.dimension > dimension_)
    throw ConfigError("stream dimension exceeds the sketch's");
  for (const auto& [i, v] : s.updates) update(i, v);
}

long long L0Sketch::estimate() const {
  const double k = static_cast<double>(buckets_);
  for (int l = 0; l < levels_; ++l) {
    int nonzero = 0;
    const std::size_t base = static_cast<std::size_t>(l) *
                             static_cast<std::size_t>(buckets_);
    for (int b = 0; b < buckets_; ++b)
      nonzero += counters_[base + static_cast<std::size_t>(b)] != 0 ? 1 : 0;
    const bool last = l == levels_ - 1;
    if (nonzero * 2 <= buckets_ || last) {
      double a = static_cast<double>(nonzero);
      if (last && nonzero == buckets_) a -= 0.5;  // saturated; best effort
      const double distinct = -k * std::log1p(-a / k);
      return std::llround(std::ldexp(distinct, l));
    }
  }
  return 0;
}

long long L0Sketch::space_bits() const {
  const long long counters = static_cast<long long>(counters_.size()) *
                             counter_bits_;
  const long long primes = static_cast<long long>(primes_.size()) *
                           counter_bits_;
  const long long hash_seeds = (2LL * levels_ + 2) * 61;
  return counters + primes + hash_seeds;
}

bool L0Sketch::same_layout(const L0Sketch& other) const {
  return dimension_ == other.dimension_ && seed_ == other.seed_ &&
         levels_ == other.levels_ && buckets_ == other.buckets_ &&
         counter_bits_ == other.counter_bits_;
}

void L0Sketch::merge(const L0Sketch& other) {
  if (!same_layout(other))
    throw ConfigError("sketches must share seeds and layout to merge");
  for (int l = 0; l < levels_; ++l) {
    const auto p = static_cast<std::uint64_t>(primes_[static_cast<std::size_t>(l)]);
    const std::size_t base = static_cast<std::size_t>(l) *
                             static_cast<std::size_t>(buckets_);
    for (int b = 0; b < buckets_; ++b) {
      auto& c = counters_[base + static_cast<std::size_t>(b)];
      c = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(c) +
           other.counters_[base + static_cast<std::size_t>(b)]) %
          p);
    }
  }
}

L0Estimate l0_estimate(const TurnstileStream& s, double epsilon, double delta,
                       std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 0.5))
    throw ConfigError("l0_estimate needs delta in (0, 1/2)");
  int copies = 1;
  if (delta < 1.0 / 3.0) {
    copies = static_cast<int>(std::ceil(48.0 * std::log(1.0 / delta)));
    if (copies % 2 == 0) ++copies;
  }
  std::vector<long long> estimates;
  long long space = 0;
  const long long len = static_cast<long long>(s.updates.size());
  for (int c = 0; c < copies; ++c) {
    L0Sketch sk(s.dimension, epsilon,
                derive_seed(seed, "median-copy", static_cast<std::uint64_t>(c)),
                std::max<long long>(len, 1), std::max<long long>(s.magnitude, 1));
    sk.consume(s);
    estimates.push_back(sk.estimate());
    space += sk.space_bits();
  }
  std::sort(estimates.begin(), estimates.end());
  L0Estimate out;
  out.estimate = estimates[estimates.size() / 2];
  out.space_bits = space;
  out.sketches = copies;
  return out;
}

}  // namespace commlab::l0stream
