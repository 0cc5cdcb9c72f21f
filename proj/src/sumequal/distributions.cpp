#include "commlab/sumequal/distributions.hpp"

#include <cmath>

#include "commlab/common/errors.hpp"
#include "commlab/numeric/primes.hpp"

namespace commlab::sumequal {

core::ProductDist viola_product_distribution(int k, Value p) {
  if (k < 1) throw ConfigError("need k >= 1");
  if (p < 2 || !numeric::is_prime_u64(static_cast<std::uint64_t>(p)))
    throw ConfigError("p must be prime");
  return core::ProductDist::uniform(
      std::vector<int>(static_cast<std::size_t>(k), static_cast<int>(p)));
}

bool paper_regime_kp(int k, Value p) {
  const double quarter = std::pow(static_cast<double>(k), 0.25);
  return static_cast<double>(p) > quarter &&
         static_cast<double>(p) < 2.0 * quarter;
}

void DirectSumSample::verify() const {
  for (long i = 0; i < m; ++i) {
    Value s = 0;
    for (Value v : rows[static_cast<std::size_t>(i)]) s = (s + v) % p;
    const Value want = coin[static_cast<std::size_t>(i)] ? 1 : 0;
    if (s != want)
      throw EngineViolation("direct-sum row does not match its coin");
  }
}

DirectSumSample direct_sum_sample(int k, Value p, long m, std::uint64_t seed) {
  if (k < 2) throw ConfigError("need k >= 2");
  if (m < 1) throw ConfigError("need m >= 1");
  if (p < 2 || !numeric::is_prime_u64(static_cast<std::uint64_t>(p)))
    throw ConfigError("p must be prime");
  DirectSumSample out;
  out.k = k;
  out.p = p;
  out.m = m;
  out.outside_paper_regime = !paper_regime_kp(k, p);
  out.rows.reserve(static_cast<std::size_t>(m));
  out.coin.reserve(static_cast<std::size_t>(m));
  SeedStream rng(derive_seed(seed, "direct-sum"));
  for (long i = 0; i < m; ++i) {
    std::vector<Value> row(static_cast<std::size_t>(k));
    Value sum = 0;
    for (int j = 0; j + 1 < k; ++j) {
      row[static_cast<std::size_t>(j)] = static_cast<Value>(
          rng.uniform_below(static_cast<std::uint64_t>(p)));
      sum = (sum + row[static_cast<std::size_t>(j)]) % p;
    }
    const int b = rng.next_bit();
    row[static_cast<std::size_t>(k - 1)] = ((p - sum) % p + (b ? 1 : 0)) % p;
    out.rows.push_back(std::move(row));
    out.coin.push_back(b);
  }
  return out;
}

long default_magnitude_bound(int k) {
  const long v = static_cast<long>(std::floor(
      std::log2(std::max(2, k)) / 8.0));
  return v < 1 ? 1 : v;
}

std::vector<int> AugIndexSample::revealed_answers() const {
  std::vector<int> out;
  for (long j = queried + 1; j < m; ++j)
    out.push_back(coin[static_cast<std::size_t>(j)]);
  return out;
}

void AugIndexSample::verify() const {
  for (long i = 0; i < m; ++i) {
    Value s = 0;
    for (Value v : rows[static_cast<std::size_t>(i)]) s += v;
    const Value want =
        coin[static_cast<std::size_t>(i)] ? static_cast<Value>(big_m) : 0;
    if (s != want)
      throw EngineViolation("aug-index row does not sum to 0 or M");
  }
}

AugIndexSample aug_index_sample(int k, long m, long a, std::uint64_t seed,
                                double c_prime) {
  if (k < 2) throw ConfigError("need k >= 2");
  if (m < 1) throw ConfigError("need m >= 1");
  if (a < 1) throw ConfigError("need magnitude bound a >= 1");
  AugIndexSample out;
  out.k = k;
  out.m = m;
  out.a = a;
  out.big_m = numeric::lcm_upto_u64(a);  // refuses when it overflows

  // Last-coordinate bound: the worst B row needs M - (k-1) <= k*a.
  if (static_cast<long long>(out.big_m) - (k - 1) >
      static_cast<long long>(k) * a)
    throw ConfigError(
        "lcm(1..a) exceeds the last player's [-ka, ka] window at this k; "
        "use a smaller a (default " +
        std::to_string(default_magnitude_bound(k)) + ")");
  out.m_bound_ok =
      std::log2(static_cast<double>(out.big_m)) <= c_prime * static_cast<double>(a);

  SeedStream rng(derive_seed(seed, "aug-index"));
  out.rows.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    std::vector<Value> row(static_cast<std::size_t>(k));
    Value sum = 0;
    for (int j = 0; j + 1 < k; ++j) {
      row[static_cast<std::size_t>(j)] =
          1 + static_cast<Value>(rng.uniform_below(static_cast<std::uint64_t>(a)));
      sum += row[static_cast<std::size_t>(j)];
    }
    const int b = rng.next_bit();
    row[static_cast<std::size_t>(k - 1)] =
        (b ? static_cast<Value>(out.big_m) : 0) - sum;
    out.rows.push_back(std::move(row));
    out.coin.push_back(b);
  }
  out.queried =
      static_cast<long>(rng.uniform_below(static_cast<std::uint64_t>(m)));
  return out;
}

}  // namespace commlab::sumequal
