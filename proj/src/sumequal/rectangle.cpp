#include "commlab/sumequal/rectangle.hpp"

#include <cmath>
#include <unordered_map>

#include "commlab/common/errors.hpp"
#include "commlab/numeric/primes.hpp"

namespace commlab::sumequal {

using numeric::Int;
using numeric::Rat;

Rectangle Rectangle::full(int k, long m, Value p) {
  if (static_cast<double>(m) * std::log2(static_cast<double>(p)) > 24.0)
    throw Refusal("rectangle-cap", "p^m columns per player is too large");
  Rectangle r;
  std::uint64_t columns = 1;
  for (long i = 0; i < m; ++i) columns *= static_cast<std::uint64_t>(p);
  std::vector<std::vector<Value>> all;
  all.reserve(columns);
  for (std::uint64_t c = 0; c < columns; ++c) {
    std::vector<Value> col(static_cast<std::size_t>(m));
    std::uint64_t rest = c;
    for (long i = m; i-- > 0;) {
      col[static_cast<std::size_t>(i)] =
          static_cast<Value>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    all.push_back(std::move(col));
  }
  r.allowed.assign(static_cast<std::size_t>(k - 1), all);
  return r;
}

Rectangle Rectangle::pin_value(int k, long m, Value p, int player, long copy,
                               Value value) {
  Rectangle r = full(k, m, p);
  if (player < 0 || player >= k - 1)
    throw ConfigError("pinned player must be one of the first k-1");
  auto& choices = r.allowed[static_cast<std::size_t>(player)];
  std::vector<std::vector<Value>> kept;
  for (auto& col : choices)
    if (col[static_cast<std::size_t>(copy)] == value) kept.push_back(col);
  choices = std::move(kept);
  return r;
}

RectangleProbeResult rectangle_conditional_probe(
    int k, long m, Value p, const Rectangle& rect,
    const std::vector<long>& copies, std::uint64_t cap) {
  if (k < 2) throw ConfigError("probe needs k >= 2");
  if (m < 1) throw ConfigError("probe needs m >= 1");
  if (p < 2 || !numeric::is_prime_u64(static_cast<std::uint64_t>(p)))
    throw ConfigError("p must be prime");
  if (copies.empty()) throw ConfigError("probe needs at least one copy index");
  for (long c : copies)
    if (c < 0 || c >= m) throw ConfigError("probed copy index out of range");
  if (rect.allowed.size() != static_cast<std::size_t>(k - 1))
    throw ConfigError("rectangle must list the first k-1 players");

  // Cap on the untouched enumeration space p^{m(k-1)}.
  double log_space = static_cast<double>(m) * (k - 1) *
                     std::log2(static_cast<double>(p));
  if (log_space > std::log2(static_cast<double>(cap)))
    throw Refusal("rectangle-cap",
                  "p^{m(k-1)} exceeds the probe's enumeration cap");

  std::uint64_t combos = 1;
  for (const auto& choices : rect.allowed) {
    if (choices.empty()) throw ConfigError("a player has no allowed column");
    for (const auto& col : choices) {
      if (col.size() != static_cast<std::size_t>(m))
        throw ConfigError("rectangle column has the wrong number of copies");
      for (Value v : col)
        if (v < 0 || v >= p) throw ConfigError("column value outside Z_p");
    }
    combos *= choices.size();
  }

  const std::size_t probe_count = copies.size();
  std::unordered_map<std::uint64_t, std::uint64_t> tally;
  std::vector<std::size_t> odo(static_cast<std::size_t>(k - 1), 0);
  std::vector<Value> probe_sum(probe_count);
  for (std::uint64_t it = 0; it < combos; ++it) {
    for (auto& s : probe_sum) s = 0;
    for (int j = 0; j < k - 1; ++j) {
      const auto& col = rect.allowed[static_cast<std::size_t>(j)]
                                    [odo[static_cast<std::size_t>(j)]];
      for (std::size_t l = 0; l < probe_count; ++l)
        probe_sum[l] =
            (probe_sum[l] + col[static_cast<std::size_t>(copies[l])]) % p;
    }
    std::uint64_t key = 0;
    for (std::size_t l = 0; l < probe_count; ++l) {
      const Value g_k = (p - probe_sum[l]) % p;  // the closing value
      key = key * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(g_k);
    }
    ++tally[key];
    for (std::size_t j = 0; j < odo.size(); ++j) {
      if (++odo[j] < rect.allowed[j].size()) break;
      odo[j] = 0;
    }
  }

  RectangleProbeResult result;
  // Mass: product of per-player allowed fractions.
  Int denom_col = 1;
  for (long i = 0; i < m; ++i) denom_col *= p;
  Rat mass(1);
  for (const auto& choices : rect.allowed) {
    Rat f(Int(static_cast<unsigned long>(choices.size())), denom_col);
    f.canonicalize();
    mass *= f;
  }
  result.mass = mass;

  // Prefix statistical distances from uniform over Z_p^l.
  for (std::size_t l = 1; l <= probe_count; ++l) {
    std::uint64_t shrink = 1;
    for (std::size_t j = l; j < probe_count; ++j)
      shrink *= static_cast<std::uint64_t>(p);
    std::unordered_map<std::uint64_t, std::uint64_t> marg;
    for (const auto& [key, c] : tally) marg[key / shrink] += c;
    std::uint64_t cells = 1;
    for (std::size_t j = 0; j < l; ++j) cells *= static_cast<std::uint64_t>(p);
    Rat uniform(Int(1), Int(static_cast<unsigned long>(cells)));
    uniform.canonicalize();
    Rat sd(0);
    for (const auto& [key, c] : marg) {
      Rat q(Int(static_cast<unsigned long>(c)),
            Int(static_cast<unsigned long>(combos)));
      q.canonicalize();
      sd += numeric::rat_abs(q - uniform);
    }
    sd += Rat(static_cast<unsigned long>(cells - marg.size())) * uniform;
    result.prefix_sd.push_back(sd / 2);
  }
  return result;
}

}  // namespace commlab::sumequal
