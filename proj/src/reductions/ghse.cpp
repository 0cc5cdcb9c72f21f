#include "commlab/reductions/ghse.hpp"

#include <cmath>
#include <string>

#include "commlab/common/errors.hpp"

namespace commlab::reductions {

using numeric::Rat;

GhseInstance GhseInstance::from_coords(
    std::vector<sumequal::SumEqualInstance> coords, long gap) {
  if (coords.empty()) throw ConfigError("GHSE instance needs coordinates");
  if (gap < 1) throw ConfigError("GHSE gap must be positive");
  GhseInstance g;
  g.n = static_cast<long>(coords.size());
  g.k = coords.front().k;
  for (const auto& c : coords) {
    c.validate();
    if (c.k != g.k)
      throw ConfigError("all coordinates must have the same player count");
  }
  g.coords = std::move(coords);
  g.gap = gap;
  return g;
}

HseResult hse_evaluate(const GhseInstance& g) {
  HseResult r;
  for (const auto& c : g.coords) r.hse += c.truth() == 1 ? 1 : -1;
  if (r.hse >= g.gap)
    r.label = GhseLabel::one;
  else if (r.hse <= -g.gap)
    r.label = GhseLabel::zero;
  else
    r.label = GhseLabel::undefined;
  return r;
}

GhseInstance copy_amplify(const GhseInstance& g, double c, double epsilon,
                          long n_target) {
  if (!(c > 0) || !(epsilon > 0)) throw ConfigError("need c, epsilon > 0");
  const double n_prime = c * c / (epsilon * epsilon);
  if (std::abs(n_prime - static_cast<double>(g.n)) > 1e-6)
    throw ConfigError("instance size must equal c^2/epsilon^2");
  if (n_target <= 0 || n_target % g.n != 0) {
    const long factor =
        std::max<long>(1, std::lround(static_cast<double>(n_target) /
                                      static_cast<double>(g.n)));
    throw ConfigError("replication factor epsilon^2 n / c^2 = " +
                      std::to_string(static_cast<double>(n_target) /
                                     static_cast<double>(g.n)) +
                      " is not a positive integer; nearest valid n is " +
                      std::to_string(factor * g.n));
  }
  const long factor = n_target / g.n;
  GhseInstance out;
  out.n = n_target;
  out.k = g.k;
  out.gap = g.gap * factor;
  out.coords.reserve(static_cast<std::size_t>(n_target));
  for (const auto& coord : g.coords)
    for (long r = 0; r < factor; ++r) out.coords.push_back(coord);
  return out;
}

Rat majority_bias_exact(long n_dprime) {
  if (n_dprime < 1 || n_dprime % 2 == 0)
    throw ConfigError("majority bias needs odd n''");
  const auto n = static_cast<unsigned long>(n_dprime);
  numeric::Int num = 0;
  for (unsigned long s = 0; s <= (n - 1) / 2; ++s)
    num += numeric::binomial(n - 1, s);
  num *= 2;
  Rat r(num, numeric::pow2(n));
  r.canonicalize();
  return r;
}

Rat majority_bias_closed_form(long n_dprime) {
  if (n_dprime < 1 || n_dprime % 2 == 0)
    throw ConfigError("majority bias needs odd n''");
  const auto n = static_cast<unsigned long>(n_dprime);
  Rat r(numeric::binomial(n - 1, (n - 1) / 2), numeric::pow2(n));
  r.canonicalize();
  return Rat(1, 2) + r;
}

namespace {

long ceil_10_sqrt(long n) {
  // Smallest integer >= 10*sqrt(n), exactly: ceil(sqrt(100 n)).
  const auto target = static_cast<unsigned long long>(n) * 100ULL;
  auto r = static_cast<unsigned long long>(std::sqrt(static_cast<double>(target)));
  while (r * r > target) --r;
  while (r * r < target) ++r;
  return static_cast<long>(r);
}

}  // namespace

GhseReduction augindex_to_ghse(const sumequal::AugIndexSample& sample,
                               long n_prime, const HashGrid& grid,
                               bool allow_outside_regime) {
  const long n_dprime = sample.m;
  if (n_dprime % 2 == 0)
    throw Refusal("even-majority", "n'' must be odd for the majority");
  if (n_prime < 1) throw ConfigError("n' must be positive");
  const bool outside = n_prime < 900 * n_dprime;
  if (outside && !allow_outside_regime)
    throw Refusal("ghse-regime",
                  "n' < 900 n'' is outside the construction's regime; pass "
                  "allow_outside_regime to probe it anyway");

  GhseReduction out;
  const long pad = ceil_10_sqrt(n_prime);
  const long body = n_prime - pad;
  if (body <= 0) throw ConfigError("n' too small: the pad covers everything");

  // Alice's per-copy values and the values Bob needs to compare against.
  const int k = sample.k;
  std::vector<Value> x(static_cast<std::size_t>(n_dprime));
  std::vector<Value> y(static_cast<std::size_t>(n_dprime));
  for (long j = 0; j < n_dprime; ++j) {
    x[static_cast<std::size_t>(j)] = sample.rows[static_cast<std::size_t>(j)][0];
    Value rest = 0;
    for (int l = 1; l < k; ++l)
      rest += sample.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
    y[static_cast<std::size_t>(j)] = -rest;
  }
  const long jq = sample.queried;

  out.m.assign(static_cast<std::size_t>(n_prime), 0);
  out.m_prime.assign(static_cast<std::size_t>(n_prime), 0);
  for (long i = 0; i < body; ++i) {
    int ones = 0;
    for (long j = 0; j < n_dprime; ++j)
      ones += grid.at(i, j)(x[static_cast<std::size_t>(j)]);
    out.m[static_cast<std::size_t>(i)] =
        ones * 2 > n_dprime ? std::uint8_t{1} : std::uint8_t{0};
    out.m_prime[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
        1 - grid.at(i, jq)(y[static_cast<std::size_t>(jq)]));
  }

  BiasReport& rep = out.report;
  rep.exact_bias = majority_bias_exact(n_dprime);
  rep.closed_form = majority_bias_closed_form(n_dprime);
  rep.pad = pad;
  rep.n_prime = n_prime;
  rep.n_dprime = n_dprime;
  rep.variance_bound = n_prime;
  rep.outside_regime = outside;
  // E[HSE] on equal-index inputs: body*(2b-1) - pad; on unequal: -pad.
  rep.expected_hse_equal =
      Rat(body) * (rep.exact_bias * 2 - 1) - Rat(pad);
  rep.expected_hse_unequal = -Rat(pad);
  return out;
}

GhseDecision ghse_decide_from_reduction(
    const std::vector<std::uint8_t>& m,
    const std::vector<std::uint8_t>& m_prime, long gap) {
  if (m.size() != m_prime.size())
    throw ConfigError("vectors must have equal length");
  long hse = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    hse += m[i] != m_prime[i] ? 1 : -1;
  GhseDecision d;
  if (hse >= gap)
    d.label = 1;
  else if (hse <= -gap)
    d.label = 0;
  else {
    d.label = hse >= 0 ? 1 : 0;
    d.ambiguous = true;
  }
  return d;
}

}  // namespace commlab::reductions
