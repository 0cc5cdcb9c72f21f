#include "commlab/numeric/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "commlab/common/errors.hpp"
#include "commlab/numeric/primes.hpp"

namespace commlab::numeric {

namespace {

double plog2p(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

}  // namespace

Rat statistical_distance_exact(const ExactDist& a, const ExactDist& b) {
  const auto pa = a.exact_pmf();
  const auto pb = b.exact_pmf();
  Rat sum(0);
  std::size_t i = 0, j = 0;
  while (i < pa.size() || j < pb.size()) {
    if (j == pb.size() || (i < pa.size() && pa[i].first < pb[j].first)) {
      sum += pa[i].second;
      ++i;
    } else if (i == pa.size() || pb[j].first < pa[i].first) {
      sum += pb[j].second;
      ++j;
    } else {
      sum += rat_abs(pa[i].second - pb[j].second);
      ++i;
      ++j;
    }
  }
  return sum / 2;
}

double statistical_distance(const ExactDist& a, const ExactDist& b) {
  return statistical_distance_exact(a, b).get_d();
}

double entropy_bits(const ExactDist& d) {
  double h = 0;
  for (std::size_t i = 0; i < d.size(); ++i) h += plog2p(d.prob(i));
  return h;
}

double min_entropy_bits(const ExactDist& d) {
  double m = 0;
  for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, d.prob(i));
  return m > 0 ? -std::log2(m) : 0.0;
}

double mutual_information_bits(const std::vector<PairProb>& joint) {
  std::map<Value, double> ma, mb;
  double hab = 0, mass = 0;
  for (const auto& e : joint) {
    if (e.p < 0) throw ConfigError("mutual_information: negative probability");
    ma[e.a] += e.p;
    mb[e.b] += e.p;
    hab += plog2p(e.p);
    mass += e.p;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw ConfigError("mutual_information: joint mass must be 1");
  double ha = 0, hb = 0;
  for (auto& [v, p] : ma) ha += plog2p(p);
  for (auto& [v, p] : mb) hb += plog2p(p);
  double mi = ha + hb - hab;
  return mi > 0 ? mi : 0.0;  // clamp -0.0 / rounding dust
}

std::vector<TwoPointComponent> two_point_decompose(const ExactDist& d) {
  std::vector<std::pair<Value, Rat>> items;
  for (auto& [v, p] : d.exact_pmf())
    if (p > 0) items.emplace_back(v, p);
  if (items.size() < 2)
    throw ConfigError("two_point_decompose: support must have >= 2 elements");
  Rat total(0);
  for (auto& [v, p] : items) total += p;
  for (auto& [v, p] : items)
    if (p * 2 > total)
      throw ConfigError("two_point_decompose: max prob > 1/2 (min-entropy < 1)");

  const auto original = items;
  const std::size_t max_iters = 2 * items.size();
  std::vector<TwoPointComponent> comps;
  Rat mass = total;
  for (std::size_t iter = 0; mass > 0; ++iter) {
    if (iter >= max_iters)
      throw EngineViolation("two_point_decompose: iteration bound exceeded");
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    Rat p3 = items.size() >= 3 ? items[2].second : Rat(0);
    Rat slack = mass / 2 - p3;
    Rat t = items[1].second < slack ? items[1].second : slack;
    comps.push_back({t * 2, items[0].first, items[1].first});
    items[0].second -= t;
    items[1].second -= t;
    mass -= t * 2;
    items.erase(std::remove_if(items.begin(), items.end(),
                               [](const auto& e) { return e.second == 0; }),
                items.end());
  }

  // Reconstruction assertion: the mixture must reproduce the pmf exactly.
  std::map<Value, Rat> rebuilt;
  for (const auto& c : comps) {
    rebuilt[c.x] += c.weight / 2;
    rebuilt[c.y] += c.weight / 2;
  }
  for (auto& [v, p] : original) {
    if (rebuilt[v] != p)
      throw EngineViolation("two_point_decompose: reconstruction mismatch");
  }
  return comps;
}

Rat smoothing_check_sd(long t,
                       const std::vector<std::pair<Value, Value>>& pairs,
                       Value p) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw ConfigError("smoothing_check: p must be prime");
  if (t < 0) throw ConfigError("smoothing_check: t >= 0 required");
  if (static_cast<long long>(t) * p > 10000000LL)
    throw Refusal("smoothing-cap",
                  "smoothing_check: t*p exceeds the 1e7 state-update cap");
  std::vector<std::pair<Value, Value>> steps;
  if (t > 0) {
    if (pairs.size() == 1)
      steps.assign(static_cast<std::size_t>(t), pairs[0]);
    else if (static_cast<long>(pairs.size()) == t)
      steps = pairs;
    else
      throw ConfigError("smoothing_check: pairs must have size 1 or t");
    for (auto& [a, b] : steps)
      if (((a - b) % p + p) % p == 0)
        throw ConfigError("smoothing_check: a_i != b_i mod p required");
  }

  std::vector<Rat> state(static_cast<std::size_t>(p), Rat(0));
  state[0] = 1;
  for (auto& [a, b] : steps) {
    std::vector<Rat> next(static_cast<std::size_t>(p), Rat(0));
    const Value am = (a % p + p) % p;
    const Value bm = (b % p + p) % p;
    for (Value r = 0; r < p; ++r) {
      if (state[static_cast<std::size_t>(r)] == 0) continue;
      Rat half = state[static_cast<std::size_t>(r)] / 2;
      next[static_cast<std::size_t>((r + am) % p)] += half;
      next[static_cast<std::size_t>((r + bm) % p)] += half;
    }
    state = std::move(next);
  }

  Rat uniform(1, static_cast<unsigned long>(p));
  uniform.canonicalize();
  Rat sd(0);
  for (Value r = 0; r < p; ++r)
    sd += rat_abs(state[static_cast<std::size_t>(r)] - uniform);
  return sd / 2;
}

Rat binomial_shift_sd(long t) {
  if (t < 1) throw ConfigError("binomial_shift_sd: t >= 1 required");
  Rat r(binomial(static_cast<unsigned long>(t),
                 static_cast<unsigned long>(t / 2)),
        pow2(static_cast<unsigned long>(t)));
  r.canonicalize();
  return r;
}

}  // namespace commlab::numeric
