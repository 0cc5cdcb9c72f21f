#include "commlab/numeric/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "commlab/common/errors.hpp"

namespace commlab::numeric {

namespace {

template <typename P>
std::vector<std::pair<Value, P>> merge_sorted(
    std::vector<std::pair<Value, P>> pmf) {
  std::map<Value, P> acc;
  for (auto& [v, p] : pmf) {
    auto it = acc.find(v);
    if (it == acc.end())
      acc.emplace(v, p);
    else
      it->second += p;
  }
  std::vector<std::pair<Value, P>> out(acc.begin(), acc.end());
  return out;
}

}  // namespace

ExactDist ExactDist::from_exact(std::vector<std::pair<Value, Rat>> pmf) {
  // mpq arithmetic assumes canonical operands; normalize whatever arrives.
  for (auto& [v, p] : pmf) p.canonicalize();
  auto merged = merge_sorted(std::move(pmf));
  ExactDist d;
  d.mode_ = Mode::exact;
  Rat mass = 0;
  for (auto& [v, p] : merged) {
    if (p < 0) throw ConfigError("ExactDist: negative probability");
    mass += p;
    d.support_.push_back(v);
    d.probs_.push_back(p);
  }
  if (mass != 1) throw ConfigError("ExactDist: exact mass must equal 1");
  return d;
}

ExactDist ExactDist::from_weights(std::vector<std::pair<Value, Rat>> weights) {
  Rat mass = 0;
  for (auto& [v, w] : weights) {
    if (w < 0) throw ConfigError("ExactDist: negative weight");
    mass += w;
  }
  if (mass == 0) throw ConfigError("ExactDist: zero total weight");
  for (auto& [v, w] : weights) w /= mass;
  return from_exact(std::move(weights));
}

ExactDist ExactDist::from_float(std::vector<std::pair<Value, double>> pmf) {
  auto merged = merge_sorted(std::move(pmf));
  ExactDist d;
  d.mode_ = Mode::floating;
  double mass = 0;
  for (auto& [v, p] : merged) {
    if (p < 0) throw ConfigError("ExactDist: negative probability");
    mass += p;
    d.support_.push_back(v);
    d.fprobs_.push_back(p);
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw ConfigError("ExactDist: float mass must be within 1e-12 of 1");
  return d;
}

ExactDist ExactDist::point(Value v) { return from_exact({{v, Rat(1)}}); }

ExactDist ExactDist::uniform(std::vector<Value> support) {
  if (support.empty()) throw ConfigError("ExactDist: empty support");
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  Rat p(1, static_cast<unsigned long>(support.size()));
  p.canonicalize();
  std::vector<std::pair<Value, Rat>> pmf;
  pmf.reserve(support.size());
  for (Value v : support) pmf.emplace_back(v, p);
  return from_exact(std::move(pmf));
}

ExactDist ExactDist::binomial_half(long t) {
  if (t < 0) throw ConfigError("binomial_half: t >= 0 required");
  Int denom = pow2(static_cast<unsigned long>(t));
  std::vector<std::pair<Value, Rat>> pmf;
  pmf.reserve(static_cast<std::size_t>(t) + 1);
  for (long k = 0; k <= t; ++k) {
    Rat p(binomial(static_cast<unsigned long>(t),
                   static_cast<unsigned long>(k)),
          denom);
    p.canonicalize();
    pmf.emplace_back(k, p);
  }
  return from_exact(std::move(pmf));
}

double ExactDist::prob(std::size_t i) const {
  return mode_ == Mode::exact ? probs_[i].get_d() : fprobs_[i];
}

const Rat& ExactDist::prob_exact(std::size_t i) const {
  if (mode_ != Mode::exact)
    throw ConfigError("ExactDist: exact probability requested in float mode");
  return probs_[i];
}

Rat ExactDist::prob_of(Value v) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), v);
  if (it == support_.end() || *it != v) return Rat(0);
  std::size_t i = static_cast<std::size_t>(it - support_.begin());
  if (mode_ == Mode::exact) return probs_[i];
  Rat r(fprobs_[i]);
  r.canonicalize();
  return r;
}

Rat ExactDist::max_prob_exact() const {
  Rat m(0);
  for (auto& [v, p] : exact_pmf())
    if (p > m) m = p;
  return m;
}

std::vector<std::pair<Value, Rat>> ExactDist::exact_pmf() const {
  std::vector<std::pair<Value, Rat>> out;
  out.reserve(support_.size());
  if (mode_ == Mode::exact) {
    for (std::size_t i = 0; i < support_.size(); ++i)
      out.emplace_back(support_[i], probs_[i]);
    return out;
  }
  Rat mass(0);
  for (std::size_t i = 0; i < support_.size(); ++i) {
    Rat p(fprobs_[i]);
    p.canonicalize();
    out.emplace_back(support_[i], p);
    mass += p;
  }
  for (auto& [v, p] : out) p /= mass;
  return out;
}

ExactDist ExactDist::shifted(Value delta) const {
  if (mode_ == Mode::exact) {
    std::vector<std::pair<Value, Rat>> pmf;
    for (std::size_t i = 0; i < support_.size(); ++i)
      pmf.emplace_back(support_[i] + delta, probs_[i]);
    return from_exact(std::move(pmf));
  }
  std::vector<std::pair<Value, double>> pmf;
  for (std::size_t i = 0; i < support_.size(); ++i)
    pmf.emplace_back(support_[i] + delta, fprobs_[i]);
  return from_float(std::move(pmf));
}

ExactDist ExactDist::convolve(const ExactDist& other) const {
  const auto a = exact_pmf();
  const auto b = other.exact_pmf();
  std::vector<std::pair<Value, Rat>> pmf;
  pmf.reserve(a.size() * b.size());
  for (auto& [x, p] : a)
    for (auto& [y, q] : b) pmf.emplace_back(x + y, p * q);
  return from_exact(std::move(pmf));
}

ExactDist ExactDist::convolve_mod(const ExactDist& other, Value p) const {
  if (p < 1) throw ConfigError("convolve_mod: modulus >= 1 required");
  const auto a = exact_pmf();
  const auto b = other.exact_pmf();
  std::vector<std::pair<Value, Rat>> pmf;
  pmf.reserve(a.size() * b.size());
  for (auto& [x, px] : a)
    for (auto& [y, qy] : b) pmf.emplace_back(((x + y) % p + p) % p, px * qy);
  return from_exact(std::move(pmf));
}

}  // namespace commlab::numeric
