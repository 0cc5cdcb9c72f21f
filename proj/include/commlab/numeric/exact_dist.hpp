#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "commlab/numeric/rational.hpp"

namespace commlab::numeric {

using Value = std::int64_t;

/// Finite probability vector over an explicit integer support. Exact mode
/// keeps rational probabilities (mass exactly 1); floating mode keeps doubles
/// (mass within 1e-12 of 1). Support is sorted ascending with unique entries.
class ExactDist {
 public:
  enum class Mode { exact, floating };

  static ExactDist from_exact(std::vector<std::pair<Value, Rat>> pmf);
  static ExactDist from_weights(std::vector<std::pair<Value, Rat>> weights);
  static ExactDist from_float(std::vector<std::pair<Value, double>> pmf);
  static ExactDist point(Value v);
  static ExactDist uniform(std::vector<Value> support);
  /// Bin(t, 1/2) over {0..t}, exact.
  static ExactDist binomial_half(long t);

  Mode mode() const { return mode_; }
  std::size_t size() const { return support_.size(); }
  const std::vector<Value>& support() const { return support_; }
  Value value(std::size_t i) const { return support_[i]; }

  /// Probability as double, either mode.
  double prob(std::size_t i) const;
  /// Exact probability; requires exact mode.
  const Rat& prob_exact(std::size_t i) const;
  /// Probability of a value (0 when absent), exact mode.
  Rat prob_of(Value v) const;
  Rat max_prob_exact() const;

  /// The whole pmf as exact rationals. In floating mode each double is
  /// converted exactly (doubles are rationals) and the vector is normalized
  /// to total mass 1; exact mode returns the stored values.
  std::vector<std::pair<Value, Rat>> exact_pmf() const;

  ExactDist shifted(Value delta) const;
  /// Distribution of X + Y for independent X ~ *this, Y ~ other (exact mode).
  ExactDist convolve(const ExactDist& other) const;
  /// Distribution of (X + Y) mod p (exact mode, values reduced into [0,p)).
  ExactDist convolve_mod(const ExactDist& other, Value p) const;

 private:
  ExactDist() = default;
  Mode mode_ = Mode::exact;
  std::vector<Value> support_;
  std::vector<Rat> probs_;
  std::vector<double> fprobs_;
};

}  // namespace commlab::numeric
