#pragma once

#include <cstdint>
#include <vector>

#include "commlab/numeric/hashing.hpp"
#include "commlab/numeric/rational.hpp"
#include "commlab/sumequal/distributions.hpp"
#include "commlab/sumequal/instance.hpp"

namespace commlab::reductions {

using core::Value;

/// Gap-Hamming of Sum-Equal: n coordinate instances, each contributing
/// Z = +1 when its Sum-Equal answers "equal" and -1 otherwise; decide whether
/// the sum of the Z's is at least +gap or at most -gap.
struct GhseInstance {
  long n = 0;
  int k = 0;
  std::vector<sumequal::SumEqualInstance> coords;
  long gap = 0;

  static GhseInstance from_coords(std::vector<sumequal::SumEqualInstance> coords,
                                  long gap);
};

enum class GhseLabel { one, zero, undefined };

struct HseResult {
  long hse = 0;
  GhseLabel label = GhseLabel::undefined;
};

HseResult hse_evaluate(const GhseInstance& g);

/// Replicates every coordinate n_target / g.n times. Preconditions:
/// g.n = c^2 / epsilon^2 and the replication factor epsilon^2 n / c^2 is a
/// positive integer; the HSE and the gap both scale by that factor.
GhseInstance copy_amplify(const GhseInstance& g, double c, double epsilon,
                          long n_target);

/// Deterministic grid of universal hashes h_{ij} on the window [lo, hi],
/// derived from one seed.
struct HashGrid {
  std::uint64_t seed = 0;
  std::int64_t lo = 0, hi = 0;

  numeric::InnerProductHash at(long i, long j) const {
    return numeric::InnerProductHash(
        derive_seed(seed, "hash-grid",
                    (static_cast<std::uint64_t>(i) << 20) ^
                        static_cast<std::uint64_t>(j)),
        lo, hi);
  }
};

struct BiasReport {
  numeric::Rat exact_bias;        // Pr[m_i != m'_i] on equal-index inputs
  numeric::Rat closed_form;       // 1/2 + C(n''-1,(n''-1)/2) / 2^{n''}
  numeric::Rat expected_hse_equal;
  numeric::Rat expected_hse_unequal;  // exactly -pad
  long pad = 0;                       // ceil(10 sqrt(n'))
  long n_prime = 0;
  long n_dprime = 0;
  long variance_bound = 0;  // n'
  bool outside_regime = false;  // n' < 900 n''
};

/// Per-coordinate majority disagreement probability for odd n'', exactly
/// sum_{s=0}^{(n''-1)/2} 2^{1-n''} C(n''-1, s).
numeric::Rat majority_bias_exact(long n_dprime);
numeric::Rat majority_bias_closed_form(long n_dprime);

struct GhseReduction {
  std::vector<std::uint8_t> m;        // Alice's GHSE input bits
  std::vector<std::uint8_t> m_prime;  // Bob's GHSE input bits
  BiasReport report;
};

/// The hash/majority reduction from one augmented-index sample to a
/// 1-GHSE_{n'} instance: r_{ij} = h_{ij}(X^{(j)}), m_i is the majority of
/// row i's hashes (0 on the pad), and m'_i = 1 - h_{i j*}(Y^{(j*)}) for the
/// queried copy j*. X is player 1's column; Y^{(j)} is the value X^{(j)}
/// would need for copy j to sum to zero.
GhseReduction augindex_to_ghse(const sumequal::AugIndexSample& sample,
                               long n_prime, const HashGrid& grid,
                               bool allow_outside_regime = false);

struct GhseDecision {
  int label = 0;
  bool ambiguous = false;  // |HSE| < gap; label falls back to the sign
};

/// Z_i = +1 iff m_i != m'_i (the coordinate "sums to 1"), thresholded at
/// +-gap.
GhseDecision ghse_decide_from_reduction(const std::vector<std::uint8_t>& m,
                                        const std::vector<std::uint8_t>& m_prime,
                                        long gap);

}  // namespace commlab::reductions
