#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "commlab/numeric/exact_dist.hpp"
#include "commlab/numeric/rational.hpp"

namespace commlab::numeric {

/// Half the L1 distance between the two pmfs (supports unioned).
Rat statistical_distance_exact(const ExactDist& a, const ExactDist& b);
double statistical_distance(const ExactDist& a, const ExactDist& b);

/// Shannon entropy in bits.
double entropy_bits(const ExactDist& d);
/// -log2 of the largest point probability.
double min_entropy_bits(const ExactDist& d);

struct PairProb {
  Value a;
  Value b;
  double p;
};

/// I(A;B) = H(A) + H(B) - H(A,B) in bits, from an explicit joint pmf.
double mutual_information_bits(const std::vector<PairProb>& joint);

struct TwoPointComponent {
  Rat weight;
  Value x;
  Value y;
};

/// Writes a min-entropy >= 1 distribution as a convex combination of uniform
/// two-point distributions. Exact: the mixture reconstructs the input pmf as
/// rationals (floating-mode inputs are converted exactly and renormalized).
/// Throws ConfigError when max prob > 1/2 or the support has fewer than two
/// elements.
std::vector<TwoPointComponent> two_point_decompose(const ExactDist& d);

/// Exact SD between (sum of t independent uniform-over-{a_i,b_i} variables
/// mod p) and the uniform distribution over Z_p. A single pair is replicated
/// t times; otherwise pairs.size() must equal t. Refuses when t*p exceeds the
/// convolution cap (1e7 state updates). t = 0 yields the point mass at 0.
Rat smoothing_check_sd(long t, const std::vector<std::pair<Value, Value>>& pairs,
                       Value p);

/// SD(S, S+1) for S ~ Bin(t, 1/2): exactly C(t, floor(t/2)) / 2^t.
Rat binomial_shift_sd(long t);

}  // namespace commlab::numeric
