#include "commlab/sumequal/protocols.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "commlab/common/errors.hpp"

namespace commlab::sumequal {

using core::BitString;
using core::OneWayProtocol;
using core::PlayerView;
using core::RandomnessMode;
using numeric::ModPrimeHash;
using numeric::Rat;

namespace {

int ceil_log2_u64(std::uint64_t v) { return core::bits_for_count(v); }

}  // namespace

EqualityFingerprint equality_fingerprint_protocol(Value p_modulus,
                                                  double delta) {
  if (p_modulus < 2) throw ConfigError("equality needs modulus >= 2");
  if (!(delta > 0.0 && delta < 0.5))
    throw ConfigError("equality fingerprint needs delta in (0, 1/2)");
  const double log_p = std::log2(static_cast<double>(p_modulus));
  const auto lo = static_cast<std::uint64_t>(
      std::ceil(log_p * log_p / (delta * delta)));
  const auto hi = 2 * lo;

  EqualityFingerprint fp;
  fp.p_modulus = p_modulus;
  fp.family = std::make_shared<ModPrimeHash>(std::max<std::uint64_t>(lo, 2), hi);

  const Value p = p_modulus;
  auto family = fp.family;
  OneWayProtocol& proto = fp.protocol;
  proto.t = 2;
  proto.mode = RandomnessMode::crs;
  proto.declared_max_message_bits =
      2 * ceil_log2_u64(family->primes().back());
  proto.name = "equality-fingerprint";

  proto.message_fn = [family, p](const PlayerView& view) {
    if (view.input().size() != 1)
      throw ConfigError("equality fingerprint holds one value per player");
    const Value x = view.input()[0];
    if (x < 0 || x >= p) throw ConfigError("equality input outside Z_p");
    SeedStream crs = view.crs();
    const std::uint64_t q = family->draw(crs);
    const int wq = ceil_log2_u64(q);
    BitString msg;
    msg.append_uint(q, wq);
    msg.append_uint(static_cast<std::uint64_t>(ModPrimeHash::digest(x, q)), wq);
    return msg;
  };
  proto.output_fn = [p](const PlayerView& view) -> Value {
    if (view.input().size() != 1)
      throw ConfigError("equality fingerprint holds one value per player");
    const Value y = view.input()[0];
    if (y < 0 || y >= p) throw ConfigError("equality input outside Z_p");
    const int wq = static_cast<int>(view.incoming().size() / 2);
    const std::uint64_t q = view.incoming().read_uint(0, wq);
    const auto digest = static_cast<std::int64_t>(
        view.incoming().read_uint(static_cast<std::size_t>(wq), wq));
    return ModPrimeHash::digest(y, q) == digest ? 1 : 0;
  };
  return fp;
}

Rat EqualityFingerprint::false_accept_exact(Value x, Value y) const {
  if (x == y) return Rat(0);
  const auto d = static_cast<std::uint64_t>(std::llabs(x - y));
  std::uint64_t bad = 0;
  for (std::uint64_t q : family->primes())
    if (d % q == 0) ++bad;
  Rat r(bad, static_cast<unsigned long>(family->primes().size()));
  r.canonicalize();
  return r;
}

OneWayProtocol sumequal_exact_protocol(int players, Value modulus,
                                       Value target) {
  if (players < 1) throw ConfigError("need at least one player");
  if (modulus < 2) throw ConfigError("modulus must be >= 2");
  const int w = ceil_log2_u64(static_cast<std::uint64_t>(modulus));
  const Value m = modulus;
  const Value t_norm = ((target % m) + m) % m;

  OneWayProtocol p;
  p.t = players;
  p.mode = RandomnessMode::deterministic;
  p.declared_max_message_bits = w;
  p.name = "sum-equal-exact-mod-" + std::to_string(modulus);

  auto block_sum = [m](std::span<const Value> block) {
    Value s = 0;
    for (Value v : block) {
      if (v < 0 || v >= m) throw ConfigError("input outside Z_m");
      s = (s + v) % m;
    }
    return s;
  };
  p.message_fn = [block_sum, m, w](const PlayerView& view) {
    Value s = block_sum(view.input());
    if (view.has_incoming())
      s = (s + static_cast<Value>(view.incoming().read_uint(0, w))) % m;
    BitString msg;
    msg.append_uint(static_cast<std::uint64_t>(s), w);
    return msg;
  };
  p.output_fn = [block_sum, m, w, t_norm](const PlayerView& view) -> Value {
    Value s = block_sum(view.input());
    if (view.has_incoming())
      s = (s + static_cast<Value>(view.incoming().read_uint(0, w))) % m;
    return s == t_norm ? 1 : 0;
  };
  return p;
}

namespace {

struct FingerprintShape {
  std::vector<Value> candidates;  // integer sums that mean "equal"
  Value max_abs_input = 0;        // per-coordinate validation bound
  std::uint64_t max_abs_discrepancy = 0;
};

FingerprintShape fingerprint_shape(int k, const FingerprintMode& mode,
                                   Value target) {
  FingerprintShape s;
  if (mode.integer) {
    if (mode.magnitude < 1)
      throw ConfigError("integer fingerprint needs a magnitude bound");
    s.candidates = {target};
    s.max_abs_input = static_cast<Value>(k) * mode.magnitude;
    s.max_abs_discrepancy = static_cast<std::uint64_t>(
        (2 * static_cast<std::int64_t>(k) - 1) * mode.magnitude +
        std::llabs(target));
  } else {
    const Value m = mode.modulus;
    if (m < 2) throw ConfigError("modulus must be >= 2");
    const Value t_norm = ((target % m) + m) % m;
    const Value s_max = static_cast<Value>(k) * (m - 1);
    for (Value cand = t_norm; cand <= s_max; cand += m)
      s.candidates.push_back(cand);
    if (s.candidates.empty()) s.candidates.push_back(t_norm);
    s.max_abs_input = m - 1;
    s.max_abs_discrepancy = static_cast<std::uint64_t>(s_max + t_norm + 1);
  }
  return s;
}

}  // namespace

SumEqualFingerprint sumequal_fingerprint_protocol(int k, FingerprintMode mode,
                                                  double delta, Value target) {
  return sumequal_fingerprint_protocol(k, mode, delta, target, k);
}

SumEqualFingerprint sumequal_fingerprint_protocol(int k, FingerprintMode mode,
                                                  double delta, Value target,
                                                  int players) {
  if (k < 1) throw ConfigError("fingerprint needs arity >= 1");
  if (players < 1) throw ConfigError("need at least one player");
  if (!(delta > 0.0 && delta < 0.5))
    throw ConfigError("fingerprint needs delta in (0, 1/2)");

  const FingerprintShape shape = fingerprint_shape(k, mode, target);
  const int L = ceil_log2_u64(shape.max_abs_discrepancy + 1);
  const auto cands = static_cast<double>(shape.candidates.size());

  // Start from the smallest plausible range and grow until the exact
  // worst-case bound (#candidates * max prime factors per discrepancy)
  // clears delta with the actual prime count.
  auto lo = static_cast<std::uint64_t>(
      std::ceil(std::max(16.0, cands * L / delta)));
  std::shared_ptr<ModPrimeHash> family;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40)
      throw Refusal("prime-range",
                    "could not size a prime range meeting the error target");
    family = std::make_shared<ModPrimeHash>(lo, 2 * lo);
    const double per_value =
        std::floor(static_cast<double>(L) /
                   std::log2(static_cast<double>(lo)));
    const double bad_max = cands * per_value;
    if (bad_max <= delta * static_cast<double>(family->primes().size())) break;
    lo *= 2;
  }

  SumEqualFingerprint fp;
  fp.family = family;
  fp.k = k;
  fp.mode = mode;
  fp.target = target;
  fp.delta = delta;
  fp.digest_bits = ceil_log2_u64(family->primes().back());

  const int w = fp.digest_bits;
  const Value in_bound = shape.max_abs_input;
  const bool integer = mode.integer;
  const Value m = mode.modulus;
  auto candidates = std::make_shared<std::vector<Value>>(shape.candidates);

  OneWayProtocol& proto = fp.protocol;
  proto.t = players;
  proto.mode = RandomnessMode::crs;
  proto.declared_max_message_bits = w;
  proto.name = integer ? "sum-equal-fingerprint-int"
                       : "sum-equal-fingerprint-mod-" + std::to_string(m);

  auto block_sum = [in_bound, integer, m](std::span<const Value> block) {
    Value s = 0;
    for (Value v : block) {
      if (integer) {
        if (std::llabs(v) > in_bound)
          throw ConfigError("input exceeds the declared magnitude bound");
      } else if (v < 0 || v >= m) {
        throw ConfigError("input outside Z_m");
      }
      s += v;  // integer sum of residues / integers
    }
    return s;
  };
  proto.message_fn = [family, block_sum, w](const PlayerView& view) {
    SeedStream crs = view.crs();
    const auto q = static_cast<Value>(family->draw(crs));
    Value digest = ModPrimeHash::digest(block_sum(view.input()), q);
    if (view.has_incoming())
      digest = (digest + static_cast<Value>(view.incoming().read_uint(0, w))) %
               q;
    BitString msg;
    msg.append_uint(static_cast<std::uint64_t>(digest), w);
    return msg;
  };
  proto.output_fn = [family, block_sum, candidates,
                     w](const PlayerView& view) -> Value {
    SeedStream crs = view.crs();
    const auto q = static_cast<Value>(family->draw(crs));
    Value digest = ModPrimeHash::digest(block_sum(view.input()), q);
    if (view.has_incoming())
      digest = (digest + static_cast<Value>(view.incoming().read_uint(0, w))) %
               q;
    for (Value cand : *candidates)
      if (digest == ModPrimeHash::digest(cand, q)) return 1;
    return 0;
  };
  return fp;
}

Rat SumEqualFingerprint::false_accept_exact(const SumEqualInstance& inst) const {
  if (inst.integer_mode != mode.integer ||
      (!mode.integer && inst.modulus != mode.modulus) || inst.target != target)
    throw ConfigError("instance does not match the fingerprint's question");
  if (inst.truth() == 1) return Rat(0);
  Value s = 0;
  for (Value v : inst.inputs) s += v;
  const FingerprintShape shape = fingerprint_shape(k, mode, target);
  std::uint64_t bad = 0;
  for (std::uint64_t q : family->primes()) {
    for (Value cand : shape.candidates) {
      if ((std::llabs(s - cand)) % static_cast<std::int64_t>(q) == 0) {
        ++bad;
        break;
      }
    }
  }
  Rat r(bad, static_cast<unsigned long>(family->primes().size()));
  r.canonicalize();
  return r;
}

}  // namespace commlab::sumequal
