#include "commlab/sumequal/instance.hpp"

#include <cstdlib>

#include "commlab/common/errors.hpp"

namespace commlab::sumequal {

Value SumEqualInstance::truth() const {
  if (integer_mode) {
    Value s = 0;
    for (Value v : inputs) s += v;
    return s == target ? 1 : 0;
  }
  Value s = 0;
  for (Value v : inputs) s = (s + v) % modulus;
  return s == ((target % modulus + modulus) % modulus) ? 1 : 0;
}

void SumEqualInstance::validate() const {
  if (k < 1 || static_cast<int>(inputs.size()) != k)
    throw ConfigError("sum-equal instance arity mismatch");
  if (integer_mode) {
    if (magnitude < 1) throw ConfigError("integer mode needs a magnitude bound");
    for (int j = 0; j < k; ++j) {
      const Value bound = j + 1 < k ? magnitude : magnitude * k;
      if (std::llabs(inputs[static_cast<std::size_t>(j)]) > bound)
        throw ConfigError("input exceeds the declared magnitude bound");
    }
  } else {
    if (modulus < 2) throw ConfigError("modulus must be >= 2");
    for (Value v : inputs)
      if (v < 0 || v >= modulus)
        throw ConfigError("mod-mode inputs must lie in [0, m)");
  }
}

SumEqualInstance SumEqualInstance::mod(int k, Value modulus,
                                       std::vector<Value> inputs,
                                       Value target) {
  SumEqualInstance s;
  s.k = k;
  s.integer_mode = false;
  s.modulus = modulus;
  s.inputs = std::move(inputs);
  s.target = target;
  s.validate();
  return s;
}

SumEqualInstance SumEqualInstance::integers(int k, Value magnitude,
                                            std::vector<Value> inputs,
                                            Value target) {
  SumEqualInstance s;
  s.k = k;
  s.integer_mode = true;
  s.magnitude = magnitude;
  s.inputs = std::move(inputs);
  s.target = target;
  s.validate();
  return s;
}

}  // namespace commlab::sumequal
