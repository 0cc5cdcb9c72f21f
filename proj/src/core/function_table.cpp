#include "commlab/core/function_table.hpp"

#include <algorithm>
#include <cstdlib>

#include "commlab/common/errors.hpp"

namespace commlab::core {

std::uint64_t default_enum_cap() {
  if (const char* env = std::getenv("COMMLAB_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 24;
}

namespace {

std::uint64_t domain_size_of(const std::vector<int>& alphabets) {
  std::uint64_t size = 1;
  for (int a : alphabets) {
    if (a < 1) throw ConfigError("alphabet sizes must be >= 1");
    if (size > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(a))
      return 0;  // overflow: treat as non-enumerable
    size *= static_cast<std::uint64_t>(a);
  }
  return size;
}

}  // namespace

FunctionTable FunctionTable::from_table(std::vector<int> alphabets,
                                        std::vector<Value> rows,
                                        bool symmetric) {
  FunctionTable f;
  f.alphabets_ = std::move(alphabets);
  f.domain_size_ = domain_size_of(f.alphabets_);
  if (f.domain_size_ == 0 || rows.size() != f.domain_size_)
    throw ConfigError("function table size does not match the domain");
  f.table_ = std::move(rows);
  f.symmetric_ = symmetric;
  return f;
}

FunctionTable FunctionTable::from_fn(
    std::vector<int> alphabets, std::function<Value(std::span<const Value>)> fn,
    bool symmetric) {
  FunctionTable f;
  f.alphabets_ = std::move(alphabets);
  f.domain_size_ = domain_size_of(f.alphabets_);
  f.fn_ = std::move(fn);
  f.symmetric_ = symmetric;
  return f;
}

FunctionTable FunctionTable::builtin(const std::string& name, int k,
                                     Value param) {
  if (k < 1) throw ConfigError("builtin function needs arity >= 1");
  if (name == "parity") {
    return from_fn(std::vector<int>(static_cast<std::size_t>(k), 2),
                   [](std::span<const Value> x) {
                     Value s = 0;
                     for (Value v : x) s ^= (v & 1);
                     return s;
                   },
                   true);
  }
  if (name == "equality") {
    if (k != 2) throw ConfigError("equality builtin has arity 2");
    if (param < 1) throw ConfigError("equality needs alphabet size >= 1");
    return from_fn(std::vector<int>(2, static_cast<int>(param)),
                   [](std::span<const Value> x) {
                     return Value{x[0] == x[1] ? 1 : 0};
                   },
                   true);
  }
  if (name == "sum-equal-mod-m") {
    if (param < 2) throw ConfigError("sum-equal-mod-m needs modulus >= 2");
    const Value m = param;
    return from_fn(std::vector<int>(static_cast<std::size_t>(k),
                                    static_cast<int>(param)),
                   [m](std::span<const Value> x) {
                     Value s = 0;
                     for (Value v : x) s = (s + v) % m;
                     return Value{s == 0 ? 1 : 0};
                   },
                   true);
  }
  throw ConfigError("unknown builtin function: " + name);
}

Value FunctionTable::eval(std::span<const Value> x) const {
  if (static_cast<int>(x.size()) != arity())
    throw ConfigError("function arity mismatch");
  if (!table_.empty()) return table_[encode_point(x)];
  return fn_(x);
}

std::uint64_t FunctionTable::domain_size_checked(std::uint64_t cap) const {
  if (!enumerable(cap))
    throw Refusal("enum-cap", "domain exceeds the enumeration cap of " +
                                  std::to_string(cap) + " points");
  return domain_size_;
}

void FunctionTable::decode_point(std::uint64_t index,
                                 std::vector<Value>& out) const {
  out.resize(alphabets_.size());
  for (std::size_t j = alphabets_.size(); j-- > 0;) {
    const auto a = static_cast<std::uint64_t>(alphabets_[j]);
    out[j] = static_cast<Value>(index % a);
    index /= a;
  }
}

std::uint64_t FunctionTable::encode_point(std::span<const Value> x) const {
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < alphabets_.size(); ++j) {
    if (x[j] < 0 || x[j] >= alphabets_[j])
      throw ConfigError("point outside the declared alphabets");
    index = index * static_cast<std::uint64_t>(alphabets_[j]) +
            static_cast<std::uint64_t>(x[j]);
  }
  return index;
}

std::vector<Value> FunctionTable::materialize(std::uint64_t cap) const {
  const std::uint64_t size = domain_size_checked(cap);
  if (!table_.empty()) return table_;
  std::vector<Value> out(size);
  std::vector<Value> point;
  for (std::uint64_t i = 0; i < size; ++i) {
    decode_point(i, point);
    out[i] = fn_(point);
  }
  return out;
}

std::vector<Value> FunctionTable::output_values(std::uint64_t cap) const {
  auto t = materialize(cap);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace commlab::core
