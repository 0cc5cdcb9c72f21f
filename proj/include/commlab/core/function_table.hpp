#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace commlab::core {

using Value = std::int64_t;

/// Global cap on exhaustive enumeration, overridable via the
/// COMMLAB_ENUM_CAP environment variable. Default 2^24 points.
std::uint64_t default_enum_cap();

/// A total k-party function on a product domain: coordinate j ranges over
/// {0 .. alphabets[j]-1}. Backed by a dense table or by a closure.
class FunctionTable {
 public:
  static FunctionTable from_table(std::vector<int> alphabets,
                                  std::vector<Value> rows,
                                  bool symmetric = false);
  static FunctionTable from_fn(std::vector<int> alphabets,
                               std::function<Value(std::span<const Value>)> fn,
                               bool symmetric = false);

  /// Named builtins: "parity" (k bits), "equality" (k = 2 over [param]),
  /// "sum-equal-mod-m" (k players over Z_param, 1 iff the sum is 0 mod param).
  static FunctionTable builtin(const std::string& name, int k,
                               Value param = 2);

  int arity() const { return static_cast<int>(alphabets_.size()); }
  const std::vector<int>& alphabets() const { return alphabets_; }
  bool symmetric_flag() const { return symmetric_; }

  Value eval(std::span<const Value> x) const;

  std::uint64_t domain_size() const { return domain_size_; }
  bool enumerable(std::uint64_t cap) const {
    return domain_size_ != 0 && domain_size_ <= cap;
  }
  /// Domain size if it is within cap, else throws Refusal("enum-cap").
  std::uint64_t domain_size_checked(std::uint64_t cap) const;

  /// Mixed-radix point codec for exhaustive loops (index 0 = all zeros,
  /// last coordinate varies fastest).
  void decode_point(std::uint64_t index, std::vector<Value>& out) const;
  std::uint64_t encode_point(std::span<const Value> x) const;

  /// Dense output table over the whole domain (for hot loops).
  std::vector<Value> materialize(std::uint64_t cap) const;
  /// Sorted distinct outputs over the whole domain.
  std::vector<Value> output_values(std::uint64_t cap) const;

 private:
  std::vector<int> alphabets_;
  std::vector<Value> table_;  // empty when fn-backed
  std::function<Value(std::span<const Value>)> fn_;
  bool symmetric_ = false;
  std::uint64_t domain_size_ = 0;  // 0 means overflow (non-enumerable)
};

}  // namespace commlab::core
