#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace commlab::l0stream {

/// Ordered updates (i, v) over a vector of dimension N with |v| <= magnitude.
/// In strict mode every prefix keeps all coordinates nonnegative; this is
/// validated on construction and on load, and the error names the offending
/// update position.
struct TurnstileStream {
  long long dimension = 0;  // N
  long long magnitude = 0;  // M
  bool strict = true;
  std::vector<std::pair<long long, long long>> updates;  // 0-based indices

  void validate() const;

  /// Text format: header "N M strict" then one "i v" pair per line with
  /// 1-based indices, decimal integers.
  static TurnstileStream load(std::istream& in);
  static TurnstileStream load_file(const std::string& path);
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
};

/// Exact number of nonzero final coordinates (naive replay).
long long exact_l0(const TurnstileStream& s);

}  // namespace commlab::l0stream
