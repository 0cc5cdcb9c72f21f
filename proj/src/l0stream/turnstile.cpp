#include "commlab/l0stream/turnstile.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "commlab/common/errors.hpp"

namespace commlab::l0stream {

void TurnstileStream::validate() const {
  if (dimension < 1) throw ConfigError("stream dimension must be >= 1");
  if (magnitude < 0) throw ConfigError("magnitude bound must be >= 0");
  std::vector<long long> x(static_cast<std::size_t>(dimension), 0);
  for (std::size_t pos = 0; pos < updates.size(); ++pos) {
    const auto& [i, v] = updates[pos];
    if (i < 0 || i >= dimension)
      throw ConfigError("update " + std::to_string(pos + 1) +
                        " indexes outside [1, N]");
    if (std::llabs(v) > magnitude)
      throw ConfigError("update " + std::to_string(pos + 1) +
                        " exceeds the magnitude bound");
    x[static_cast<std::size_t>(i)] += v;
    if (strict && x[static_cast<std::size_t>(i)] < 0)
      throw ConfigError("strict-turnstile violation: coordinate " +
                        std::to_string(i + 1) + " is negative after update " +
                        std::to_string(pos + 1));
  }
}

TurnstileStream TurnstileStream::load(std::istream& in) {
  TurnstileStream s;
  int strict_flag = 1;
  if (!(in >> s.dimension >> s.magnitude >> strict_flag))
    throw ConfigError("stream header must be 'N M strict'");
  s.strict = strict_flag != 0;
  long long i = 0, v = 0;
  while (in >> i >> v) s.updates.emplace_back(i - 1, v);
  s.validate();
  return s;
}

TurnstileStream TurnstileStream::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stream file: " + path);
  return load(in);
}

void TurnstileStream::save(std::ostream& out) const {
  out << dimension << ' ' << magnitude << ' ' << (strict ? 1 : 0) << '\n';
  for (const auto& [i, v] : updates) out << (i + 1) << ' ' << v << '\n';
}

void TurnstileStream::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open stream file for writing: " + path);
  save(out);
}

long long exact_l0(const TurnstileStream& s) {
  std::vector<long long> x(static_cast<std::size_t>(s.dimension), 0);
  for (const auto& [i, v] : s.updates) {
    if (i < 0 || i >= s.dimension)
      throw ConfigError("update indexes outside [1, N]");
    x[static_cast<std::size_t>(i)] += v;
  }
  long long count = 0;
  for (long long v : x) count += v != 0 ? 1 : 0;
  return count;
}

}  // namespace commlab::l0stream
