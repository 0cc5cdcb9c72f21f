#include "commlab/core/dcc_oracle.hpp"

#include <map>
#include <memory>
#include <vector>

#include "commlab/common/errors.hpp"

namespace commlab::core {

namespace {

struct CutShape {
  std::uint64_t prefixes = 1;
  std::uint64_t suffixes = 1;
  std::vector<int> prefix_alphabets;
  std::vector<int> suffix_alphabets;
};

CutShape cut_shape(const FunctionTable& f, int cut, std::uint64_t cap) {
  if (cut < 0 || cut > f.arity())
    throw ConfigError("cut must lie in [0, arity]");
  f.domain_size_checked(cap);
  CutShape s;
  for (int j = 0; j < f.arity(); ++j) {
    if (j < cut) {
      s.prefixes *= static_cast<std::uint64_t>(f.alphabets()[j]);
      s.prefix_alphabets.push_back(f.alphabets()[j]);
    } else {
      s.suffixes *= static_cast<std::uint64_t>(f.alphabets()[j]);
      s.suffix_alphabets.push_back(f.alphabets()[j]);
    }
  }
  return s;
}

void decode_mixed(std::uint64_t index, const std::vector<int>& alphabets,
                  std::vector<Value>& out) {
  out.resize(alphabets.size());
  for (std::size_t j = alphabets.size(); j-- > 0;) {
    out[j] = static_cast<Value>(index % static_cast<std::uint64_t>(alphabets[j]));
    index /= static_cast<std::uint64_t>(alphabets[j]);
  }
}

/// Row classes of the cut matrix: class id per prefix plus one representative
/// prefix per class, in first-seen order.
struct RowClasses {
  std::vector<std::uint64_t> class_of_prefix;
  std::vector<std::uint64_t> representative;
};

RowClasses row_classes(const FunctionTable& f, int cut, std::uint64_t cap) {
  const CutShape s = cut_shape(f, cut, cap);
  RowClasses rc;
  rc.class_of_prefix.resize(s.prefixes);
  std::map<std::vector<Value>, std::uint64_t> seen;
  std::vector<Value> point(static_cast<std::size_t>(f.arity()));
  std::vector<Value> prefix, suffix, row;
  for (std::uint64_t pi = 0; pi < s.prefixes; ++pi) {
    decode_mixed(pi, s.prefix_alphabets, prefix);
    row.clear();
    row.reserve(s.suffixes);
    for (std::uint64_t si = 0; si < s.suffixes; ++si) {
      decode_mixed(si, s.suffix_alphabets, suffix);
      for (int j = 0; j < cut; ++j) point[static_cast<std::size_t>(j)] = prefix[static_cast<std::size_t>(j)];
      for (int j = cut; j < f.arity(); ++j)
        point[static_cast<std::size_t>(j)] = suffix[static_cast<std::size_t>(j - cut)];
      row.push_back(f.eval(point));
    }
    auto [it, inserted] = seen.emplace(row, seen.size());
    rc.class_of_prefix[pi] = it->second;
    if (inserted) rc.representative.push_back(pi);
  }
  return rc;
}

}  // namespace

int oneway_dcc2_oracle(const FunctionTable& f, int cut, std::uint64_t cap) {
  const RowClasses rc = row_classes(f, cut, cap);
  return bits_for_count(rc.representative.size());
}

CutProtocol make_optimal_cut_protocol(const FunctionTable& f, int cut,
                                      std::uint64_t cap) {
  const CutShape s = cut_shape(f, cut, cap);
  auto rc = std::make_shared<RowClasses>(row_classes(f, cut, cap));
  auto fp = std::make_shared<FunctionTable>(f);
  const int width = bits_for_count(rc->representative.size());

  CutProtocol cp;
  cp.cut = cut;
  cp.message_bits = width;
  cp.row_classes = rc->representative.size();
  cp.protocol.t = 2;
  cp.protocol.mode = RandomnessMode::deterministic;
  cp.protocol.declared_max_message_bits = width;
  cp.protocol.name = "optimal-cut-" + std::to_string(cut);

  const auto prefix_alphabets = s.prefix_alphabets;
  cp.protocol.message_fn = [rc, fp, prefix_alphabets, width,
                            cut](const PlayerView& view) {
    if (static_cast<int>(view.input().size()) != cut)
      throw ConfigError("cut protocol: prefix length mismatch");
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < prefix_alphabets.size(); ++j)
      index = index * static_cast<std::uint64_t>(prefix_alphabets[j]) +
              static_cast<std::uint64_t>(view.input()[j]);
    BitString msg;
    msg.append_uint(rc->class_of_prefix[index], width);
    return msg;
  };

  cp.protocol.output_fn = [rc, fp, prefix_alphabets, width,
                           cut](const PlayerView& view) {
    std::uint64_t cls = width > 0 ? view.incoming().read_uint(0, width) : 0;
    if (cls >= rc->representative.size())
      throw EngineViolation("cut protocol: unknown row class");
    std::vector<Value> prefix;
    decode_mixed(rc->representative[cls], prefix_alphabets, prefix);
    std::vector<Value> point(prefix.begin(), prefix.end());
    point.insert(point.end(), view.input().begin(), view.input().end());
    return fp->eval(point);
  };
  return cp;
}

}  // namespace commlab::core
