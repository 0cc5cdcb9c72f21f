#pragma once

#include <cstdint>

#include "commlab/core/function_table.hpp"
#include "commlab/core/protocol.hpp"

namespace commlab::core {

/// Exact one-way deterministic 2-player communication of f under the prefix
/// cut: the optimal message count equals the number of distinct rows of the
/// matrix f(prefix, suffix), so the bit cost is ceil(log2(#distinct rows))
/// (0 when there is a single row). Refuses non-enumerable domains.
int oneway_dcc2_oracle(const FunctionTable& f, int cut,
                       std::uint64_t cap = default_enum_cap());

/// The matching optimal protocol: Alice sends her prefix's row-class index,
/// Bob evaluates f on any representative prefix of that class. Zero error by
/// construction; message width is exactly the oracle value.
struct CutProtocol {
  OneWayProtocol protocol;
  int cut = 0;
  int message_bits = 0;
  std::uint64_t row_classes = 0;
};

CutProtocol make_optimal_cut_protocol(const FunctionTable& f, int cut,
                                      std::uint64_t cap = default_enum_cap());

}  // namespace commlab::core
