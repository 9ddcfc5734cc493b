#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace grpdb::detail {

/// zeta_n^l for every l < n, written in the tensor basis of Q(zeta_n) used by Cyclotomic.
/// Index 0 of the basis is 1.
struct RootExpansion {
  std::uint64_t dim = 1;
  std::vector<std::vector<std::pair<std::uint32_t, int>>> terms;
};

RootExpansion root_expansions(std::uint64_t n);

}  // namespace grpdb::detail
