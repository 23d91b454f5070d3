#pragma once

#include "ssdso/oracle.hpp"

namespace ssdso::detail {

/// build_oracle without the dense fallback; block must lie in [1, n].
Oracle assemble_oracle(const Graph& g, const ShortestPathTree& tree, const SsrpTable& ssrp, std::size_t block);

}  // namespace ssdso::detail
