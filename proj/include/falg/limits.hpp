#pragma once

#include <cstddef>

namespace falg {

/// Resource guards shared across the engine. The node cap bounds every
/// materialized carrier and term arena; chain depth guards the doubly
/// exponential free-monad stages.
struct Limits {
  std::size_t node_cap = 1'000'000;
  unsigned max_chain_depth = 8;
};

}  // namespace falg
