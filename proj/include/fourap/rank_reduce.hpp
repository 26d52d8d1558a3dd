#pragma once

#include "fourap/factor.hpp"

namespace fourap {

// Repairs a quadratic factor whose defining forms have low-rank combinations:
// partitions the domain into affine pieces (each of codimension at most
// d*r + d^2 + d, d the input complexity) and returns, on each piece, a
// subfactor of at most d surviving forms whose nonzero combinations all have
// rank >= r. The glued level-2 partition refines the input factor. All three
// guarantees are re-verified before returning; violations throw.
LocalQuadraticFactor rank_reduce(const QuadraticFactor& b, int r, int enumeration_cap = 8);

}  // namespace fourap
