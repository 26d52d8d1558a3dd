#pragma once

#include "fourap/rng.hpp"
#include "fourap/space_function.hpp"
#include "fourap/quadratic_form.hpp"

namespace fourap {

// One piece of an oracle answer: an affine sub-piece of the queried domain
// together with a quadratic phase on it and the achieved correlation
// |E_piece f * conj(e(phase))|.
struct OraclePiece {
  AffineSpace piece;
  QuadraticForm phase;
  double correlation;
};

// The pieces partition the queried domain; score is the size-weighted mean
// correlation across them.
struct OracleResult {
  std::vector<OraclePiece> pieces;
  double score;
};

enum class OracleKind { automatic, exhaustive, derivative_fit };

// Scans every quadratic phase on the domain (all symmetric coefficient
// matrices; the best linear part is read off a Fourier transform) and returns
// the global correlation maximizer. Cost grows as p^(d(d+1)/2); the call
// refuses domains where that count exceeds enumeration_cap.
OracleResult inverse_u3_exhaustive(const SpaceFunction& f,
                                   uint64_t enumeration_cap = 9765625);

// Heuristic: estimates the Hessian from the peak frequencies of derivative
// transforms (random minimal subsets voted by peak weight), reads the linear
// part off a Fourier transform, and falls back to the best pure linear phase.
// When the best correlation on the whole domain is below weak_threshold it
// bisects along the strongest linear frequency and recurses, up to depth_cap.
OracleResult inverse_u3_derivative_fit(const SpaceFunction& f, Rng& rng,
                                       int trials = 20, int depth_cap = 2,
                                       double weak_threshold = 0.05);

// automatic: exhaustive when the symmetric-matrix count fits under
// exhaustive_cap, derivative_fit otherwise.
OracleResult invoke_oracle(OracleKind kind, const SpaceFunction& f, Rng& rng,
                           int trials = 20, uint64_t exhaustive_cap = 78125);

}  // namespace fourap
