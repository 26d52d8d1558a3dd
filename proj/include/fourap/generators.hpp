#pragma once

#include "fourap/quadratic_form.hpp"
#include "fourap/rng.hpp"
#include "fourap/space_function.hpp"

namespace fourap {

// Each point included independently with probability alpha.
PointSet gen_random(const AffineSpace& w, double alpha, Rng& rng);

// A uniformly random affine subspace of the given codimension inside w.
PointSet gen_subspace(const AffineSpace& w, int codim, Rng& rng);

// Level set {x in domain : form(x) = value}.
PointSet gen_quad_level_set(const QuadraticForm& form, uint32_t value);

// A random symmetric matrix of exactly the given rank over F_p.
ModMatrix random_matrix_of_rank(uint32_t p, int n, int rank, Rng& rng);

// A random quadratic form on w whose restricted rank is exactly `rank`.
QuadraticForm random_form_of_rank(const AffineSpace& w, int rank, Rng& rng);

// Greedy progression-free set: scan the points of w in a seeded random order,
// admitting a point unless it completes a nontrivial 4-term progression with
// points already admitted.
PointSet gen_ap_free_greedy(const AffineSpace& w, Rng& rng);

// Union of k random affine subspaces of codimension 1 or 2.
PointSet gen_union_subspaces(const AffineSpace& w, int k, Rng& rng);

// True when the set contains no nontrivial 4-term progression, by exhaustive
// scan over all (start, step != 0) pairs.
bool progression_free(const PointSet& a);

}  // namespace fourap
