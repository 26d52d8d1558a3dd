#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fourap/quadratic_form.hpp"
#include "fourap/space.hpp"
#include "fourap/space_function.hpp"

namespace fourap {

// Finite partition of an affine space: a dense atom-id array over the domain
// indices, with atom ids dense in [0, atom_count).
class Factor {
 public:
  Factor(AffineSpace domain, std::vector<uint32_t> atom_of);

  static Factor trivial(const AffineSpace& domain);
  static Factor discrete(const AffineSpace& domain);
  // Relabels arbitrary labels to dense ids in order of first appearance.
  static Factor from_labels(const AffineSpace& domain, const std::vector<uint64_t>& labels);

  const AffineSpace& domain() const { return domain_; }
  uint32_t atom_count() const { return atom_count_; }
  uint32_t atom_of(uint64_t index) const { return atom_of_[index]; }
  const std::vector<uint32_t>& atom_map() const { return atom_of_; }
  std::vector<uint64_t> atom_sizes() const;

  // True when every atom of this partition lies inside one atom of coarser.
  bool refines(const Factor& coarser) const;

 private:
  AffineSpace domain_;
  std::vector<uint32_t> atom_of_;
  uint32_t atom_count_;
};

SpaceFunction conditional_expectation(const SpaceFunction& f, const Factor& b);
// ||E(f|B)||^2 in L^2 of the normalized measure on the domain.
double energy(const SpaceFunction& f, const Factor& b);
Factor join(const Factor& a, const Factor& b);

// Result of a rank-separation scan over projective coefficient combinations.
struct RankSeparation {
  bool ok;
  std::vector<uint32_t> witness_lambda;  // empty when ok
  int witness_rank;                      // -1 when ok
};

// The function on configuration space F_p^d induced by a factor-measurable
// function: values indexed by canonical configuration index, zero on
// unoccupied configurations.
struct FactorFunction {
  uint32_t p;
  int complexity;
  std::vector<cplx> values;

  bool is_real(double tol = 1e-12) const;
};

// Partition of a common domain by the joint level sets of d quadratic forms.
class QuadraticFactor {
 public:
  QuadraticFactor(AffineSpace domain, std::vector<QuadraticForm> forms);

  static QuadraticFactor trivial(const AffineSpace& domain);

  const AffineSpace& domain() const { return domain_; }
  const std::vector<QuadraticForm>& forms() const { return forms_; }
  int complexity() const { return static_cast<int>(forms_.size()); }

  // (phi_1(x), ..., phi_d(x)) as a point of F_p^d.
  Point configuration_map(const Point& x) const;
  // Canonical index of the configuration of the domain point with this index.
  uint64_t configuration_index(uint64_t domain_index) const;
  // All configuration indices in canonical domain order.
  const std::vector<uint64_t>& configuration_table() const { return config_of_; }

  // Dense-id factor; atom ids ordered by configuration index.
  Factor to_factor() const;

  // Scans all nonzero coefficient vectors up to scalars (first nonzero
  // coordinate fixed to 1) for a combination of rank < r.
  RankSeparation rank_separation_check(int r, int complexity_cap = 8) const;

  // Minimum rank over all projective combinations; domain dimension + 1 when
  // the complexity is zero (no combination exists, separation is vacuous).
  int min_combination_rank(int complexity_cap = 8) const;

  QuadraticFactor restrict_to(const AffineSpace& sub) const;
  // Same domain, forms of both factors concatenated.
  QuadraticFactor merge(const QuadraticFactor& other) const;

  FactorFunction push_to_configuration(const SpaceFunction& f, double tol = 1e-12) const;

 private:
  AffineSpace domain_;
  std::vector<QuadraticForm> forms_;
  std::vector<uint64_t> config_of_;
};

// Piece of a local factor: an affine subspace with a quadratic factor on it.
struct LocalAtom {
  AffineSpace piece;
  QuadraticFactor factor;
};

// Partition of a domain into affine pieces, each carrying its own quadratic
// factor. The glued partitions: level-1 atoms are the pieces themselves,
// level-2 atoms are the factor atoms within each piece.
class LocalQuadraticFactor {
 public:
  LocalQuadraticFactor(AffineSpace domain, std::vector<LocalAtom> atoms);

  static LocalQuadraticFactor trivial(const AffineSpace& domain);

  const AffineSpace& domain() const { return domain_; }
  const std::vector<LocalAtom>& atoms() const { return atoms_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }

  int max_codim() const;
  int max_complexity() const;

  // Piece id of each domain point.
  Factor level1() const;
  // Glued refinement: (piece, configuration within the piece).
  Factor level2() const;

  // Verifies the partition property and the codimension bound; throws on
  // violation with a description.
  void validate(int codim_bound) const;

 private:
  AffineSpace domain_;
  std::vector<LocalAtom> atoms_;
};

}  // namespace fourap
