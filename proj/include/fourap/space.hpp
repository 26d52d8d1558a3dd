#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fourap/modmat.hpp"

namespace fourap {

// A point of F_p^n. Coordinates are residues in [0, p).
class Point {
 public:
  Point(std::vector<uint32_t> coords, uint32_t p);

  uint32_t modulus() const { return p_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  uint32_t operator[](int i) const { return coords_[i]; }
  const std::vector<uint32_t>& coords() const { return coords_; }

  // Canonical index: little-endian mixed radix, coordinate 0 least significant.
  uint64_t canonical_index() const;
  static Point from_index(uint64_t index, int dim, uint32_t p);

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point scaled(uint32_t k) const;

  bool operator==(const Point& o) const { return p_ == o.p_ && coords_ == o.coords_; }

 private:
  std::vector<uint32_t> coords_;
  uint32_t p_;
};

// Affine subspace W = w + span(b_1, ..., b_dim) of F_p^n, stored as an
// independent basis plus a translate. The basis fixes a coordinate system:
// the point with coefficients (t_0, ..., t_{dim-1}) has canonical index
// sum t_j p^j, so index 0 is the translate itself.
class AffineSpace {
 public:
  static constexpr uint64_t kDefaultMaxPoints = uint64_t(1) << 24;

  AffineSpace(uint32_t p, int ambient_dim, std::vector<std::vector<uint32_t>> basis,
              std::vector<uint32_t> translate, uint64_t max_points = kDefaultMaxPoints);

  static AffineSpace full(uint32_t p, int ambient_dim, uint64_t max_points = kDefaultMaxPoints);

  uint32_t modulus() const { return p_; }
  int ambient_dim() const { return n_; }
  int dim() const { return dim_; }
  int codim() const { return n_ - dim_; }
  uint64_t size() const { return size_; }
  const ModMatrix& basis() const { return basis_; }
  std::vector<uint32_t> basis_vector(int j) const;
  const std::vector<uint32_t>& translate() const { return translate_; }

  Point point_at(uint64_t index) const;
  Point point_from_coefficients(const std::vector<uint32_t>& t) const;
  uint64_t ambient_index_at(uint64_t index) const;

  bool contains(const Point& x) const;
  // Coefficient vector t with x = w + sum t_j b_j; throws if x is not in W.
  std::vector<uint32_t> coefficients_of(const Point& x) const;
  uint64_t index_of(const Point& x) const;

  std::vector<Point> enumerate() const;

  // True if other is a subset of this space (as a point set).
  bool contains_space(const AffineSpace& other) const;
  // dim(parent) - dim(this); throws unless parent contains this space.
  int codim_in(const AffineSpace& parent) const;
  bool same_point_set(const AffineSpace& other) const;

  // Solution set { x in W : <normal, x> = value }, the intersection with an
  // ambient affine hyperplane. nullopt means the intersection is empty.
  std::optional<AffineSpace> intersect_with_hyperplane(const std::vector<uint32_t>& normal,
                                                       uint32_t value) const;

  // Solution set { w + B t : <g, t> = rhs } for a linear functional g given in
  // basis coordinates. nullopt means no solutions.
  std::optional<AffineSpace> cut_by_coefficient_form(const std::vector<uint32_t>& g,
                                                     uint32_t rhs) const;

  // w + ker(M restricted to the direction space), for a symmetric ambient
  // matrix M. The codimension of the result inside this space equals the rank
  // of B^T M B, the matrix of the restricted form in basis coordinates.
  AffineSpace kernel_subspace(const ModMatrix& m) const;

  // Restriction of M to basis coordinates: B^T M B (dim x dim).
  ModMatrix restrict_symmetric(const ModMatrix& m) const;

  // Basis vectors of this space extending sub's direction space to this
  // space's direction space. sub must be contained in this space.
  std::vector<std::vector<uint32_t>> complement_directions(const AffineSpace& sub) const;

  // Structural equality: identical basis and translate, hence identical
  // indexing. Use same_point_set for geometric equality.
  bool operator==(const AffineSpace& o) const {
    return p_ == o.p_ && n_ == o.n_ && basis_ == o.basis_ && translate_ == o.translate_;
  }

 private:
  std::optional<std::vector<uint32_t>> try_coefficients(const Point& x) const;

  uint32_t p_;
  int n_;
  int dim_;
  ModMatrix basis_;     // dim x n, rows are basis vectors
  std::vector<uint32_t> translate_;
  uint64_t size_;
  std::vector<int> pivot_cols_;  // dim coordinate positions with invertible basis minor
  ModMatrix solver_;             // inverse of basis[:, pivot_cols], for coefficient recovery
  uint64_t max_points_;
};

// Ambient canonical index of every point of the space, in canonical order.
std::vector<uint32_t> ambient_indices(const AffineSpace& space);

}  // namespace fourap
