#pragma once

#include <cstdint>
#include <vector>

#include "fourap/space.hpp"
#include "fourap/transform.hpp"

namespace fourap {

// Complex-valued function on an affine space, stored in canonical domain
// order. The bounded flag asserts |f| <= 1 (checked on construction).
class SpaceFunction {
 public:
  SpaceFunction(AffineSpace domain, std::vector<cplx> values, bool bounded = false);

  static SpaceFunction constant(const AffineSpace& domain, cplx value);
  static SpaceFunction indicator(const AffineSpace& domain, const std::vector<uint8_t>& member);

  const AffineSpace& domain() const { return domain_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](uint64_t i) const { return values_[i]; }
  bool bounded() const { return bounded_; }
  uint64_t size() const { return values_.size(); }

  cplx mean() const;
  bool is_real(double tol = 1e-12) const;

  SpaceFunction operator-(const SpaceFunction& o) const;
  SpaceFunction operator+(const SpaceFunction& o) const;
  SpaceFunction scaled(cplx k) const;

  // Values at the points of sub, which must be contained in the domain.
  SpaceFunction restrict_to(const AffineSpace& sub) const;

 private:
  AffineSpace domain_;
  std::vector<cplx> values_;
  bool bounded_;
};

// Subset of an affine space as a dense membership mask plus the index list.
class PointSet {
 public:
  PointSet(AffineSpace domain, std::vector<uint8_t> member);
  static PointSet from_indices(AffineSpace domain, const std::vector<uint64_t>& indices);

  const AffineSpace& domain() const { return domain_; }
  const std::vector<uint8_t>& mask() const { return member_; }
  bool contains_index(uint64_t i) const { return member_[i] != 0; }
  uint64_t count() const { return count_; }
  double density() const;
  std::vector<uint64_t> indices() const;

  SpaceFunction indicator() const;
  // Membership mask re-indexed over a subspace of the domain.
  PointSet restrict_to(const AffineSpace& sub) const;

 private:
  AffineSpace domain_;
  std::vector<uint8_t> member_;
  uint64_t count_;
};

}  // namespace fourap
