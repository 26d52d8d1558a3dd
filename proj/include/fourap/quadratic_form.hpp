#pragma once

#include <cstdint>
#include <vector>

#include "fourap/modmat.hpp"
#include "fourap/space.hpp"

namespace fourap {

// Coefficients of a form written in the basis coordinates of its domain:
// phi(w + B t) = t^T A t + b^T t + c.
struct CoefficientForm {
  ModMatrix a;
  std::vector<uint32_t> b;
  uint32_t c;
};

// Quadratic function phi(x) = x^T M x + r^T x + c on an affine domain
// W <= F_p^n, with M symmetric (enforced; builders symmetrize using the
// inverse of 2). The rank of phi is the rank of the quadratic part restricted
// to the direction space of the domain, computed in the domain basis; it is
// evaluated eagerly at construction, so instances are immutable and safe to
// share.
class QuadraticForm {
 public:
  QuadraticForm(AffineSpace domain, ModMatrix m, std::vector<uint32_t> r, uint32_t c);

  // Builds from possibly asymmetric monomial coefficients: the x_i x_j
  // coefficient matrix is symmetrized as (Q + Q^T) / 2.
  static QuadraticForm from_monomials(AffineSpace domain, const ModMatrix& q,
                                      std::vector<uint32_t> r, uint32_t c);

  static QuadraticForm zero(AffineSpace domain);

  // Constructs the ambient representation of a form specified in the domain's
  // basis coordinates, agreeing with t -> t^T A t + b^T t + c on the domain.
  static QuadraticForm from_coefficient_form(const AffineSpace& domain, const ModMatrix& a,
                                             const std::vector<uint32_t>& b, uint32_t c);

  const AffineSpace& domain() const { return domain_; }
  const ModMatrix& matrix() const { return m_; }
  const std::vector<uint32_t>& linear() const { return r_; }
  uint32_t constant() const { return c_; }

  uint32_t evaluate(const Point& x) const;
  uint32_t evaluate_at(uint64_t domain_index) const;
  // All values in canonical domain order.
  std::vector<uint32_t> values() const;

  // Coefficients of the same function in the domain's basis coordinates.
  CoefficientForm coefficient_form() const;

  // Rank of the quadratic part restricted to the domain's direction space.
  int rank() const { return rank_; }

  // Same function with a smaller domain; sub must be contained in the domain.
  QuadraticForm restrict_to(const AffineSpace& sub) const;

  // this + k * other, on the shared domain.
  QuadraticForm add_scaled(const QuadraticForm& other, uint32_t k) const;

  // True when the linear part lies in the image of the quadratic part, both
  // restricted to the domain (in basis coordinates: b in Im(A)). The averaged
  // character sum has magnitude p^{-rank/2} exactly when this holds, and
  // vanishes otherwise.
  bool linear_part_in_image() const;

  // |E_{x in W} e_F(phi(x))|.
  double gauss_sum_magnitude() const;

 private:
  AffineSpace domain_;
  ModMatrix m_;
  std::vector<uint32_t> r_;
  uint32_t c_;
  int rank_;
};

}  // namespace fourap
