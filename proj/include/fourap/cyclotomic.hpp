#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fourap/transform.hpp"

namespace fourap {

class QuadraticForm;
class AffineSpace;

// Exact element of Z[zeta_p], stored as integer coefficients of
// 1, zeta, ..., zeta^{p-1}. Since 1 + zeta + ... + zeta^{p-1} = 0, two
// coefficient vectors represent the same element exactly when they differ by
// a constant vector; the canonical form shifts the minimum coefficient to 0.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(uint32_t p);
  CyclotomicInt(std::vector<int64_t> coeffs, uint32_t p);

  static CyclotomicInt zero(uint32_t p) { return CyclotomicInt(p); }
  // zeta^a
  static CyclotomicInt root(uint32_t a, uint32_t p);

  uint32_t order() const { return p_; }
  const std::vector<int64_t>& coeffs() const { return coeffs_; }

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;
  // Complex conjugate: zeta^a -> zeta^{-a}.
  CyclotomicInt conjugate() const;

  CyclotomicInt canonical() const;
  bool operator==(const CyclotomicInt& o) const;

  bool is_zero() const { return *this == zero(p_); }

  // If this element is a rational integer, returns it.
  std::optional<int64_t> as_rational_integer() const;

  // |z|^2 = z * conj(z); for character sums over affine spaces this is a
  // rational integer.
  CyclotomicInt norm_squared() const { return *this * conjugate(); }

  // Numeric embedding zeta -> exp(2 pi i / p).
  cplx embed() const;

 private:
  void require_same_order(const CyclotomicInt& o) const;

  std::vector<int64_t> coeffs_;
  uint32_t p_;
};

// Exact character sum  sum_{x in space} zeta^{phi(x)}  as a cyclotomic
// integer. space must be contained in the domain of phi.
CyclotomicInt exact_character_sum(const QuadraticForm& phi, const AffineSpace& space);

}  // namespace fourap
