#include "fourap/cyclotomic.hpp"

#include <algorithm>
#include <stdexcept>

#include "fourap/quadratic_form.hpp"
#include "fourap/space.hpp"

namespace fourap {

CyclotomicInt::CyclotomicInt(uint32_t p) : coeffs_(p, 0), p_(p) {
  if (p < 2) throw std::invalid_argument("CyclotomicInt: order too small");
}

CyclotomicInt::CyclotomicInt(std::vector<int64_t> coeffs, uint32_t p) : coeffs_(std::move(coeffs)), p_(p) {
  if (coeffs_.size() != p) throw std::invalid_argument("CyclotomicInt: coefficient count must equal p");
}

CyclotomicInt CyclotomicInt::root(uint32_t a, uint32_t p) {
  CyclotomicInt z(p);
  z.coeffs_[a % p] = 1;
  return z;
}

void CyclotomicInt::require_same_order(const CyclotomicInt& o) const {
  if (p_ != o.p_) throw std::invalid_argument("CyclotomicInt: mixed root orders");
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  require_same_order(o);
  CyclotomicInt out(p_);
  for (uint32_t i = 0; i < p_; ++i) out.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return out;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
  require_same_order(o);
  CyclotomicInt out(p_);
  for (uint32_t i = 0; i < p_; ++i) out.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  return out;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  require_same_order(o);
  // Cyclic convolution: zeta^a zeta^b = zeta^{a+b mod p}.
  CyclotomicInt out(p_);
  for (uint32_t i = 0; i < p_; ++i) {
    if (coeffs_[i] == 0) continue;
    for (uint32_t j = 0; j < p_; ++j) {
      out.coeffs_[(i + j) % p_] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return out;
}

CyclotomicInt CyclotomicInt::conjugate() const {
  CyclotomicInt out(p_);
  for (uint32_t i = 0; i < p_; ++i) out.coeffs_[(p_ - i) % p_] = coeffs_[i];
  return out;
}

CyclotomicInt CyclotomicInt::canonical() const {
  CyclotomicInt out = *this;
  int64_t m = *std::min_element(out.coeffs_.begin(), out.coeffs_.end());
  for (auto& c : out.coeffs_) c -= m;
  return out;
}

bool CyclotomicInt::operator==(const CyclotomicInt& o) const {
  if (p_ != o.p_) return false;
  int64_t shift = coeffs_[0] - o.coeffs_[0];
  for (uint32_t i = 0; i < p_; ++i) {
    if (coeffs_[i] - o.coeffs_[i] != shift) return false;
  }
  return true;
}

std::optional<int64_t> CyclotomicInt::as_rational_integer() const {
  // Canonical form of an integer k is k at zeta^0 and a flat tail elsewhere.
  for (uint32_t i = 2; i < p_; ++i) {
    if (coeffs_[i] != coeffs_[1]) return std::nullopt;
  }
  return coeffs_[0] - coeffs_[1];
}

cplx CyclotomicInt::embed() const {
  cplx acc(0.0, 0.0);
  for (uint32_t i = 0; i < p_; ++i) {
    if (coeffs_[i] != 0) acc += static_cast<double>(coeffs_[i]) * character(i, p_);
  }
  return acc;
}

CyclotomicInt exact_character_sum(const QuadraticForm& phi, const AffineSpace& space) {
  if (!phi.domain().contains_space(space)) {
    throw std::invalid_argument("exact_character_sum: space not contained in form domain");
  }
  uint32_t p = space.modulus();
  std::vector<int64_t> counts(p, 0);
  for (uint64_t i = 0; i < space.size(); ++i) {
    counts[phi.evaluate(space.point_at(i))] += 1;
  }
  return CyclotomicInt(std::move(counts), p);
}

}  // namespace fourap
