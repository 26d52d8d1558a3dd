#include "fourap/field.hpp"

namespace fourap {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
  if (p < 5) throw std::invalid_argument("PrimeField: modulus must be at least 5 (progressions of length 4 need distinct terms)");
  if (p > 31) throw std::invalid_argument("PrimeField: modulus above 31 is outside the supported range");
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint32_t base = norm(a);
  uint32_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

uint32_t PrimeField::inv(uint32_t a) const {
  uint32_t v = norm(a);
  if (v == 0) throw std::domain_error("PrimeField: zero has no inverse");
  return pow(v, p_ - 2);
}

FieldElement::FieldElement(uint32_t value, uint32_t p) : value_(0), p_(p) {
  PrimeField f(p);
  value_ = f.norm(value);
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (p_ != o.p_) {
    throw std::invalid_argument("FieldElement: mixed moduli " + std::to_string(p_) + " and " + std::to_string(o.p_));
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(PrimeField(p_).add(value_, o.value_), p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(PrimeField(p_).sub(value_, o.value_), p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(PrimeField(p_).mul(value_, o.value_), p_);
}

FieldElement FieldElement::operator-() const { return FieldElement(PrimeField(p_).neg(value_), p_); }

FieldElement FieldElement::inverse() const { return FieldElement(PrimeField(p_).inv(value_), p_); }

}  // namespace fourap
