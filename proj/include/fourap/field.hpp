#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fourap {

// Arithmetic context for the prime field F_p. The modulus is a runtime
// parameter; p must be prime, and the desk-scale range is 5 <= p <= 31.
class PrimeField {
 public:
  explicit PrimeField(uint32_t p);

  uint32_t modulus() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const { return reduce_sum(norm(a) + norm(b)); }
  uint32_t sub(uint32_t a, uint32_t b) const { return reduce_sum(norm(a) + p_ - norm(b)); }
  uint32_t neg(uint32_t a) const { return norm(a) == 0 ? 0 : p_ - norm(a); }
  uint32_t mul(uint32_t a, uint32_t b) const { return (norm(a) * norm(b)) % p_; }

  // Multiplicative inverse; throws on zero input.
  uint32_t inv(uint32_t a) const;

  uint32_t pow(uint32_t a, uint64_t e) const;

  // (p + 1) / 2, the inverse of 2; used when symmetrizing quadratic forms.
  uint32_t half() const { return (p_ + 1) / 2; }

  uint32_t norm(uint32_t a) const { return a < p_ ? a : a % p_; }

  // Normalizes a signed value into [0, p).
  uint32_t from_signed(int64_t a) const {
    int64_t r = a % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  uint32_t reduce_sum(uint32_t s) const { return s >= p_ ? s - p_ : s; }

  uint32_t p_;
};

bool is_prime(uint32_t n);

// A single residue tagged with its modulus. Mixing moduli is a contract
// violation and throws.
class FieldElement {
 public:
  FieldElement(uint32_t value, uint32_t p);

  uint32_t value() const { return value_; }
  uint32_t modulus() const { return p_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;

  bool operator==(const FieldElement& o) const { return p_ == o.p_ && value_ == o.value_; }

 private:
  void require_same_field(const FieldElement& o) const;

  uint32_t value_;
  uint32_t p_;
};

}  // namespace fourap
