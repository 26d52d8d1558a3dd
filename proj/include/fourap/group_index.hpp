#pragma once

#include <cstdint>
#include <vector>

namespace fourap {

// Index arithmetic for the group F_p^d under the canonical little-endian
// indexing. Small groups get a full addition table so that inner loops are a
// single lookup; larger ones fall back to digit arithmetic.
class GroupIndex {
 public:
  GroupIndex(uint32_t p, int dim);

  uint32_t modulus() const { return p_; }
  int dim() const { return dim_; }
  uint64_t size() const { return size_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    if (!table_.empty()) return table_[static_cast<size_t>(a) * size_ + b];
    return add_digits(a, b);
  }

  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  // Index of k * x for a scalar k.
  uint32_t scale(uint32_t k, uint32_t a) const;

  std::vector<uint32_t> digits(uint32_t a) const;
  uint32_t from_digits(const std::vector<uint32_t>& d) const;

  // Dot product of the digit vectors of a and b, in F_p.
  uint32_t dot(uint32_t a, uint32_t b) const;

  // Permutation x -> x + h as a flat array, for a fixed h.
  std::vector<uint32_t> translation(uint32_t h) const;
  // Same permutation written into a caller-provided buffer of length size().
  void translation_into(uint32_t h, uint32_t* out) const;

 private:
  uint32_t add_digits(uint32_t a, uint32_t b) const;

  uint32_t p_;
  int dim_;
  uint64_t size_;
  std::vector<uint64_t> pow_;      // p^j
  std::vector<uint32_t> table_;    // full addition table when size_ <= kTableLimit
  static constexpr uint64_t kTableLimit = 1024;
};

}  // namespace fourap
