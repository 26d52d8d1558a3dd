#include "fourap/group_index.hpp"

#include <stdexcept>

namespace fourap {

GroupIndex::GroupIndex(uint32_t p, int dim) : p_(p), dim_(dim), size_(1) {
  if (p < 2) throw std::invalid_argument("GroupIndex: modulus too small");
  if (dim < 0) throw std::invalid_argument("GroupIndex: negative dimension");
  pow_.resize(dim + 1);
  pow_[0] = 1;
  for (int j = 0; j < dim; ++j) {
    pow_[j + 1] = pow_[j] * p;
  }
  size_ = pow_[dim];
  if (size_ > (uint64_t(1) << 32)) throw std::invalid_argument("GroupIndex: group too large");
  if (size_ <= kTableLimit) {
    table_.resize(size_ * size_);
    for (uint64_t a = 0; a < size_; ++a) {
      for (uint64_t b = 0; b < size_; ++b) {
        table_[a * size_ + b] = add_digits(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
      }
    }
  }
}

uint32_t GroupIndex::add_digits(uint32_t a, uint32_t b) const {
  uint32_t out = 0;
  for (int j = 0; j < dim_; ++j) {
    uint32_t da = static_cast<uint32_t>((a / pow_[j]) % p_);
    uint32_t db = static_cast<uint32_t>((b / pow_[j]) % p_);
    uint32_t s = da + db;
    if (s >= p_) s -= p_;
    out += static_cast<uint32_t>(s * pow_[j]);
  }
  return out;
}

uint32_t GroupIndex::neg(uint32_t a) const {
  uint32_t out = 0;
  for (int j = 0; j < dim_; ++j) {
    uint32_t d = static_cast<uint32_t>((a / pow_[j]) % p_);
    uint32_t nd = d == 0 ? 0 : p_ - d;
    out += static_cast<uint32_t>(nd * pow_[j]);
  }
  return out;
}

uint32_t GroupIndex::scale(uint32_t k, uint32_t a) const {
  k %= p_;
  uint32_t out = 0;
  for (int j = 0; j < dim_; ++j) {
    uint32_t d = static_cast<uint32_t>((a / pow_[j]) % p_);
    out += static_cast<uint32_t>(((d * k) % p_) * pow_[j]);
  }
  return out;
}

std::vector<uint32_t> GroupIndex::digits(uint32_t a) const {
  std::vector<uint32_t> d(dim_);
  for (int j = 0; j < dim_; ++j) d[j] = static_cast<uint32_t>((a / pow_[j]) % p_);
  return d;
}

uint32_t GroupIndex::from_digits(const std::vector<uint32_t>& d) const {
  if (static_cast<int>(d.size()) != dim_) throw std::invalid_argument("GroupIndex: digit count mismatch");
  uint32_t out = 0;
  for (int j = 0; j < dim_; ++j) out += static_cast<uint32_t>((d[j] % p_) * pow_[j]);
  return out;
}

uint32_t GroupIndex::dot(uint32_t a, uint32_t b) const {
  uint64_t acc = 0;
  for (int j = 0; j < dim_; ++j) {
    uint64_t da = (a / pow_[j]) % p_;
    uint64_t db = (b / pow_[j]) % p_;
    acc += da * db;
  }
  return static_cast<uint32_t>(acc % p_);
}

std::vector<uint32_t> GroupIndex::translation(uint32_t h) const {
  std::vector<uint32_t> perm(size_);
  translation_into(h, perm.data());
  return perm;
}

void GroupIndex::translation_into(uint32_t h, uint32_t* out) const {
  if (!table_.empty()) {
    const uint32_t* row = table_.data() + static_cast<size_t>(h) * size_;
    for (uint64_t x = 0; x < size_; ++x) out[x] = row[x];
    return;
  }
  for (uint64_t x = 0; x < size_; ++x) out[x] = add_digits(static_cast<uint32_t>(x), h);
}

}  // namespace fourap
