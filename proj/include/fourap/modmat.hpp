#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fourap/field.hpp"

namespace fourap {

// Dense matrix over F_p, row-major. Sizes here are tiny (at most the ambient
// dimension, <= 24), so plain Gaussian elimination is used throughout.
class ModMatrix {
 public:
  ModMatrix(int rows, int cols, uint32_t p);
  static ModMatrix identity(int n, uint32_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  uint32_t modulus() const { return p_; }

  uint32_t& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  uint32_t at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  ModMatrix transpose() const;
  ModMatrix mul(const ModMatrix& other) const;
  std::vector<uint32_t> mul_vec(const std::vector<uint32_t>& v) const;

  bool is_symmetric() const;

  // Reduced row echelon form; returns pivot column indices in order.
  ModMatrix rref(std::vector<int>* pivot_cols = nullptr) const;

  int rank() const;

  // Basis of { x : A x = 0 }, one vector per column of the returned list.
  std::vector<std::vector<uint32_t>> nullspace_basis() const;

  // One solution of A x = b, if the system is consistent.
  std::optional<std::vector<uint32_t>> solve(const std::vector<uint32_t>& b) const;

  // Inverse of a square matrix, if it exists.
  std::optional<ModMatrix> inverse() const;

  bool operator==(const ModMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
  }

 private:
  int rows_;
  int cols_;
  uint32_t p_;
  std::vector<uint32_t> data_;
};

}  // namespace fourap
