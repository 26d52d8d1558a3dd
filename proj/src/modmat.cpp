#include "fourap/modmat.hpp"

#include <stdexcept>

namespace fourap {

ModMatrix::ModMatrix(int rows, int cols, uint32_t p) : rows_(rows), cols_(cols), p_(p), data_() {
  if (rows < 0 || cols < 0) throw std::invalid_argument("ModMatrix: negative dimensions");
  PrimeField check(p);
  data_.assign(static_cast<size_t>(rows) * cols, 0);
}

ModMatrix ModMatrix::identity(int n, uint32_t p) {
  ModMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(cols_, rows_, p_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

ModMatrix ModMatrix::mul(const ModMatrix& other) const {
  if (cols_ != other.rows_ || p_ != other.p_) throw std::invalid_argument("ModMatrix: shape mismatch in mul");
  ModMatrix out(rows_, other.cols_, p_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      uint64_t a = at(r, k);
      if (a == 0) continue;
      for (int c = 0; c < other.cols_; ++c) {
        out.at(r, c) = static_cast<uint32_t>((out.at(r, c) + a * other.at(k, c)) % p_);
      }
    }
  }
  return out;
}

std::vector<uint32_t> ModMatrix::mul_vec(const std::vector<uint32_t>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("ModMatrix: vector length mismatch");
  std::vector<uint32_t> out(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    uint64_t acc = 0;
    for (int c = 0; c < cols_; ++c) acc += static_cast<uint64_t>(at(r, c)) * v[c];
    out[r] = static_cast<uint32_t>(acc % p_);
  }
  return out;
}

bool ModMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

ModMatrix ModMatrix::rref(std::vector<int>* pivot_cols) const {
  ModMatrix m = *this;
  PrimeField f(p_);
  if (pivot_cols) pivot_cols->clear();
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int pivot = -1;
    for (int r = row; r < rows_; ++r) {
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(row, c));
    }
    uint32_t scale = f.inv(m.at(row, col));
    for (int c = 0; c < cols_; ++c) m.at(row, c) = f.mul(m.at(row, c), scale);
    for (int r = 0; r < rows_; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      uint32_t factor = m.at(r, col);
      for (int c = 0; c < cols_; ++c) {
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
      }
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++row;
  }
  return m;
}

int ModMatrix::rank() const {
  std::vector<int> pivots;
  rref(&pivots);
  return static_cast<int>(pivots.size());
}

std::vector<std::vector<uint32_t>> ModMatrix::nullspace_basis() const {
  std::vector<int> pivots;
  ModMatrix r = rref(&pivots);
  PrimeField f(p_);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<uint32_t>> basis;
  for (int free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<uint32_t> v(cols_, 0);
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = f.neg(r.at(static_cast<int>(i), free_col));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<uint32_t>> ModMatrix::solve(const std::vector<uint32_t>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("ModMatrix: rhs length mismatch");
  ModMatrix aug(rows_, cols_ + 1, p_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_) = b[r] % p_;
  }
  std::vector<int> pivots;
  ModMatrix red = aug.rref(&pivots);
  for (int c : pivots) {
    if (c == cols_) return std::nullopt;  // row [0 ... 0 | 1]: inconsistent
  }
  std::vector<uint32_t> x(cols_, 0);
  for (size_t i = 0; i < pivots.size(); ++i) {
    x[pivots[i]] = red.at(static_cast<int>(i), cols_);
  }
  return x;
}

std::optional<ModMatrix> ModMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("ModMatrix: inverse of non-square matrix");
  if (rows_ == 0) return ModMatrix(0, 0, p_);
  ModMatrix aug(rows_, 2 * cols_, p_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_ + r) = 1;
  }
  std::vector<int> pivots;
  ModMatrix red = aug.rref(&pivots);
  if (static_cast<int>(pivots.size()) < rows_ || pivots[rows_ - 1] >= cols_) return std::nullopt;
  ModMatrix inv(rows_, cols_, p_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) inv.at(r, c) = red.at(r, cols_ + c);
  return inv;
}

}  // namespace fourap
