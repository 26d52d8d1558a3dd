#include "fourap/space.hpp"

#include <stdexcept>
#include <string>

namespace fourap {

Point::Point(std::vector<uint32_t> coords, uint32_t p) : coords_(std::move(coords)), p_(p) {
  PrimeField f(p);
  for (auto& c : coords_) c = f.norm(c);
}

uint64_t Point::canonical_index() const {
  uint64_t idx = 0;
  uint64_t scale = 1;
  for (size_t i = 0; i < coords_.size(); ++i) {
    idx += coords_[i] * scale;
    scale *= p_;
  }
  return idx;
}

Point Point::from_index(uint64_t index, int dim, uint32_t p) {
  std::vector<uint32_t> coords(dim);
  for (int i = 0; i < dim; ++i) {
    coords[i] = static_cast<uint32_t>(index % p);
    index /= p;
  }
  if (index != 0) throw std::out_of_range("Point::from_index: index exceeds p^dim");
  return Point(std::move(coords), p);
}

Point Point::operator+(const Point& o) const {
  if (p_ != o.p_ || coords_.size() != o.coords_.size()) throw std::invalid_argument("Point: mismatched spaces in +");
  PrimeField f(p_);
  std::vector<uint32_t> out(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i) out[i] = f.add(coords_[i], o.coords_[i]);
  return Point(std::move(out), p_);
}

Point Point::operator-(const Point& o) const {
  if (p_ != o.p_ || coords_.size() != o.coords_.size()) throw std::invalid_argument("Point: mismatched spaces in -");
  PrimeField f(p_);
  std::vector<uint32_t> out(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i) out[i] = f.sub(coords_[i], o.coords_[i]);
  return Point(std::move(out), p_);
}

Point Point::scaled(uint32_t k) const {
  PrimeField f(p_);
  std::vector<uint32_t> out(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i) out[i] = f.mul(coords_[i], k);
  return Point(std::move(out), p_);
}

namespace {

uint64_t checked_pow(uint32_t p, int dim, uint64_t cap) {
  uint64_t size = 1;
  for (int i = 0; i < dim; ++i) {
    size *= p;
    if (size > cap) {
      throw std::invalid_argument("AffineSpace: p^dim exceeds the point cap (" + std::to_string(cap) + ")");
    }
  }
  return size;
}

}  // namespace

AffineSpace::AffineSpace(uint32_t p, int ambient_dim, std::vector<std::vector<uint32_t>> basis,
                         std::vector<uint32_t> translate, uint64_t max_points)
    : p_(p),
      n_(ambient_dim),
      dim_(static_cast<int>(basis.size())),
      basis_(static_cast<int>(basis.size()), ambient_dim, p),
      translate_(std::move(translate)),
      size_(0),
      solver_(0, 0, p),
      max_points_(max_points) {
  PrimeField f(p);
  if (ambient_dim < 0 || ambient_dim > 24) throw std::invalid_argument("AffineSpace: ambient dimension out of range");
  if (dim_ > ambient_dim) throw std::invalid_argument("AffineSpace: more basis vectors than ambient dimension");
  if (static_cast<int>(translate_.size()) != ambient_dim) throw std::invalid_argument("AffineSpace: translate length mismatch");
  for (auto& c : translate_) c = f.norm(c);
  for (int r = 0; r < dim_; ++r) {
    if (static_cast<int>(basis[r].size()) != ambient_dim) throw std::invalid_argument("AffineSpace: basis vector length mismatch");
    for (int c = 0; c < ambient_dim; ++c) basis_.at(r, c) = f.norm(basis[r][c]);
  }
  size_ = checked_pow(p, dim_, max_points_);

  basis_.rref(&pivot_cols_);
  if (static_cast<int>(pivot_cols_.size()) != dim_) throw std::invalid_argument("AffineSpace: basis vectors are dependent");

  ModMatrix minor(dim_, dim_, p);
  for (int r = 0; r < dim_; ++r)
    for (int k = 0; k < dim_; ++k) minor.at(r, k) = basis_.at(r, pivot_cols_[k]);
  auto inv = minor.inverse();
  if (!inv) throw std::logic_error("AffineSpace: pivot minor not invertible");
  solver_ = std::move(*inv);
}

AffineSpace AffineSpace::full(uint32_t p, int ambient_dim, uint64_t max_points) {
  std::vector<std::vector<uint32_t>> basis(ambient_dim, std::vector<uint32_t>(ambient_dim, 0));
  for (int i = 0; i < ambient_dim; ++i) basis[i][i] = 1;
  return AffineSpace(p, ambient_dim, std::move(basis), std::vector<uint32_t>(ambient_dim, 0), max_points);
}

std::vector<uint32_t> AffineSpace::basis_vector(int j) const {
  std::vector<uint32_t> v(n_);
  for (int c = 0; c < n_; ++c) v[c] = basis_.at(j, c);
  return v;
}

Point AffineSpace::point_at(uint64_t index) const {
  if (index >= size_) throw std::out_of_range("AffineSpace: point index out of range");
  std::vector<uint32_t> t(dim_);
  for (int j = 0; j < dim_; ++j) {
    t[j] = static_cast<uint32_t>(index % p_);
    index /= p_;
  }
  return point_from_coefficients(t);
}

Point AffineSpace::point_from_coefficients(const std::vector<uint32_t>& t) const {
  if (static_cast<int>(t.size()) != dim_) throw std::invalid_argument("AffineSpace: coefficient length mismatch");
  std::vector<uint32_t> coords = translate_;
  for (int j = 0; j < dim_; ++j) {
    uint64_t tj = t[j] % p_;
    if (tj == 0) continue;
    for (int c = 0; c < n_; ++c) {
      coords[c] = static_cast<uint32_t>((coords[c] + tj * basis_.at(j, c)) % p_);
    }
  }
  return Point(std::move(coords), p_);
}

uint64_t AffineSpace::ambient_index_at(uint64_t index) const { return point_at(index).canonical_index(); }

std::optional<std::vector<uint32_t>> AffineSpace::try_coefficients(const Point& x) const {
  if (x.modulus() != p_ || x.dim() != n_) return std::nullopt;
  PrimeField f(p_);
  std::vector<uint32_t> delta(n_);
  for (int c = 0; c < n_; ++c) delta[c] = f.sub(x[c], translate_[c]);
  // t = delta[pivots] * solver, then verify on all coordinates.
  std::vector<uint32_t> t(dim_, 0);
  for (int j = 0; j < dim_; ++j) {
    uint64_t acc = 0;
    for (int k = 0; k < dim_; ++k) acc += static_cast<uint64_t>(delta[pivot_cols_[k]]) * solver_.at(k, j);
    t[j] = static_cast<uint32_t>(acc % p_);
  }
  for (int c = 0; c < n_; ++c) {
    uint64_t acc = 0;
    for (int j = 0; j < dim_; ++j) acc += static_cast<uint64_t>(t[j]) * basis_.at(j, c);
    if (acc % p_ != delta[c]) return std::nullopt;
  }
  return t;
}

bool AffineSpace::contains(const Point& x) const { return try_coefficients(x).has_value(); }

std::vector<uint32_t> AffineSpace::coefficients_of(const Point& x) const {
  auto t = try_coefficients(x);
  if (!t) throw std::invalid_argument("AffineSpace: point not in space");
  return *t;
}

uint64_t AffineSpace::index_of(const Point& x) const {
  auto t = coefficients_of(x);
  uint64_t idx = 0;
  uint64_t scale = 1;
  for (int j = 0; j < dim_; ++j) {
    idx += t[j] * scale;
    scale *= p_;
  }
  return idx;
}

std::vector<Point> AffineSpace::enumerate() const {
  std::vector<Point> pts;
  pts.reserve(size_);
  for (uint64_t i = 0; i < size_; ++i) pts.push_back(point_at(i));
  return pts;
}

bool AffineSpace::contains_space(const AffineSpace& other) const {
  if (other.p_ != p_ || other.n_ != n_) return false;
  if (!contains(Point(other.translate_, p_))) return false;
  // Each direction of other must lie in this direction space.
  for (int j = 0; j < other.dim_; ++j) {
    std::vector<uint32_t> shifted(n_);
    PrimeField f(p_);
    for (int c = 0; c < n_; ++c) shifted[c] = f.add(translate_[c], other.basis_.at(j, c));
    if (!contains(Point(shifted, p_))) return false;
  }
  return true;
}

int AffineSpace::codim_in(const AffineSpace& parent) const {
  if (!parent.contains_space(*this)) throw std::invalid_argument("AffineSpace: codim_in of non-subspace");
  return parent.dim_ - dim_;
}

bool AffineSpace::same_point_set(const AffineSpace& other) const {
  return dim_ == other.dim_ && other.p_ == p_ && other.n_ == n_ && contains_space(other);
}

std::optional<AffineSpace> AffineSpace::cut_by_coefficient_form(const std::vector<uint32_t>& g,
                                                               uint32_t rhs) const {
  if (static_cast<int>(g.size()) != dim_) throw std::invalid_argument("AffineSpace: linear form length mismatch");
  PrimeField f(p_);
  uint32_t target = f.norm(rhs);
  int lead = -1;
  for (int j = 0; j < dim_; ++j) {
    if (f.norm(g[j]) != 0) {
      lead = j;
      break;
    }
  }
  if (lead < 0) {
    if (target != 0) return std::nullopt;
    return *this;
  }
  uint32_t lead_inv = f.inv(f.norm(g[lead]));
  // Solutions: t_lead = lead_inv * (target - sum_{j != lead} g_j t_j).
  std::vector<std::vector<uint32_t>> new_basis;
  for (int j = 0; j < dim_; ++j) {
    if (j == lead) continue;
    uint32_t coeff = f.neg(f.mul(lead_inv, f.norm(g[j])));
    std::vector<uint32_t> v(n_);
    for (int c = 0; c < n_; ++c) v[c] = f.add(basis_.at(j, c), f.mul(coeff, basis_.at(lead, c)));
    new_basis.push_back(std::move(v));
  }
  uint32_t t_lead = f.mul(lead_inv, target);
  std::vector<uint32_t> new_translate(n_);
  for (int c = 0; c < n_; ++c) new_translate[c] = f.add(translate_[c], f.mul(t_lead, basis_.at(lead, c)));
  return AffineSpace(p_, n_, std::move(new_basis), std::move(new_translate), max_points_);
}

std::optional<AffineSpace> AffineSpace::intersect_with_hyperplane(const std::vector<uint32_t>& normal,
                                                                  uint32_t value) const {
  if (static_cast<int>(normal.size()) != n_) throw std::invalid_argument("AffineSpace: normal length mismatch");
  PrimeField f(p_);
  std::vector<uint32_t> g(dim_, 0);
  for (int j = 0; j < dim_; ++j) {
    uint64_t acc = 0;
    for (int c = 0; c < n_; ++c) acc += static_cast<uint64_t>(normal[c] % p_) * basis_.at(j, c);
    g[j] = static_cast<uint32_t>(acc % p_);
  }
  uint64_t base = 0;
  for (int c = 0; c < n_; ++c) base += static_cast<uint64_t>(normal[c] % p_) * translate_[c];
  uint32_t rhs = f.sub(f.norm(value), static_cast<uint32_t>(base % p_));
  return cut_by_coefficient_form(g, rhs);
}

ModMatrix AffineSpace::restrict_symmetric(const ModMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_ || m.modulus() != p_) throw std::invalid_argument("AffineSpace: matrix shape mismatch");
  // B M B^T with B the dim x n row-basis matrix: entry (j, k) = b_j . M b_k.
  return basis_.mul(m).mul(basis_.transpose());
}

AffineSpace AffineSpace::kernel_subspace(const ModMatrix& m) const {
  if (!m.is_symmetric()) throw std::invalid_argument("AffineSpace: kernel_subspace needs a symmetric matrix");
  ModMatrix a = restrict_symmetric(m);
  auto null_basis = a.nullspace_basis();
  PrimeField f(p_);
  std::vector<std::vector<uint32_t>> new_basis;
  for (const auto& k : null_basis) {
    std::vector<uint32_t> v(n_, 0);
    for (int j = 0; j < dim_; ++j) {
      if (k[j] == 0) continue;
      for (int c = 0; c < n_; ++c) {
        v[c] = static_cast<uint32_t>((v[c] + static_cast<uint64_t>(k[j]) * basis_.at(j, c)) % p_);
      }
    }
    new_basis.push_back(std::move(v));
  }
  return AffineSpace(p_, n_, std::move(new_basis), translate_, max_points_);
}

std::vector<std::vector<uint32_t>> AffineSpace::complement_directions(const AffineSpace& sub) const {
  if (!contains_space(sub)) throw std::invalid_argument("AffineSpace: complement_directions of non-subspace");
  ModMatrix stack(sub.dim() + dim_, n_, p_);
  for (int r = 0; r < sub.dim(); ++r)
    for (int c = 0; c < n_; ++c) stack.at(r, c) = sub.basis().at(r, c);
  std::vector<std::vector<uint32_t>> out;
  int current_rank = sub.dim();
  for (int j = 0; j < dim_; ++j) {
    for (int c = 0; c < n_; ++c) stack.at(current_rank, c) = basis_.at(j, c);
    ModMatrix probe(current_rank + 1, n_, p_);
    for (int r = 0; r <= current_rank; ++r)
      for (int c = 0; c < n_; ++c) probe.at(r, c) = stack.at(r, c);
    if (probe.rank() == current_rank + 1) {
      out.push_back(basis_vector(j));
      ++current_rank;
    }
  }
  if (current_rank != dim_) throw std::logic_error("AffineSpace: complement extension failed");
  return out;
}

std::vector<uint32_t> ambient_indices(const AffineSpace& space) {
  std::vector<uint32_t> out(space.size());
  for (uint64_t i = 0; i < space.size(); ++i) {
    out[i] = static_cast<uint32_t>(space.ambient_index_at(i));
  }
  return out;
}

}  // namespace fourap
