#include "fourap/quadratic_form.hpp"

#include <stdexcept>

#include "fourap/transform.hpp"

namespace fourap {

QuadraticForm::QuadraticForm(AffineSpace domain, ModMatrix m, std::vector<uint32_t> r, uint32_t c)
    : domain_(std::move(domain)), m_(std::move(m)), r_(std::move(r)), c_(0), rank_(0) {
  uint32_t p = domain_.modulus();
  PrimeField f(p);
  int n = domain_.ambient_dim();
  if (m_.rows() != n || m_.cols() != n || m_.modulus() != p) {
    throw std::invalid_argument("QuadraticForm: matrix shape mismatch");
  }
  if (!m_.is_symmetric()) throw std::invalid_argument("QuadraticForm: matrix must be symmetric");
  if (static_cast<int>(r_.size()) != n) throw std::invalid_argument("QuadraticForm: linear part length mismatch");
  for (auto& v : r_) v = f.norm(v);
  c_ = f.norm(c);
  rank_ = domain_.restrict_symmetric(m_).rank();
}

QuadraticForm QuadraticForm::from_monomials(AffineSpace domain, const ModMatrix& q,
                                            std::vector<uint32_t> r, uint32_t c) {
  uint32_t p = domain.modulus();
  PrimeField f(p);
  int n = domain.ambient_dim();
  if (q.rows() != n || q.cols() != n) throw std::invalid_argument("QuadraticForm: monomial matrix shape mismatch");
  ModMatrix m(n, n, p);
  uint32_t half = f.half();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.at(i, j) = f.mul(half, f.add(q.at(i, j), q.at(j, i)));
    }
  }
  return QuadraticForm(std::move(domain), std::move(m), std::move(r), c);
}

QuadraticForm QuadraticForm::zero(AffineSpace domain) {
  int n = domain.ambient_dim();
  uint32_t p = domain.modulus();
  return QuadraticForm(std::move(domain), ModMatrix(n, n, p), std::vector<uint32_t>(n, 0), 0);
}

QuadraticForm QuadraticForm::from_coefficient_form(const AffineSpace& domain, const ModMatrix& a,
                                                   const std::vector<uint32_t>& b, uint32_t c) {
  uint32_t p = domain.modulus();
  PrimeField f(p);
  int n = domain.ambient_dim();
  int d = domain.dim();
  if (a.rows() != d || a.cols() != d || !a.is_symmetric()) {
    throw std::invalid_argument("QuadraticForm: coefficient matrix must be symmetric d x d");
  }
  if (static_cast<int>(b.size()) != d) throw std::invalid_argument("QuadraticForm: coefficient linear part length mismatch");

  // Left inverse of the basis: t = P (x - w) with P supported on pivot
  // columns, so the pullback t^T A t + b^T t + c becomes an ambient form.
  const ModMatrix& basis = domain.basis();
  ModMatrix pmat(d, n, p);
  {
    ModMatrix minor(d, d, p);
    std::vector<int> pivots;
    basis.rref(&pivots);
    for (int r0 = 0; r0 < d; ++r0)
      for (int k = 0; k < d; ++k) minor.at(r0, k) = basis.at(r0, pivots[k]);
    auto inv = minor.inverse();
    if (!inv) throw std::logic_error("QuadraticForm: basis minor not invertible");
    // t_j = sum_k inv(k, j) * delta[pivots[k]]  =>  P(j, pivots[k]) = inv(k, j)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) pmat.at(j, pivots[k]) = inv->at(k, j);
  }

  ModMatrix m = pmat.transpose().mul(a).mul(pmat);  // symmetric since a is
  const std::vector<uint32_t>& w = domain.translate();
  std::vector<uint32_t> mw = m.mul_vec(w);
  std::vector<uint32_t> ptb = pmat.transpose().mul_vec(b);
  std::vector<uint32_t> r(n);
  for (int i = 0; i < n; ++i) r[i] = f.add(ptb[i], f.sub(0, f.mul(2 % p, mw[i])));
  uint64_t wmw = 0;
  for (int i = 0; i < n; ++i) wmw += static_cast<uint64_t>(w[i]) * mw[i];
  uint64_t bpw = 0;
  for (int i = 0; i < n; ++i) bpw += static_cast<uint64_t>(ptb[i]) * w[i];
  uint32_t c_out = f.add(f.norm(c), f.sub(static_cast<uint32_t>(wmw % p), static_cast<uint32_t>(bpw % p)));
  return QuadraticForm(domain, std::move(m), std::move(r), c_out);
}

uint32_t QuadraticForm::evaluate(const Point& x) const {
  uint32_t p = domain_.modulus();
  if (x.modulus() != p || x.dim() != domain_.ambient_dim()) {
    throw std::invalid_argument("QuadraticForm: point has wrong ambient space");
  }
  uint64_t acc = 0;
  int n = domain_.ambient_dim();
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    uint64_t row = 0;
    for (int j = 0; j < n; ++j) row += static_cast<uint64_t>(m_.at(i, j)) * x[j];
    acc += (row % p) * x[i];
  }
  for (int i = 0; i < n; ++i) acc += static_cast<uint64_t>(r_[i]) * x[i];
  return static_cast<uint32_t>((acc + c_) % p);
}

uint32_t QuadraticForm::evaluate_at(uint64_t domain_index) const { return evaluate(domain_.point_at(domain_index)); }

CoefficientForm QuadraticForm::coefficient_form() const {
  uint32_t p = domain_.modulus();
  PrimeField f(p);
  ModMatrix a = domain_.restrict_symmetric(m_);
  // b = B (2 M w + r), c = phi(w).
  const std::vector<uint32_t>& w = domain_.translate();
  std::vector<uint32_t> mw = m_.mul_vec(w);
  std::vector<uint32_t> lin(domain_.ambient_dim());
  for (int i = 0; i < domain_.ambient_dim(); ++i) lin[i] = f.add(f.mul(2 % p, mw[i]), r_[i]);
  std::vector<uint32_t> b = domain_.basis().mul_vec(lin);
  uint32_t c = evaluate(Point(w, p));
  return CoefficientForm{std::move(a), std::move(b), c};
}

std::vector<uint32_t> QuadraticForm::values() const {
  // Evaluate through the coefficient form: cheaper per point and independent
  // of the ambient dimension.
  uint32_t p = domain_.modulus();
  int d = domain_.dim();
  CoefficientForm cf = coefficient_form();
  std::vector<uint32_t> out(domain_.size());
  std::vector<uint32_t> t(d, 0);
  for (uint64_t idx = 0; idx < domain_.size(); ++idx) {
    uint64_t acc = cf.c;
    for (int i = 0; i < d; ++i) {
      if (t[i] == 0) continue;
      uint64_t row = 0;
      for (int j = 0; j < d; ++j) row += static_cast<uint64_t>(cf.a.at(i, j)) * t[j];
      acc += (row % p) * t[i];
      acc += static_cast<uint64_t>(cf.b[i]) * t[i];
    }
    out[idx] = static_cast<uint32_t>(acc % p);
    for (int i = 0; i < d; ++i) {  // advance little-endian counter
      if (++t[i] < p) break;
      t[i] = 0;
    }
  }
  return out;
}

QuadraticForm QuadraticForm::restrict_to(const AffineSpace& sub) const {
  if (!domain_.contains_space(sub)) throw std::invalid_argument("QuadraticForm: restriction target is not a subspace of the domain");
  return QuadraticForm(sub, m_, r_, c_);
}

QuadraticForm QuadraticForm::add_scaled(const QuadraticForm& other, uint32_t k) const {
  if (!(domain_ == other.domain_)) throw std::invalid_argument("QuadraticForm: mixed domains in linear combination");
  uint32_t p = domain_.modulus();
  PrimeField f(p);
  int n = domain_.ambient_dim();
  ModMatrix m(n, n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = f.add(m_.at(i, j), f.mul(k, other.m_.at(i, j)));
  std::vector<uint32_t> r(n);
  for (int i = 0; i < n; ++i) r[i] = f.add(r_[i], f.mul(k, other.r_[i]));
  return QuadraticForm(domain_, std::move(m), std::move(r), f.add(c_, f.mul(k, other.c_)));
}

bool QuadraticForm::linear_part_in_image() const {
  CoefficientForm cf = coefficient_form();
  return cf.a.solve(cf.b).has_value();
}

double QuadraticForm::gauss_sum_magnitude() const {
  uint32_t p = domain_.modulus();
  std::vector<cplx> roots = character_table(p);
  std::vector<uint32_t> vals = values();
  cplx acc(0.0, 0.0);
  for (uint32_t v : vals) acc += roots[v];
  return std::abs(acc) / static_cast<double>(domain_.size());
}

}  // namespace fourap
