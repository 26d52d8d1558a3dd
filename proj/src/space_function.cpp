#include "fourap/space_function.hpp"

#include <cmath>
#include <stdexcept>

namespace fourap {

SpaceFunction::SpaceFunction(AffineSpace domain, std::vector<cplx> values, bool bounded)
    : domain_(std::move(domain)), values_(std::move(values)), bounded_(bounded) {
  if (values_.size() != domain_.size()) {
    throw std::invalid_argument("SpaceFunction: value count does not match the domain size");
  }
  if (bounded_) {
    for (const auto& v : values_) {
      if (std::abs(v) > 1.0 + 1e-12) {
        throw std::invalid_argument("SpaceFunction: bounded flag set but |value| > 1");
      }
    }
  }
}

SpaceFunction SpaceFunction::constant(const AffineSpace& domain, cplx value) {
  return SpaceFunction(domain, std::vector<cplx>(domain.size(), value), std::abs(value) <= 1.0 + 1e-12);
}

SpaceFunction SpaceFunction::indicator(const AffineSpace& domain, const std::vector<uint8_t>& member) {
  if (member.size() != domain.size()) {
    throw std::invalid_argument("SpaceFunction: membership mask size mismatch");
  }
  std::vector<cplx> vals(member.size());
  for (size_t i = 0; i < member.size(); ++i) vals[i] = member[i] ? 1.0 : 0.0;
  return SpaceFunction(domain, std::move(vals), true);
}

cplx SpaceFunction::mean() const {
  cplx acc = 0.0;
  for (const auto& v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

bool SpaceFunction::is_real(double tol) const {
  for (const auto& v : values_) {
    if (std::abs(v.imag()) > tol) return false;
  }
  return true;
}

SpaceFunction SpaceFunction::operator-(const SpaceFunction& o) const {
  if (!domain_.same_point_set(o.domain_)) throw std::invalid_argument("SpaceFunction: domain mismatch in -");
  std::vector<cplx> out(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] - o.values_[i];
  return SpaceFunction(domain_, std::move(out), false);
}

SpaceFunction SpaceFunction::operator+(const SpaceFunction& o) const {
  if (!domain_.same_point_set(o.domain_)) throw std::invalid_argument("SpaceFunction: domain mismatch in +");
  std::vector<cplx> out(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] + o.values_[i];
  return SpaceFunction(domain_, std::move(out), false);
}

SpaceFunction SpaceFunction::scaled(cplx k) const {
  std::vector<cplx> out(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] * k;
  return SpaceFunction(domain_, std::move(out), false);
}

SpaceFunction SpaceFunction::restrict_to(const AffineSpace& sub) const {
  if (!domain_.contains_space(sub)) throw std::invalid_argument("SpaceFunction: restriction target not contained");
  std::vector<cplx> out(sub.size());
  for (uint64_t i = 0; i < sub.size(); ++i) out[i] = values_[domain_.index_of(sub.point_at(i))];
  return SpaceFunction(sub, std::move(out), bounded_);
}

PointSet::PointSet(AffineSpace domain, std::vector<uint8_t> member)
    : domain_(std::move(domain)), member_(std::move(member)), count_(0) {
  if (member_.size() != domain_.size()) throw std::invalid_argument("PointSet: mask size mismatch");
  for (auto& m : member_) {
    m = m ? 1 : 0;
    count_ += m;
  }
}

PointSet PointSet::from_indices(AffineSpace domain, const std::vector<uint64_t>& indices) {
  std::vector<uint8_t> member(domain.size(), 0);
  for (uint64_t i : indices) {
    if (i >= member.size()) throw std::out_of_range("PointSet: index outside the domain");
    member[i] = 1;
  }
  return PointSet(std::move(domain), std::move(member));
}

double PointSet::density() const {
  return static_cast<double>(count_) / static_cast<double>(member_.size());
}

std::vector<uint64_t> PointSet::indices() const {
  std::vector<uint64_t> out;
  out.reserve(count_);
  for (uint64_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) out.push_back(i);
  }
  return out;
}

SpaceFunction PointSet::indicator() const { return SpaceFunction::indicator(domain_, member_); }

PointSet PointSet::restrict_to(const AffineSpace& sub) const {
  if (!domain_.contains_space(sub)) throw std::invalid_argument("PointSet: restriction target not contained");
  std::vector<uint8_t> member(sub.size(), 0);
  for (uint64_t i = 0; i < sub.size(); ++i) {
    member[i] = member_[domain_.index_of(sub.point_at(i))];
  }
  return PointSet(sub, std::move(member));
}

}  // namespace fourap
