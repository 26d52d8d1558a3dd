#include "fourap/factor.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace fourap {

Factor::Factor(AffineSpace domain, std::vector<uint32_t> atom_of)
    : domain_(std::move(domain)), atom_of_(std::move(atom_of)), atom_count_(0) {
  if (atom_of_.size() != domain_.size()) throw std::invalid_argument("Factor: atom map size mismatch");
  if (atom_of_.empty()) throw std::invalid_argument("Factor: empty domain");
  for (uint32_t a : atom_of_) atom_count_ = std::max(atom_count_, a + 1);
  // ids must be dense: every id below atom_count_ occupied
  std::vector<uint8_t> seen(atom_count_, 0);
  for (uint32_t a : atom_of_) seen[a] = 1;
  for (uint32_t a = 0; a < atom_count_; ++a) {
    if (!seen[a]) throw std::invalid_argument("Factor: atom ids not dense");
  }
}

Factor Factor::trivial(const AffineSpace& domain) {
  return Factor(domain, std::vector<uint32_t>(domain.size(), 0));
}

Factor Factor::discrete(const AffineSpace& domain) {
  std::vector<uint32_t> ids(domain.size());
  for (uint64_t i = 0; i < domain.size(); ++i) ids[i] = static_cast<uint32_t>(i);
  return Factor(domain, std::move(ids));
}

Factor Factor::from_labels(const AffineSpace& domain, const std::vector<uint64_t>& labels) {
  if (labels.size() != domain.size()) throw std::invalid_argument("Factor: label array size mismatch");
  std::map<uint64_t, uint32_t> dense;
  std::vector<uint32_t> ids(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = dense.emplace(labels[i], static_cast<uint32_t>(dense.size()));
    ids[i] = it->second;
  }
  return Factor(domain, std::move(ids));
}

std::vector<uint64_t> Factor::atom_sizes() const {
  std::vector<uint64_t> sizes(atom_count_, 0);
  for (uint32_t a : atom_of_) ++sizes[a];
  return sizes;
}

bool Factor::refines(const Factor& coarser) const {
  if (!domain_.same_point_set(coarser.domain_)) throw std::invalid_argument("Factor: refinement across different domains");
  // the coarser id must be a function of the finer id
  std::vector<int64_t> image(atom_count_, -1);
  for (uint64_t i = 0; i < atom_of_.size(); ++i) {
    int64_t& slot = image[atom_of_[i]];
    if (slot < 0) {
      slot = coarser.atom_of_[i];
    } else if (slot != coarser.atom_of_[i]) {
      return false;
    }
  }
  return true;
}

SpaceFunction conditional_expectation(const SpaceFunction& f, const Factor& b) {
  if (!f.domain().same_point_set(b.domain())) {
    throw std::invalid_argument("conditional_expectation: domain mismatch");
  }
  std::vector<cplx> sums(b.atom_count(), 0.0);
  std::vector<uint64_t> sizes(b.atom_count(), 0);
  for (uint64_t i = 0; i < f.size(); ++i) {
    sums[b.atom_of(i)] += f[i];
    ++sizes[b.atom_of(i)];
  }
  for (uint32_t a = 0; a < b.atom_count(); ++a) sums[a] /= static_cast<double>(sizes[a]);
  std::vector<cplx> out(f.size());
  for (uint64_t i = 0; i < f.size(); ++i) out[i] = sums[b.atom_of(i)];
  return SpaceFunction(f.domain(), std::move(out), f.bounded());
}

double energy(const SpaceFunction& f, const Factor& b) {
  if (!f.domain().same_point_set(b.domain())) throw std::invalid_argument("energy: domain mismatch");
  std::vector<cplx> sums(b.atom_count(), 0.0);
  std::vector<uint64_t> sizes(b.atom_count(), 0);
  for (uint64_t i = 0; i < f.size(); ++i) {
    sums[b.atom_of(i)] += f[i];
    ++sizes[b.atom_of(i)];
  }
  double acc = 0.0;
  for (uint32_t a = 0; a < b.atom_count(); ++a) {
    acc += std::norm(sums[a]) / static_cast<double>(sizes[a]);
  }
  return acc / static_cast<double>(f.size());
}

Factor join(const Factor& a, const Factor& b) {
  if (!a.domain().same_point_set(b.domain())) throw std::invalid_argument("join: domain mismatch");
  std::vector<uint64_t> pair_labels(a.domain().size());
  for (uint64_t i = 0; i < pair_labels.size(); ++i) {
    pair_labels[i] = static_cast<uint64_t>(a.atom_of(i)) * b.atom_count() + b.atom_of(i);
  }
  return Factor::from_labels(a.domain(), pair_labels);
}

bool FactorFunction::is_real(double tol) const {
  for (const auto& v : values) {
    if (std::abs(v.imag()) > tol) return false;
  }
  return true;
}

QuadraticFactor::QuadraticFactor(AffineSpace domain, std::vector<QuadraticForm> forms)
    : domain_(std::move(domain)), forms_(std::move(forms)) {
  for (const auto& phi : forms_) {
    if (!phi.domain().same_point_set(domain_)) {
      throw std::invalid_argument("QuadraticFactor: form domain differs from the factor domain");
    }
  }
  // configuration index per point, little-endian in the form order
  config_of_.assign(domain_.size(), 0);
  uint64_t scale = 1;
  for (const auto& phi : forms_) {
    auto vals = phi.values();
    for (uint64_t i = 0; i < domain_.size(); ++i) config_of_[i] += vals[i] * scale;
    scale *= domain_.modulus();
  }
}

QuadraticFactor QuadraticFactor::trivial(const AffineSpace& domain) {
  return QuadraticFactor(domain, {});
}

Point QuadraticFactor::configuration_map(const Point& x) const {
  std::vector<uint32_t> coords(forms_.size());
  for (size_t j = 0; j < forms_.size(); ++j) coords[j] = forms_[j].evaluate(x);
  return Point(std::move(coords), domain_.modulus());
}

uint64_t QuadraticFactor::configuration_index(uint64_t domain_index) const {
  return config_of_[domain_index];
}

Factor QuadraticFactor::to_factor() const {
  uint64_t config_count = 1;
  for (size_t j = 0; j < forms_.size(); ++j) config_count *= domain_.modulus();
  // dense ids in configuration-index order
  std::vector<int64_t> dense(config_count, -1);
  for (uint64_t y : config_of_) dense[y] = 0;
  uint32_t next = 0;
  for (uint64_t y = 0; y < config_count; ++y) {
    if (dense[y] == 0) dense[y] = next++;
  }
  std::vector<uint32_t> ids(domain_.size());
  for (uint64_t i = 0; i < domain_.size(); ++i) ids[i] = static_cast<uint32_t>(dense[config_of_[i]]);
  return Factor(domain_, std::move(ids));
}

RankSeparation QuadraticFactor::rank_separation_check(int r, int complexity_cap) const {
  int d = complexity();
  if (d > complexity_cap) {
    throw std::invalid_argument("rank_separation_check: complexity " + std::to_string(d) +
                                " exceeds the cap " + std::to_string(complexity_cap));
  }
  uint32_t p = domain_.modulus();
  // projective enumeration: the first nonzero coordinate is 1
  for (int pivot = 0; pivot < d; ++pivot) {
    uint64_t free_count = 1;
    for (int j = pivot + 1; j < d; ++j) free_count *= p;
    for (uint64_t rest = 0; rest < free_count; ++rest) {
      std::vector<uint32_t> lambda(d, 0);
      lambda[pivot] = 1;
      uint64_t tmp = rest;
      for (int j = pivot + 1; j < d; ++j) {
        lambda[j] = static_cast<uint32_t>(tmp % p);
        tmp /= p;
      }
      QuadraticForm combo = QuadraticForm::zero(domain_);
      for (int j = pivot; j < d; ++j) {
        if (lambda[j] != 0) combo = combo.add_scaled(forms_[j], lambda[j]);
      }
      if (combo.rank() < r) {
        return RankSeparation{false, lambda, combo.rank()};
      }
    }
  }
  return RankSeparation{true, {}, -1};
}

int QuadraticFactor::min_combination_rank(int complexity_cap) const {
  if (complexity() == 0) return domain_.dim() + 1;
  int lo = 0, hi = domain_.dim();
  // binary search over the separation level using the scan above
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (rank_separation_check(mid, complexity_cap).ok) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

QuadraticFactor QuadraticFactor::restrict_to(const AffineSpace& sub) const {
  std::vector<QuadraticForm> restricted;
  restricted.reserve(forms_.size());
  for (const auto& phi : forms_) restricted.push_back(phi.restrict_to(sub));
  return QuadraticFactor(sub, std::move(restricted));
}

QuadraticFactor QuadraticFactor::merge(const QuadraticFactor& other) const {
  if (!domain_.same_point_set(other.domain_)) throw std::invalid_argument("QuadraticFactor: merge across domains");
  std::vector<QuadraticForm> all = forms_;
  for (const auto& phi : other.forms_) all.push_back(phi);
  return QuadraticFactor(domain_, std::move(all));
}

FactorFunction QuadraticFactor::push_to_configuration(const SpaceFunction& f, double tol) const {
  if (!f.domain().same_point_set(domain_)) throw std::invalid_argument("push_to_configuration: domain mismatch");
  uint64_t config_count = 1;
  for (size_t j = 0; j < forms_.size(); ++j) config_count *= domain_.modulus();
  std::vector<cplx> values(config_count, 0.0);
  std::vector<uint8_t> occupied(config_count, 0);
  for (uint64_t i = 0; i < domain_.size(); ++i) {
    uint64_t y = config_of_[i];
    if (!occupied[y]) {
      occupied[y] = 1;
      values[y] = f[i];
    } else if (std::abs(values[y] - f[i]) > tol) {
      throw std::invalid_argument("push_to_configuration: function is not constant on configuration " +
                                  std::to_string(y));
    }
  }
  return FactorFunction{domain_.modulus(), complexity(), std::move(values)};
}

LocalQuadraticFactor::LocalQuadraticFactor(AffineSpace domain, std::vector<LocalAtom> atoms)
    : domain_(std::move(domain)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("LocalQuadraticFactor: no atoms");
  level1();  // throws unless the pieces partition the domain
}

LocalQuadraticFactor LocalQuadraticFactor::trivial(const AffineSpace& domain) {
  std::vector<LocalAtom> atoms;
  atoms.push_back(LocalAtom{domain, QuadraticFactor::trivial(domain)});
  return LocalQuadraticFactor(domain, std::move(atoms));
}

int LocalQuadraticFactor::max_codim() const {
  int m = 0;
  for (const auto& a : atoms_) m = std::max(m, a.piece.codim_in(domain_));
  return m;
}

int LocalQuadraticFactor::max_complexity() const {
  int m = 0;
  for (const auto& a : atoms_) m = std::max(m, a.factor.complexity());
  return m;
}

Factor LocalQuadraticFactor::level1() const {
  std::vector<uint64_t> labels(domain_.size());
  std::vector<uint8_t> seen(domain_.size(), 0);
  for (size_t a = 0; a < atoms_.size(); ++a) {
    for (uint64_t j = 0; j < atoms_[a].piece.size(); ++j) {
      uint64_t i = domain_.index_of(atoms_[a].piece.point_at(j));
      if (seen[i]) throw std::logic_error("LocalQuadraticFactor: pieces overlap");
      seen[i] = 1;
      labels[i] = a;
    }
  }
  for (uint64_t i = 0; i < domain_.size(); ++i) {
    if (!seen[i]) throw std::logic_error("LocalQuadraticFactor: pieces do not cover the domain");
  }
  return Factor::from_labels(domain_, labels);
}

Factor LocalQuadraticFactor::level2() const {
  std::vector<uint64_t> labels(domain_.size());
  std::vector<uint8_t> seen(domain_.size(), 0);
  uint64_t base = 0;
  for (const auto& atom : atoms_) {
    uint64_t config_count = 1;
    for (int j = 0; j < atom.factor.complexity(); ++j) config_count *= domain_.modulus();
    for (uint64_t j = 0; j < atom.piece.size(); ++j) {
      uint64_t i = domain_.index_of(atom.piece.point_at(j));
      if (seen[i]) throw std::logic_error("LocalQuadraticFactor: pieces overlap");
      seen[i] = 1;
      labels[i] = base + atom.factor.configuration_index(j);
    }
    base += config_count;
  }
  for (uint64_t i = 0; i < domain_.size(); ++i) {
    if (!seen[i]) throw std::logic_error("LocalQuadraticFactor: pieces do not cover the domain");
  }
  return Factor::from_labels(domain_, labels);
}

void LocalQuadraticFactor::validate(int codim_bound) const {
  level1();  // throws unless the pieces partition the domain
  for (const auto& a : atoms_) {
    if (!domain_.contains_space(a.piece)) throw std::logic_error("LocalQuadraticFactor: piece not contained");
    if (!a.factor.domain().same_point_set(a.piece)) {
      throw std::logic_error("LocalQuadraticFactor: factor domain differs from its piece");
    }
    int codim = a.piece.codim_in(domain_);
    if (codim > codim_bound) {
      throw std::logic_error("LocalQuadraticFactor: piece codimension " + std::to_string(codim) +
                             " exceeds the bound " + std::to_string(codim_bound));
    }
  }
}

}  // namespace fourap
