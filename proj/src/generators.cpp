#include "fourap/generators.hpp"

#include <stdexcept>

#include "fourap/group_index.hpp"

namespace fourap {

PointSet gen_random(const AffineSpace& w, double alpha, Rng& rng) {
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("alpha must be in [0, 1]");
  std::vector<uint8_t> member(w.size());
  for (auto& m : member) m = rng.bernoulli(alpha) ? 1 : 0;
  return PointSet(w, std::move(member));
}

PointSet gen_subspace(const AffineSpace& w, int codim, Rng& rng) {
  if (codim < 0 || codim > w.dim())
    throw std::invalid_argument("codimension must be between 0 and dim");
  const uint32_t p = w.modulus();
  AffineSpace sub = w;
  for (int step = 0; step < codim; ++step) {
    for (;;) {
      std::vector<uint32_t> g(sub.dim());
      bool nonzero = false;
      for (auto& v : g) {
        v = static_cast<uint32_t>(rng.uniform(p));
        nonzero = nonzero || v != 0;
      }
      if (!nonzero) continue;
      auto cut = sub.cut_by_coefficient_form(g, static_cast<uint32_t>(rng.uniform(p)));
      if (cut) {
        sub = *cut;
        break;
      }
    }
  }
  std::vector<uint8_t> member(w.size(), 0);
  for (uint64_t i = 0; i < sub.size(); ++i) member[w.index_of(sub.point_at(i))] = 1;
  return PointSet(w, std::move(member));
}

PointSet gen_quad_level_set(const QuadraticForm& form, uint32_t value) {
  const AffineSpace& w = form.domain();
  if (value >= w.modulus()) throw std::invalid_argument("level value must be a residue");
  std::vector<uint8_t> member(w.size());
  for (uint64_t i = 0; i < w.size(); ++i) member[i] = form.evaluate_at(i) == value ? 1 : 0;
  return PointSet(w, std::move(member));
}

ModMatrix random_matrix_of_rank(uint32_t p, int n, int rank, Rng& rng) {
  if (rank < 0 || rank > n) throw std::invalid_argument("rank must be between 0 and n");
  ModMatrix d(n, n, p);
  for (int i = 0; i < rank; ++i) d.at(i, i) = 1 + static_cast<uint32_t>(rng.uniform(p - 1));
  for (;;) {
    ModMatrix b(n, n, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b.at(i, j) = static_cast<uint32_t>(rng.uniform(p));
    if (b.rank() != n) continue;
    return b.transpose().mul(d).mul(b);
  }
}

QuadraticForm random_form_of_rank(const AffineSpace& w, int rank, Rng& rng) {
  const uint32_t p = w.modulus();
  ModMatrix a = random_matrix_of_rank(p, w.dim(), rank, rng);
  std::vector<uint32_t> b(w.dim());
  for (auto& v : b) v = static_cast<uint32_t>(rng.uniform(p));
  QuadraticForm form = QuadraticForm::from_coefficient_form(
      w, a, b, static_cast<uint32_t>(rng.uniform(p)));
  if (form.rank() != rank) throw std::logic_error("constructed form has the wrong rank");
  return form;
}

namespace {

// True if admitting cand would complete a nontrivial 4-term progression whose
// other three points are already members.
bool completes_progression(const GroupIndex& g, const std::vector<uint8_t>& member,
                           uint32_t cand) {
  const uint64_t size = member.size();
  const uint32_t p = g.modulus();
  for (uint64_t s = 1; s < size; ++s) {
    for (int slot = 0; slot < 4; ++slot) {
      bool all = true;
      for (int j = 0; j < 4 && all; ++j) {
        if (j == slot) continue;
        uint32_t k = static_cast<uint32_t>(((j - slot) % static_cast<int>(p) + p) % p);
        uint32_t point = g.add(static_cast<uint32_t>(cand), g.scale(k, static_cast<uint32_t>(s)));
        all = member[point] != 0;
      }
      if (all) return true;
    }
  }
  return false;
}

}  // namespace

PointSet gen_ap_free_greedy(const AffineSpace& w, Rng& rng) {
  if (w.codim() != 0)
    throw std::invalid_argument("the greedy generator works on the full space");
  GroupIndex g(w.modulus(), w.dim());
  std::vector<uint64_t> order(w.size());
  for (uint64_t i = 0; i < order.size(); ++i) order[i] = i;
  for (uint64_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform(i)]);

  std::vector<uint8_t> member(w.size(), 0);
  for (uint64_t cand : order) {
    if (!completes_progression(g, member, static_cast<uint32_t>(cand))) member[cand] = 1;
  }
  return PointSet(w, std::move(member));
}

PointSet gen_union_subspaces(const AffineSpace& w, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("need at least one subspace");
  std::vector<uint8_t> member(w.size(), 0);
  for (int i = 0; i < k; ++i) {
    int codim = 1 + static_cast<int>(rng.uniform(std::min(2, w.dim())));
    PointSet part = gen_subspace(w, codim, rng);
    for (uint64_t j = 0; j < w.size(); ++j) member[j] |= part.mask()[j];
  }
  return PointSet(w, std::move(member));
}

bool progression_free(const PointSet& a) {
  const AffineSpace& w = a.domain();
  if (w.codim() != 0)
    throw std::invalid_argument("the progression scan works on the full space");
  GroupIndex g(w.modulus(), w.dim());
  for (uint64_t x = 0; x < w.size(); ++x) {
    if (!a.contains_index(x)) continue;
    for (uint64_t s = 1; s < w.size(); ++s) {
      bool all = true;
      for (uint32_t j = 1; j < 4 && all; ++j) all = a.contains_index(g.add(static_cast<uint32_t>(x), g.scale(j, static_cast<uint32_t>(s))));
      if (all) return false;
    }
  }
  return true;
}

}  // namespace fourap
