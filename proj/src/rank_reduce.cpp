#include "fourap/rank_reduce.hpp"

#include <deque>
#include <optional>
#include <stdexcept>

namespace fourap {
namespace {

struct Combo {
  std::vector<uint8_t> lambda;
  QuadraticForm form;
};

// First nonzero coefficient tuple (in the canonical projective order: leading
// nonzero entry scaled to 1, scanned by leading position then little-endian
// free digits) whose combination has rank below the threshold.
std::optional<Combo> find_low_rank_combo(const AffineSpace& piece,
                                         const std::vector<QuadraticForm>& forms,
                                         int threshold) {
  const int d = static_cast<int>(forms.size());
  if (d == 0) return std::nullopt;
  const uint32_t p = piece.modulus();
  for (int lead = 0; lead < d; ++lead) {
    const int free = d - lead - 1;
    uint64_t total = 1;
    for (int i = 0; i < free; ++i) total *= p;
    std::vector<uint8_t> lambda(d, 0);
    for (uint64_t code = 0; code < total; ++code) {
      std::fill(lambda.begin(), lambda.end(), 0);
      lambda[lead] = 1;
      uint64_t rest = code;
      for (int i = 0; i < free; ++i) {
        lambda[lead + 1 + i] = static_cast<uint8_t>(rest % p);
        rest /= p;
      }
      QuadraticForm combo = QuadraticForm::zero(piece);
      for (int i = 0; i < d; ++i) {
        if (lambda[i] != 0) combo = combo.add_scaled(forms[i], lambda[i]);
      }
      if (combo.rank() < threshold) return Combo{lambda, combo};
    }
  }
  return std::nullopt;
}

struct WorkItem {
  AffineSpace piece;
  std::vector<QuadraticForm> forms;
  std::vector<QuadraticForm> linears;  // rank-0 on piece; pending level-set cuts
};

// Splits the piece along the level sets of every pending affine-linear form.
// Each linear has zero quadratic part in piece coordinates, so a level set is
// a single coefficient-space hyperplane section (or the piece itself / empty
// when the linear part vanishes).
void cut_by_linears(const WorkItem& item, std::deque<WorkItem>& queue) {
  const uint32_t p = item.piece.modulus();
  std::vector<AffineSpace> pieces = {item.piece};
  for (const QuadraticForm& lin : item.linears) {
    std::vector<AffineSpace> next;
    for (const AffineSpace& cur : pieces) {
      QuadraticForm on_cur = lin.restrict_to(cur);
      if (on_cur.rank() != 0)
        throw std::logic_error("pending linear form has nonzero rank");
      CoefficientForm cf = on_cur.coefficient_form();
      PrimeField f(p);
      for (uint32_t v = 0; v < p; ++v) {
        auto cut = cur.cut_by_coefficient_form(cf.b, f.sub(v, cf.c));
        if (cut) next.push_back(*cut);
      }
    }
    pieces = std::move(next);
  }
  for (const AffineSpace& piece : pieces) {
    WorkItem out{piece, {}, {}};
    out.forms.reserve(item.forms.size());
    for (const QuadraticForm& q : item.forms) out.forms.push_back(q.restrict_to(piece));
    queue.push_back(std::move(out));
  }
}

}  // namespace

LocalQuadraticFactor rank_reduce(const QuadraticFactor& b, int r, int enumeration_cap) {
  if (r < 1) throw std::invalid_argument("rank target must be >= 1");
  const int d0 = b.complexity();
  if (d0 > enumeration_cap)
    throw std::invalid_argument("input complexity exceeds enumeration cap");
  const int threshold = r + d0;

  std::deque<WorkItem> queue;
  queue.push_back({b.domain(), b.forms(), {}});
  std::vector<LocalAtom> atoms;

  const uint32_t p = b.domain().modulus();
  while (!queue.empty()) {
    WorkItem item = std::move(queue.front());
    queue.pop_front();

    // Eliminate one form whose combination stays below the threshold: the
    // piece splits into the cosets of the combination's Hessian kernel, and
    // on each coset the combination degenerates to an affine-linear form.
    auto low = find_low_rank_combo(item.piece, item.forms, threshold);
    if (low) {
      int pivot = 0;
      while (low->lambda[pivot] == 0) ++pivot;
      AffineSpace kernel = item.piece.kernel_subspace(low->form.matrix());
      auto dirs = item.piece.complement_directions(kernel);
      const int s = static_cast<int>(dirs.size());
      std::vector<std::vector<uint32_t>> kernel_basis;
      for (int rI = 0; rI < kernel.basis().rows(); ++rI) {
        std::vector<uint32_t> row(kernel.basis().cols());
        for (int c = 0; c < kernel.basis().cols(); ++c) row[c] = kernel.basis().at(rI, c);
        kernel_basis.push_back(std::move(row));
      }
      PrimeField f(p);
      uint64_t coset_count = 1;
      for (int i = 0; i < s; ++i) coset_count *= p;
      for (uint64_t code = 0; code < coset_count; ++code) {
        std::vector<uint32_t> translate = kernel.translate();
        uint64_t rest = code;
        for (int i = 0; i < s; ++i) {
          uint32_t c = static_cast<uint32_t>(rest % p);
          rest /= p;
          for (size_t j = 0; j < translate.size(); ++j)
            translate[j] = f.add(translate[j], f.mul(c, dirs[i][j]));
        }
        AffineSpace coset(p, item.piece.ambient_dim(), kernel_basis, translate);
        WorkItem next{coset, {}, {}};
        next.forms.reserve(item.forms.size() - 1);
        for (int i = 0; i < static_cast<int>(item.forms.size()); ++i) {
          if (i != pivot) next.forms.push_back(item.forms[i].restrict_to(coset));
        }
        next.linears.reserve(item.linears.size() + 1);
        for (const QuadraticForm& lin : item.linears)
          next.linears.push_back(lin.restrict_to(coset));
        next.linears.push_back(low->form.restrict_to(coset));
        queue.push_back(std::move(next));
      }
      continue;
    }

    if (item.linears.empty()) {
      atoms.push_back({item.piece, QuadraticFactor(item.piece, item.forms)});
    } else {
      cut_by_linears(item, queue);
    }
  }

  LocalQuadraticFactor result(b.domain(), std::move(atoms));
  result.validate(d0 * r + d0 * d0 + d0);
  for (const LocalAtom& atom : result.atoms()) {
    if (atom.factor.complexity() > d0)
      throw std::logic_error("piece factor exceeds input complexity");
    if (!atom.factor.rank_separation_check(r, enumeration_cap).ok)
      throw std::logic_error("piece factor failed rank separation after reduction");
  }
  if (!result.level2().refines(b.to_factor()))
    throw std::logic_error("reduced partition does not refine the input factor");
  return result;
}

}  // namespace fourap
