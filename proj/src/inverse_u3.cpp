#include "fourap/inverse_u3.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fourap/group_index.hpp"
#include "fourap/transform.hpp"

namespace fourap {
namespace {

uint64_t ipow(uint64_t base, int exp) {
  uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void decode_digits(uint64_t code, uint32_t p, int d, uint32_t* out) {
  for (int i = 0; i < d; ++i) {
    out[i] = static_cast<uint32_t>(code % p);
    code /= p;
  }
}

// argmax of |coeffs| with ties resolved toward the lowest index.
std::pair<uint32_t, double> peak(const std::vector<cplx>& coeffs) {
  uint32_t best = 0;
  double mag = std::abs(coeffs[0]);
  for (uint32_t i = 1; i < coeffs.size(); ++i) {
    double m = std::abs(coeffs[i]);
    if (m > mag) {
      mag = m;
      best = i;
    }
  }
  return {best, mag};
}

// Values of t -> t^T A t over the coefficient space, as residues.
std::vector<uint32_t> quadratic_values(const ModMatrix& a, uint32_t p, int d) {
  const uint64_t size = ipow(p, d);
  std::vector<uint32_t> vals(size);
  std::vector<uint32_t> t(d);
  for (uint64_t idx = 0; idx < size; ++idx) {
    decode_digits(idx, p, d, t.data());
    uint64_t acc = 0;
    for (int i = 0; i < d; ++i) {
      if (t[i] == 0) continue;
      for (int j = 0; j < d; ++j) acc += static_cast<uint64_t>(t[i]) * t[j] % p * a.at(i, j);
    }
    vals[idx] = static_cast<uint32_t>(acc % p);
  }
  return vals;
}

// Correlation search for a fixed Hessian: demodulates by t^T A t, transforms,
// and reads off the best linear part.
struct LinearFit {
  uint32_t frequency;
  double correlation;
};

LinearFit best_linear_part(const SpaceFunction& f, const std::vector<uint32_t>& phase_vals) {
  const uint32_t p = f.domain().modulus();
  const int d = f.domain().dim();
  auto chars = character_table(p);
  std::vector<cplx> g(f.values().size());
  for (size_t i = 0; i < g.size(); ++i) g[i] = f.values()[i] * std::conj(chars[phase_vals[i]]);
  auto ghat = dft(g, p, d);
  auto [freq, mag] = peak(ghat);
  return {freq, mag};
}

OraclePiece whole_piece(const SpaceFunction& f, const ModMatrix& a, uint32_t freq) {
  const uint32_t p = f.domain().modulus();
  const int d = f.domain().dim();
  std::vector<uint32_t> b(d);
  decode_digits(freq, p, d, b.data());
  QuadraticForm phase = QuadraticForm::from_coefficient_form(f.domain(), a, b, 0);
  return {f.domain(), phase, 0.0};
}

struct SymIndex {
  int d;
  std::vector<std::vector<int>> idx;
  int count;
  explicit SymIndex(int dim) : d(dim), idx(dim, std::vector<int>(dim)), count(0) {
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        idx[i][j] = count;
        idx[j][i] = count;
        ++count;
      }
  }
};

struct DerivativePeak {
  uint32_t h;
  std::vector<uint32_t> xi;
  double weight;
};

OracleResult derivative_fit_impl(const SpaceFunction& f, Rng& rng, int trials, int depth,
                                 double weak_threshold) {
  const AffineSpace& w = f.domain();
  const uint32_t p = w.modulus();
  const int d = w.dim();
  const PrimeField field(p);
  const uint64_t size = f.values().size();

  if (d == 0) {
    OraclePiece piece = whole_piece(f, ModMatrix(0, 0, p), 0);
    piece.correlation = std::abs(f.values()[0]);
    return {{piece}, piece.correlation};
  }

  GroupIndex g(p, d);
  auto chars = character_table(p);

  // Peak frequency and weight of every derivative transform.
  std::vector<DerivativePeak> peaks;
  peaks.reserve(size - 1);
  std::vector<cplx> deriv(size);
  std::vector<uint32_t> tr(size);
  for (uint32_t h = 1; h < size; ++h) {
    g.translation_into(h, tr.data());
    for (uint64_t t = 0; t < size; ++t) deriv[t] = f.values()[tr[t]] * std::conj(f.values()[t]);
    auto dhat = dft(deriv, p, d);
    auto [freq, mag] = peak(dhat);
    std::vector<uint32_t> xi(d);
    decode_digits(freq, p, d, xi.data());
    peaks.push_back({h, std::move(xi), mag});
  }

  // Fit a symmetric S with S h = xi(h) from minimal subsets; vote by weight.
  // A symmetric matrix is pinned down only by its action on a spanning set,
  // so each subset takes d direction-independent derivative peaks.
  SymIndex sym(d);
  const int need = d;
  std::vector<size_t> by_weight(peaks.size());
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::stable_sort(by_weight.begin(), by_weight.end(), [&](size_t a, size_t b) {
    return peaks[a].weight > peaks[b].weight;
  });

  // First `need` entries of the given preference order whose directions are
  // linearly independent.
  auto independent_subset = [&](const std::vector<size_t>& order) {
    std::vector<size_t> chosen;
    ModMatrix span(need, d, p);
    for (size_t s : order) {
      if (chosen.size() == static_cast<size_t>(need)) break;
      std::vector<uint32_t> hd(d);
      decode_digits(peaks[s].h, p, d, hd.data());
      int row = static_cast<int>(chosen.size());
      for (int j = 0; j < d; ++j) span.at(row, j) = hd[j];
      if (span.rank() == row + 1) {
        chosen.push_back(s);
      } else {
        for (int j = 0; j < d; ++j) span.at(row, j) = 0;
      }
    }
    return chosen;
  };

  double total_weight = 0;
  for (const auto& pk : peaks) total_weight += pk.weight;

  std::optional<ModMatrix> best_s;
  double best_vote = -1;
  auto try_subset = [&](const std::vector<size_t>& subset) {
    ModMatrix eq(static_cast<int>(subset.size()) * d, sym.count, p);
    std::vector<uint32_t> rhs;
    rhs.reserve(subset.size() * d);
    int row = 0;
    for (size_t s : subset) {
      const auto& pk = peaks[s];
      std::vector<uint32_t> hd(d);
      decode_digits(pk.h, p, d, hd.data());
      for (int i = 0; i < d; ++i, ++row) {
        for (int j = 0; j < d; ++j)
          eq.at(row, sym.idx[i][j]) = field.add(eq.at(row, sym.idx[i][j]), hd[j]);
        rhs.push_back(pk.xi[i]);
      }
    }
    auto u = eq.solve(rhs);
    if (!u) return;
    ModMatrix s_mat(d, d, p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s_mat.at(i, j) = (*u)[sym.idx[i][j]];
    double vote = 0;
    for (const auto& pk : peaks) {
      std::vector<uint32_t> hd(d);
      decode_digits(pk.h, p, d, hd.data());
      bool match = true;
      for (int i = 0; i < d && match; ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < d; ++j) acc = field.add(acc, field.mul(s_mat.at(i, j), hd[j]));
        match = acc == pk.xi[i];
      }
      if (match) vote += pk.weight;
    }
    if (total_weight > 0) vote /= total_weight;
    if (vote > best_vote) {
      best_vote = vote;
      best_s = s_mat;
    }
  };

  try_subset(independent_subset(by_weight));
  std::vector<size_t> order(peaks.size());
  std::iota(order.begin(), order.end(), 0);
  for (int t = 1; t < trials; ++t) {
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.uniform(i)]);
    try_subset(independent_subset(order));
  }

  // Candidate with the fitted Hessian (M = half * S), if any.
  OraclePiece best = whole_piece(f, ModMatrix(d, d, p), 0);
  best.correlation = -1;
  if (best_s) {
    ModMatrix m(d, d, p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.at(i, j) = field.mul(field.half(), best_s->at(i, j));
    auto vals = quadratic_values(m, p, d);
    LinearFit fit = best_linear_part(f, vals);
    OraclePiece cand = whole_piece(f, m, fit.frequency);
    cand.correlation = fit.correlation;
    best = cand;
  }

  // Pure linear fallback.
  {
    std::vector<uint32_t> zero_vals(size, 0);
    LinearFit fit = best_linear_part(f, zero_vals);
    if (fit.correlation > best.correlation) {
      OraclePiece cand = whole_piece(f, ModMatrix(d, d, p), fit.frequency);
      cand.correlation = fit.correlation;
      best = cand;
    }
  }

  if (best.correlation >= weak_threshold || depth <= 0) return {{best}, best.correlation};

  // Weak everywhere: split along the strongest nonzero linear frequency and
  // retry on each slab.
  auto fhat = dft(f.values(), p, d);
  uint32_t cut_freq = 0;
  double cut_mag = -1;
  for (uint32_t xi = 1; xi < fhat.size(); ++xi) {
    double mmag = std::abs(fhat[xi]);
    if (mmag > cut_mag) {
      cut_mag = mmag;
      cut_freq = xi;
    }
  }
  if (cut_freq == 0) return {{best}, best.correlation};
  std::vector<uint32_t> normal(d);
  decode_digits(cut_freq, p, d, normal.data());
  std::vector<OraclePiece> pieces;
  double score = 0;
  for (uint32_t v = 0; v < p; ++v) {
    auto slab = w.cut_by_coefficient_form(normal, v);
    if (!slab) throw std::logic_error("nonzero frequency produced an empty level set");
    OracleResult sub = derivative_fit_impl(f.restrict_to(*slab), rng, trials, depth - 1,
                                           weak_threshold);
    for (auto& piece : sub.pieces) {
      score += piece.correlation * static_cast<double>(piece.piece.size());
      pieces.push_back(std::move(piece));
    }
  }
  score /= static_cast<double>(size);
  if (score > best.correlation) return {std::move(pieces), score};
  return {{best}, best.correlation};
}

}  // namespace

OracleResult inverse_u3_exhaustive(const SpaceFunction& f, uint64_t enumeration_cap) {
  const AffineSpace& w = f.domain();
  const uint32_t p = w.modulus();
  const int d = w.dim();
  const PrimeField field(p);
  const int m = d * (d + 1) / 2;
  uint64_t forms = 1;
  for (int i = 0; i < m; ++i) {
    forms *= p;
    if (forms > enumeration_cap)
      throw std::invalid_argument("exhaustive oracle domain too large; use the derivative fit");
  }

  auto chars = character_table(p);
  const uint64_t size = f.values().size();
  SymIndex sym(d);
  std::vector<uint32_t> q(m);
  std::vector<uint32_t> t(d);
  std::vector<cplx> g(size);

  ModMatrix best_a(d, d, p);
  uint32_t best_freq = 0;
  double best_mag = -1;
  for (uint64_t code = 0; code < forms; ++code) {
    uint64_t rest = code;
    for (int i = 0; i < m; ++i) {
      q[i] = static_cast<uint32_t>(rest % p);
      rest /= p;
    }
    for (uint64_t idx = 0; idx < size; ++idx) {
      decode_digits(idx, p, d, t.data());
      uint64_t acc = 0;
      for (int i = 0; i < d; ++i) {
        if (t[i] == 0) continue;
        for (int j = i; j < d; ++j)
          acc += static_cast<uint64_t>(q[sym.idx[i][j]]) * t[i] % p * t[j];
      }
      g[idx] = f.values()[idx] * std::conj(chars[acc % p]);
    }
    auto ghat = dft(g, p, d);
    auto [freq, mag] = peak(ghat);
    if (mag > best_mag) {
      best_mag = mag;
      best_freq = freq;
      ModMatrix a(d, d, p);
      for (int i = 0; i < d; ++i) {
        a.at(i, i) = q[sym.idx[i][i]];
        for (int j = i + 1; j < d; ++j) {
          uint32_t hv = field.mul(field.half(), q[sym.idx[i][j]]);
          a.at(i, j) = hv;
          a.at(j, i) = hv;
        }
      }
      best_a = a;
    }
  }

  OraclePiece piece = whole_piece(f, best_a, best_freq);
  piece.correlation = best_mag;
  return {{piece}, best_mag};
}

OracleResult inverse_u3_derivative_fit(const SpaceFunction& f, Rng& rng, int trials,
                                       int depth_cap, double weak_threshold) {
  if (trials < 1) throw std::invalid_argument("oracle needs at least one trial");
  return derivative_fit_impl(f, rng, trials, depth_cap, weak_threshold);
}

OracleResult invoke_oracle(OracleKind kind, const SpaceFunction& f, Rng& rng, int trials,
                           uint64_t exhaustive_cap) {
  switch (kind) {
    case OracleKind::exhaustive:
      return inverse_u3_exhaustive(f);
    case OracleKind::derivative_fit:
      return inverse_u3_derivative_fit(f, rng, trials);
    case OracleKind::automatic: {
      const int d = f.domain().dim();
      uint64_t forms = 1;
      bool small = true;
      for (int i = 0; i < d * (d + 1) / 2 && small; ++i) {
        forms *= f.domain().modulus();
        if (forms > exhaustive_cap) small = false;
      }
      if (small) return inverse_u3_exhaustive(f);
      return inverse_u3_derivative_fit(f, rng, trials);
    }
  }
  throw std::logic_error("unknown oracle kind");
}

}  // namespace fourap
