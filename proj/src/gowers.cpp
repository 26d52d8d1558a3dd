#include "fourap/gowers.hpp"

#include <cmath>
#include <stdexcept>

#include "fourap/group_index.hpp"

namespace fourap {

namespace {

void require_same_domain(const SpaceFunction& a, const SpaceFunction& b, const char* who) {
  if (!a.domain().same_point_set(b.domain())) {
    throw std::invalid_argument(std::string(who) + ": domain mismatch");
  }
}

void require_bounded(const SpaceFunction& f, const char* who) {
  if (!f.bounded()) throw std::invalid_argument(std::string(who) + ": function is not flagged bounded");
}

// Real-valued view of a function's values; empty when any entry has an
// imaginary part.
std::vector<double> real_view(const std::vector<cplx>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& z : v) {
    if (std::abs(z.imag()) > 1e-14) return {};
    out.push_back(z.real());
  }
  return out;
}

}  // namespace

cplx t_count(const SpaceFunction& f0, const SpaceFunction& f1, const SpaceFunction& f2,
             const SpaceFunction& f3) {
  require_same_domain(f0, f1, "t_count");
  require_same_domain(f0, f2, "t_count");
  require_same_domain(f0, f3, "t_count");
  const AffineSpace& w = f0.domain();
  GroupIndex g(w.modulus(), w.dim());
  uint64_t size = g.size();
  std::vector<uint32_t> tr1(size), tr2(size), tr3(size);
  std::complex<long double> acc = 0.0L;
  for (uint64_t s = 0; s < size; ++s) {
    uint32_t s1 = static_cast<uint32_t>(s);
    g.translation_into(s1, tr1.data());
    g.translation_into(g.scale(2, s1), tr2.data());
    g.translation_into(g.scale(3, s1), tr3.data());
    cplx inner = 0.0;
    for (uint64_t t = 0; t < size; ++t) {
      inner += f0[t] * f1[tr1[t]] * f2[tr2[t]] * f3[tr3[t]];
    }
    acc += inner;
  }
  long double norm = static_cast<long double>(size) * static_cast<long double>(size);
  return cplx(static_cast<double>(acc.real() / norm), static_cast<double>(acc.imag() / norm));
}

cplx t_count(const SpaceFunction& f) { return t_count(f, f, f, f); }

uint64_t progression_pair_count(const PointSet& a) {
  const AffineSpace& w = a.domain();
  GroupIndex g(w.modulus(), w.dim());
  uint64_t size = g.size();
  const auto& mask = a.mask();
  std::vector<uint32_t> tr1(size), tr2(size), tr3(size);
  uint64_t count = 0;
  for (uint64_t s = 0; s < size; ++s) {
    uint32_t s1 = static_cast<uint32_t>(s);
    g.translation_into(s1, tr1.data());
    g.translation_into(g.scale(2, s1), tr2.data());
    g.translation_into(g.scale(3, s1), tr3.data());
    for (uint64_t t = 0; t < size; ++t) {
      count += mask[t] & mask[tr1[t]] & mask[tr2[t]] & mask[tr3[t]];
    }
  }
  return count;
}

double u2_norm(const SpaceFunction& f) {
  const AffineSpace& w = f.domain();
  auto fh = dft(f.values(), w.modulus(), w.dim());
  long double acc = 0.0L;
  for (const auto& z : fh) {
    long double m = std::norm(z);
    acc += m * m;
  }
  return std::pow(static_cast<double>(acc), 0.25);
}

double u2_norm_naive(const SpaceFunction& f) {
  const AffineSpace& w = f.domain();
  GroupIndex g(w.modulus(), w.dim());
  uint64_t size = g.size();
  std::vector<uint32_t> tr1(size), tr2(size), tr12(size);
  std::complex<long double> acc = 0.0L;
  for (uint64_t h1 = 0; h1 < size; ++h1) {
    g.translation_into(static_cast<uint32_t>(h1), tr1.data());
    for (uint64_t h2 = 0; h2 < size; ++h2) {
      g.translation_into(static_cast<uint32_t>(h2), tr2.data());
      g.translation_into(g.add(static_cast<uint32_t>(h1), static_cast<uint32_t>(h2)), tr12.data());
      cplx inner = 0.0;
      for (uint64_t t = 0; t < size; ++t) {
        inner += f[t] * std::conj(f[tr1[t]]) * std::conj(f[tr2[t]]) * f[tr12[t]];
      }
      acc += inner;
    }
  }
  long double n = static_cast<long double>(size);
  long double value = acc.real() / (n * n * n);
  return std::pow(static_cast<double>(std::max(value, 0.0L)), 0.25);
}

double u3_norm(const SpaceFunction& f) {
  const AffineSpace& w = f.domain();
  uint32_t p = w.modulus();
  int d = w.dim();
  GroupIndex g(p, d);
  uint64_t size = g.size();
  std::vector<uint32_t> tr(size);
  std::vector<cplx> deriv(size);
  long double acc = 0.0L;
  for (uint64_t h = 0; h < size; ++h) {
    g.translation_into(static_cast<uint32_t>(h), tr.data());
    for (uint64_t t = 0; t < size; ++t) deriv[t] = f[t] * std::conj(f[tr[t]]);
    auto dh = dft(deriv, p, d);
    long double u2_fourth = 0.0L;
    for (const auto& z : dh) {
      long double m = std::norm(z);
      u2_fourth += m * m;
    }
    acc += u2_fourth;
  }
  long double eighth = acc / static_cast<long double>(size);
  return std::pow(static_cast<double>(eighth), 0.125);
}

double u3_norm_naive(const SpaceFunction& f, uint64_t size_gate) {
  const AffineSpace& w = f.domain();
  uint64_t size = w.size();
  if (size > size_gate) {
    throw std::invalid_argument("u3_norm_naive: domain size " + std::to_string(size) +
                                " exceeds the quartic-loop gate " + std::to_string(size_gate));
  }
  GroupIndex g(w.modulus(), w.dim());
  std::vector<uint32_t> tr1(size), tr2(size), tr3(size);
  auto real_vals = real_view(f.values());
  long double total = 0.0L;
  if (!real_vals.empty()) {
    const double* fr = real_vals.data();
    std::vector<double> w1(size), w2(size);
    for (uint64_t h1 = 0; h1 < size; ++h1) {
      g.translation_into(static_cast<uint32_t>(h1), tr1.data());
      for (uint64_t t = 0; t < size; ++t) w1[t] = fr[t] * fr[tr1[t]];
      for (uint64_t h2 = 0; h2 < size; ++h2) {
        g.translation_into(static_cast<uint32_t>(h2), tr2.data());
        for (uint64_t t = 0; t < size; ++t) w2[t] = w1[t] * w1[tr2[t]];
        long double plane = 0.0L;
        for (uint64_t h3 = 0; h3 < size; ++h3) {
          g.translation_into(static_cast<uint32_t>(h3), tr3.data());
          double inner = 0.0;
          const uint32_t* tr = tr3.data();
          for (uint64_t t = 0; t < size; ++t) inner += w2[t] * w2[tr[t]];
          plane += inner;
        }
        total += plane;
      }
    }
  } else {
    std::vector<cplx> w1(size), w2(size);
    for (uint64_t h1 = 0; h1 < size; ++h1) {
      g.translation_into(static_cast<uint32_t>(h1), tr1.data());
      for (uint64_t t = 0; t < size; ++t) w1[t] = f[t] * std::conj(f[tr1[t]]);
      for (uint64_t h2 = 0; h2 < size; ++h2) {
        g.translation_into(static_cast<uint32_t>(h2), tr2.data());
        for (uint64_t t = 0; t < size; ++t) w2[t] = w1[t] * std::conj(w1[tr2[t]]);
        std::complex<long double> plane = 0.0L;
        for (uint64_t h3 = 0; h3 < size; ++h3) {
          g.translation_into(static_cast<uint32_t>(h3), tr3.data());
          cplx inner = 0.0;
          for (uint64_t t = 0; t < size; ++t) inner += w2[t] * std::conj(w2[tr3[t]]);
          plane += inner;
        }
        total += plane.real();
      }
    }
  }
  long double n = static_cast<long double>(size);
  long double eighth = total / (n * n * n * n);
  return std::pow(static_cast<double>(std::max(eighth, 0.0L)), 0.125);
}

GvnReport gvn_bound_check(const SpaceFunction& f0, const SpaceFunction& f1,
                          const SpaceFunction& f2, const SpaceFunction& f3) {
  require_bounded(f0, "gvn_bound_check");
  require_bounded(f1, "gvn_bound_check");
  require_bounded(f2, "gvn_bound_check");
  require_bounded(f3, "gvn_bound_check");
  GvnReport rep;
  rep.t_abs = std::abs(t_count(f0, f1, f2, f3));
  rep.u3 = {u3_norm(f0), u3_norm(f1), u3_norm(f2), u3_norm(f3)};
  rep.min_u3 = std::min(std::min(rep.u3[0], rep.u3[1]), std::min(rep.u3[2], rep.u3[3]));
  rep.pass = rep.t_abs <= rep.min_u3 + 1e-9;
  return rep;
}

TelescopingReport telescoping_bound_check(const SpaceFunction& f, const SpaceFunction& g) {
  require_bounded(f, "telescoping_bound_check");
  require_bounded(g, "telescoping_bound_check");
  require_same_domain(f, g, "telescoping_bound_check");
  SpaceFunction diff = f - g;
  cplx tf = t_count(f);
  cplx tg = t_count(g);
  // T(f) - T(g) as a telescoping sum over the slot where f switches to g
  cplx mixed = 0.0;
  const SpaceFunction* slots[4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j < i) slots[j] = &g;
      else if (j == i) slots[j] = &diff;
      else slots[j] = &f;
    }
    mixed += t_count(*slots[0], *slots[1], *slots[2], *slots[3]);
  }
  TelescopingReport rep;
  rep.identity_error = std::abs(tf - tg - mixed);
  rep.lhs = std::abs(tf - tg);
  rep.rhs = 4.0 * u3_norm(diff);
  rep.pass = rep.identity_error <= 1e-10 && rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

double fourier_ap_count(const FactorFunction& ff) {
  if (!ff.is_real()) {
    throw std::invalid_argument("fourier_ap_count: configuration function must be real-valued");
  }
  auto fh = dft(ff.values, ff.p, ff.complexity);
  GroupIndex g(ff.p, ff.complexity);
  long double acc = 0.0L;
  for (uint64_t xi = 0; xi < fh.size(); ++xi) {
    long double a = std::norm(fh[xi]);
    long double b = std::norm(fh[g.scale(3, static_cast<uint32_t>(xi))]);
    acc += a * b;
  }
  return static_cast<double>(acc);
}

cplx m_oscillation(const QuadraticFactor& q, const std::array<std::vector<uint32_t>, 4>& xi) {
  const AffineSpace& w = q.domain();
  uint32_t p = w.modulus();
  int d = q.complexity();
  for (const auto& v : xi) {
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("m_oscillation: frequency length mismatch");
  }
  // combine the factor's forms with each frequency vector, then tabulate
  std::array<std::vector<uint32_t>, 4> table;
  for (int i = 0; i < 4; ++i) {
    QuadraticForm combined = QuadraticForm::zero(w);
    for (int j = 0; j < d; ++j) {
      if (xi[i][j] != 0) combined = combined.add_scaled(q.forms()[j], xi[i][j]);
    }
    table[i] = combined.values();
  }
  auto chars = character_table(p);
  GroupIndex g(p, w.dim());
  uint64_t size = g.size();
  std::vector<uint32_t> tr1(size), tr2(size), tr3(size);
  std::complex<long double> acc = 0.0L;
  for (uint64_t s = 0; s < size; ++s) {
    uint32_t s1 = static_cast<uint32_t>(s);
    g.translation_into(s1, tr1.data());
    g.translation_into(g.scale(2, s1), tr2.data());
    g.translation_into(g.scale(3, s1), tr3.data());
    cplx inner = 0.0;
    for (uint64_t t = 0; t < size; ++t) {
      uint32_t phase = table[0][t] + table[1][tr1[t]] + table[2][tr2[t]] + table[3][tr3[t]];
      inner += chars[phase % p];
    }
    acc += inner;
  }
  long double norm = static_cast<long double>(size) * static_cast<long double>(size);
  return cplx(static_cast<double>(acc.real() / norm), static_cast<double>(acc.imag() / norm));
}

std::array<std::vector<uint32_t>, 4> constraint_tuple(const std::vector<uint32_t>& xi, uint32_t p) {
  PrimeField f(p);
  std::array<std::vector<uint32_t>, 4> out;
  out[0] = xi;
  out[1].resize(xi.size());
  out[2].resize(xi.size());
  out[3].resize(xi.size());
  for (size_t j = 0; j < xi.size(); ++j) {
    out[1][j] = f.neg(f.mul(3, xi[j]));
    out[2][j] = f.mul(3, xi[j]);
    out[3][j] = f.neg(xi[j]);
  }
  return out;
}

bool in_constraint_set(const std::array<std::vector<uint32_t>, 4>& xi, uint32_t p) {
  return constraint_tuple(xi[0], p) == xi;
}

CountingReport counting_lemma_check(const QuadraticFactor& q, int r, const SpaceFunction& f,
                                    Rng& rng, int off_samples, int on_samples) {
  auto sep = q.rank_separation_check(r);
  if (!sep.ok) {
    throw std::invalid_argument("counting_lemma_check: rank separation fails at level " + std::to_string(r));
  }
  if (!f.is_real()) throw std::invalid_argument("counting_lemma_check: function must be real-valued");
  uint32_t p = q.domain().modulus();
  int d = q.complexity();

  CountingReport rep;
  rep.t_direct = t_count(f).real();
  rep.fourier = fourier_ap_count(q.push_to_configuration(f));
  rep.diff = std::abs(rep.t_direct - rep.fourier);
  rep.bound = std::pow(static_cast<double>(p), (4.0 * d - r) / 2.0);
  rep.counting_pass = rep.diff <= rep.bound + 1e-9;

  rep.oscillation_pass = true;
  double off_bound = std::pow(static_cast<double>(p), -r / 2.0);
  if (d > 0) {
    for (int k = 0; k < off_samples; ++k) {
      std::array<std::vector<uint32_t>, 4> xi;
      do {
        for (auto& v : xi) {
          v.resize(d);
          for (auto& c : v) c = static_cast<uint32_t>(rng.uniform(p));
        }
      } while (in_constraint_set(xi, p));
      OscillationSample sample;
      sample.xi = xi;
      sample.magnitude = std::abs(m_oscillation(q, xi));
      sample.in_constraint_set = false;
      sample.pass = sample.magnitude <= off_bound + 1e-9;
      rep.oscillation_pass = rep.oscillation_pass && sample.pass;
      rep.samples.push_back(std::move(sample));
    }
  }
  for (int k = 0; k < on_samples; ++k) {
    std::vector<uint32_t> xi(d);
    for (auto& c : xi) c = static_cast<uint32_t>(rng.uniform(p));
    OscillationSample sample;
    sample.xi = constraint_tuple(xi, p);
    cplx m = m_oscillation(q, sample.xi);
    sample.magnitude = std::abs(m);
    sample.in_constraint_set = true;
    sample.pass = std::abs(m - cplx(1.0)) <= 1e-10;
    rep.oscillation_pass = rep.oscillation_pass && sample.pass;
    rep.samples.push_back(std::move(sample));
  }
  rep.pass = rep.counting_pass && rep.oscillation_pass;
  return rep;
}

AveragingReport averaging_lemma_check(const QuadraticFactor& q, int r, const SpaceFunction& f) {
  auto sep = q.rank_separation_check(r);
  if (!sep.ok) {
    throw std::invalid_argument("averaging_lemma_check: rank separation fails at level " + std::to_string(r));
  }
  uint32_t p = q.domain().modulus();
  int d = q.complexity();
  FactorFunction ff = q.push_to_configuration(f);
  cplx config_mean = 0.0;
  for (const auto& v : ff.values) config_mean += v;
  config_mean /= static_cast<double>(ff.values.size());

  AveragingReport rep;
  rep.space_mean = f.mean().real();
  rep.config_mean = config_mean.real();
  rep.diff = std::abs(f.mean() - config_mean);
  rep.bound = std::pow(static_cast<double>(p), (d - r) / 2.0);
  rep.pass = rep.diff <= rep.bound + 1e-9;
  return rep;
}

PositivityReport positivity_check(const QuadraticFactor& q, const PointSet& a, double alpha,
                                  bool allow_unverified_rank) {
  if (!a.domain().same_point_set(q.domain())) throw std::invalid_argument("positivity_check: domain mismatch");
  if (a.density() + 1e-12 < alpha) {
    throw std::invalid_argument("positivity_check: set density below the stated alpha");
  }
  int d = q.complexity();
  uint32_t p = q.domain().modulus();
  bool rank_ok = q.rank_separation_check(10 * d).ok;
  if (!rank_ok && !allow_unverified_rank) {
    throw std::invalid_argument("positivity_check: rank separation at level 10 d is not verified");
  }
  SpaceFunction expected = conditional_expectation(a.indicator(), q.to_factor());
  PositivityReport rep;
  rep.t_value = t_count(expected).real();
  rep.threshold = std::pow(alpha, 4.0) - 5.0 * std::pow(static_cast<double>(p), -3.0 * d);
  rep.alpha = alpha;
  rep.complexity = d;
  rep.rank_verified = rank_ok;
  rep.pass = rep.t_value >= rep.threshold - 1e-9;
  return rep;
}

}  // namespace fourap
