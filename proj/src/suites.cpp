#include "fourap/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fourap/cyclotomic.hpp"
#include "fourap/generators.hpp"
#include "fourap/gowers.hpp"
#include "fourap/inverse_u3.hpp"
#include "fourap/kvn.hpp"
#include "fourap/rank_reduce.hpp"
#include "fourap/transform.hpp"

namespace fourap {
namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

ModMatrix random_symmetric(uint32_t p, int n, Rng& rng) {
  ModMatrix m(n, n, p);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      uint32_t v = static_cast<uint32_t>(rng.uniform(p));
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  return m;
}

QuadraticForm random_form(const AffineSpace& w, Rng& rng) {
  int n = w.ambient_dim();
  std::vector<uint32_t> r(n);
  for (auto& x : r) x = static_cast<uint32_t>(rng.uniform(w.modulus()));
  return QuadraticForm(w, random_symmetric(w.modulus(), n, rng), r,
                       static_cast<uint32_t>(rng.uniform(w.modulus())));
}

SpaceFunction random_bounded_real(const AffineSpace& w, Rng& rng) {
  std::vector<cplx> vals(w.size());
  for (auto& v : vals) v = 2.0 * rng.uniform_real() - 1.0;
  return SpaceFunction(w, std::move(vals), true);
}

SpaceFunction phase_function(const QuadraticForm& q) {
  auto chars = character_table(q.domain().modulus());
  std::vector<cplx> vals(q.domain().size());
  for (uint64_t i = 0; i < vals.size(); ++i) vals[i] = chars[q.evaluate_at(i)];
  return SpaceFunction(q.domain(), std::move(vals), true);
}

// Real bounded function constant on the atoms of the factor.
SpaceFunction measurable_function(const QuadraticFactor& q, Rng& rng) {
  uint64_t configs = 1;
  for (int i = 0; i < q.complexity(); ++i) configs *= q.domain().modulus();
  std::vector<double> per_config(configs);
  for (auto& v : per_config) v = 2.0 * rng.uniform_real() - 1.0;
  std::vector<cplx> vals(q.domain().size());
  for (uint64_t i = 0; i < vals.size(); ++i) vals[i] = per_config[q.configuration_index(i)];
  return SpaceFunction(q.domain(), std::move(vals), true);
}

// d forms on w with every nonzero combination of positive rank; returns the
// measured separation level min_combination_rank.
std::pair<QuadraticFactor, int> verified_factor(const AffineSpace& w, int d, Rng& rng) {
  for (;;) {
    std::vector<QuadraticForm> forms;
    for (int i = 0; i < d; ++i)
      forms.push_back(random_form_of_rank(w, w.dim() - static_cast<int>(rng.uniform(2)), rng));
    QuadraticFactor q(w, std::move(forms));
    int r = q.min_combination_rank();
    if (r >= 1) return {q, r};
  }
}

struct Recorder {
  std::vector<CheckRecord> records;
  double started = 0;

  void start() { started = now_ms(); }
  void upper(const std::string& lemma, const std::string& inputs, double lhs, double rhs,
             const std::string& bound) {
    records.push_back({lemma, inputs, lhs, rhs, bound, lhs <= rhs, now_ms() - started});
    started = now_ms();
  }
  void lower(const std::string& lemma, const std::string& inputs, double lhs, double rhs,
             const std::string& bound) {
    records.push_back({lemma, inputs, lhs, rhs, bound, lhs >= rhs, now_ms() - started});
    started = now_ms();
  }
};

std::string tag(const SuiteConfig& cfg, int trial, const std::string& extra = "") {
  std::ostringstream s;
  s << "p=" << cfg.p << " n=" << cfg.n << " seed=" << cfg.seed << " trial=" << trial;
  if (!extra.empty()) s << " " << extra;
  return s.str();
}

// --- gauss: magnitude bound, vanishing off the image, exact square norm ----

std::vector<CheckRecord> suite_gauss(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  for (int trial = 0; trial < 500; ++trial) {
    QuadraticForm q = random_form(w, rng);
    std::ostringstream extra;
    extra << "rank=" << q.rank() << " in_image=" << (q.linear_part_in_image() ? 1 : 0);
    rec.start();
    double mag = q.gauss_sum_magnitude();
    if (q.linear_part_in_image()) {
      rec.upper("gauss-magnitude", tag(cfg, trial, extra.str()), mag,
                std::pow(cfg.p, -q.rank() / 2.0) + 1e-9, "p^(-rank/2) + 1e-9");
      rec.start();
      CyclotomicInt sum = exact_character_sum(q, w);
      auto sq = sum.norm_squared().as_rational_integer();
      double expect = std::pow(cfg.p, 2.0 * cfg.n - q.rank());
      rec.records.push_back({"gauss-exact", tag(cfg, trial, extra.str()),
                             sq ? static_cast<double>(*sq) : -1.0, expect,
                             "|sum|^2 = p^(2 dim - rank), exact integers",
                             sq && static_cast<double>(*sq) == expect, now_ms() - rec.started});
      rec.start();
    } else {
      rec.upper("gauss-vanishing", tag(cfg, trial, extra.str()), mag, 1e-9,
                "0 + 1e-9 (linear part off the image)");
    }
  }
  return rec.records;
}

// --- gvn: progression average bounded by the smallest U3 norm --------------

std::vector<CheckRecord> suite_gvn(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  const int trials = w.size() <= 25 ? 200 : 50;
  for (int trial = 0; trial < trials; ++trial) {
    SpaceFunction f0 = random_bounded_real(w, rng);
    SpaceFunction f1 = random_bounded_real(w, rng);
    SpaceFunction f2 = random_bounded_real(w, rng);
    SpaceFunction f3 = random_bounded_real(w, rng);
    rec.start();
    GvnReport rep = gvn_bound_check(f0, f1, f2, f3);
    rec.upper("gvn-bound", tag(cfg, trial), rep.t_abs, rep.min_u3 + 1e-9,
              "min_i ||f_i||_U3 + 1e-9");
    if (w.size() <= 125) {
      // Direct-loop agreement: all four functions on tiny domains, one per
      // quadruple on F_p^3 where the quartic loop costs ~0.25 s.
      const SpaceFunction* fs[4] = {&f0, &f1, &f2, &f3};
      int lo = w.size() <= 25 ? 0 : trial % 4;
      int hi = w.size() <= 25 ? 4 : lo + 1;
      for (int i = lo; i < hi; ++i) {
        rec.start();
        double fast = u3_norm(*fs[i]);
        double direct = u3_norm_naive(*fs[i]);
        std::ostringstream extra;
        extra << "slot=" << i;
        rec.upper("u3-agreement", tag(cfg, trial, extra.str()), std::abs(fast - direct), 1e-8,
                  "|fast - direct| <= 1e-8");
      }
    }
  }
  return rec.records;
}

// --- telescoping: exact identity and the 4||f-g||_U3 bound -----------------

std::vector<CheckRecord> suite_telescoping(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  for (int trial = 0; trial < 100; ++trial) {
    SpaceFunction f = random_bounded_real(w, rng);
    SpaceFunction g = random_bounded_real(w, rng);
    rec.start();
    TelescopingReport rep = telescoping_bound_check(f, g);
    rec.upper("telescoping-identity", tag(cfg, trial), rep.identity_error, 1e-10,
              "|T(f)-T(g) - four mixed terms| <= 1e-10");
    rec.upper("telescoping-bound", tag(cfg, trial), rep.lhs, rep.rhs + 1e-9,
              "4 ||f-g||_U3 + 1e-9");
  }
  return rec.records;
}

// --- averaging: space mean vs configuration mean ---------------------------

std::vector<CheckRecord> suite_averaging(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  for (int trial = 0; trial < 50; ++trial) {
    int d = 1 + trial % 2;
    auto [q, r] = verified_factor(w, d, rng);
    SpaceFunction f = measurable_function(q, rng);
    std::ostringstream extra;
    extra << "d=" << d << " r=" << r;
    rec.start();
    AveragingReport rep = averaging_lemma_check(q, r, f);
    rec.upper("averaging-bound", tag(cfg, trial, extra.str()), rep.diff, rep.bound + 1e-9,
              "p^((d-r)/2) + 1e-9");
  }
  return rec.records;
}

// --- counting: progression average vs configuration Fourier sum ------------

std::vector<CheckRecord> suite_counting(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  for (int trial = 0; trial < 50; ++trial) {
    int d = 1 + trial % 2;
    auto [q, r] = verified_factor(w, d, rng);
    SpaceFunction f = measurable_function(q, rng);
    std::ostringstream extra;
    extra << "d=" << d << " r=" << r;
    rec.start();
    CountingReport rep = counting_lemma_check(q, r, f, rng, 10, 2);
    rec.upper("counting-bound", tag(cfg, trial, extra.str()), rep.diff, rep.bound + 1e-9,
              "p^((4d-r)/2) + 1e-9");
    for (size_t i = 0; i < rep.samples.size(); ++i) {
      const OscillationSample& s = rep.samples[i];
      std::ostringstream se;
      se << extra.str() << " sample=" << i;
      if (s.in_constraint_set) {
        rec.upper("m-oscillation-on", tag(cfg, trial, se.str()), std::abs(s.magnitude - 1.0),
                  1e-10, "|m - 1| <= 1e-10 on the constraint set");
      } else {
        rec.upper("m-oscillation-off", tag(cfg, trial, se.str()), s.magnitude,
                  std::pow(cfg.p, -r / 2.0) + 1e-9, "p^(-r/2) + 1e-9 off the constraint set");
      }
    }
  }
  return rec.records;
}

// --- positivity: progression average of the conditional expectation --------

std::vector<CheckRecord> suite_positivity(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  const double alphas[3] = {0.2, 0.5, 0.8};
  int trial = 0;
  for (double alpha : alphas) {
    for (int i = 0; i < 10; ++i, ++trial) {
      PointSet a = gen_random(w, alpha, rng);
      if (a.count() == 0) continue;
      QuadraticFactor q = QuadraticFactor::trivial(w);
      std::ostringstream extra;
      extra << "alpha=" << alpha << " measured=" << a.density() << " d=0";
      rec.start();
      PositivityReport rep = positivity_check(q, a, a.density());
      rec.lower("positivity", tag(cfg, trial, extra.str()), rep.t_value,
                rep.threshold - 1e-9, "alpha^4 - 5 p^(-3d) - 1e-9, rank hypothesis verified");
    }
  }
  return rec.records;
}

// Desk-scale companion: complexity-1 factors cannot reach separation level
// 10, so the rank hypothesis is unverifiable; the inequality itself is still
// evaluated and reported under a distinct lemma id.
std::vector<CheckRecord> suite_positivity_frontier(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  const double alphas[3] = {0.2, 0.5, 0.8};
  int trial = 0;
  for (double alpha : alphas) {
    for (int i = 0; i < 5; ++i, ++trial) {
      PointSet a = gen_random(w, alpha, rng);
      if (a.count() == 0) continue;
      QuadraticFactor q(w, {random_form_of_rank(w, w.dim(), rng)});
      std::ostringstream extra;
      extra << "alpha=" << alpha << " measured=" << a.density() << " d=1 r=" << q.forms()[0].rank()
            << " rank_hypothesis=unverified";
      rec.start();
      PositivityReport rep = positivity_check(q, a, a.density(), true);
      rec.lower("positivity-frontier", tag(cfg, trial, extra.str()), rep.t_value,
                rep.threshold - 1e-9,
                "alpha^4 - 5 p^(-3d) - 1e-9, rank hypothesis NOT verifiable at this scale");
    }
  }
  return rec.records;
}

// --- rank reduction: refinement, codimension cap, separation ---------------

std::vector<CheckRecord> suite_rank_reduce(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  for (int trial = 0; trial < 50; ++trial) {
    int d = 1 + trial % 3;
    int r = 1 + trial % 2;
    // Degenerate instances: a rank-deficient seed form, plus (for d >= 2) a
    // scalar multiple shifted by a linear form, plus (d = 3) a generic form.
    std::vector<QuadraticForm> forms;
    int low_rank = static_cast<int>(rng.uniform(std::min<uint64_t>(3, w.dim() + 1)));
    forms.push_back(random_form_of_rank(w, low_rank, rng));
    if (d >= 2) {
      QuadraticForm lin(w, ModMatrix(w.dim(), w.dim(), cfg.p),
                        [&] {
                          std::vector<uint32_t> v(w.dim());
                          for (auto& x : v) x = static_cast<uint32_t>(rng.uniform(cfg.p));
                          return v;
                        }(),
                        static_cast<uint32_t>(rng.uniform(cfg.p)));
      forms.push_back(forms[0]
                          .add_scaled(forms[0], static_cast<uint32_t>(rng.uniform(cfg.p - 1)))
                          .add_scaled(lin, 1));
    }
    if (d >= 3) forms.push_back(random_form(w, rng));
    QuadraticFactor factor(w, forms);
    std::ostringstream extra;
    extra << "d=" << d << " r=" << r << " seed_rank=" << low_rank;

    rec.start();
    LocalQuadraticFactor out = rank_reduce(factor, r);
    bool refines = out.level2().refines(factor.to_factor());
    rec.lower("rank-reduce-refines", tag(cfg, trial, extra.str()), refines ? 1.0 : 0.0, 1.0,
              "glued partition refines the input partition");
    rec.start();
    rec.upper("rank-reduce-codim", tag(cfg, trial, extra.str()),
              static_cast<double>(out.max_codim()), static_cast<double>(d * r + d * d + d),
              "codim <= d r + d^2 + d");
    // Atoms that lost every form have nothing left to separate; the level is
    // the minimum over pieces that still carry forms.
    int min_sep = r;
    bool any = false;
    for (const LocalAtom& atom : out.atoms()) {
      if (atom.factor.complexity() == 0) continue;
      int s = atom.factor.min_combination_rank();
      min_sep = any ? std::min(min_sep, s) : s;
      any = true;
    }
    rec.lower("rank-reduce-separation", tag(cfg, trial, extra.str()),
              static_cast<double>(min_sep), static_cast<double>(r),
              "every nonzero combination on every piece has rank >= r");
  }
  return rec.records;
}

// --- oracle: planted-phase recovery ----------------------------------------

std::vector<CheckRecord> suite_oracle(const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  Recorder rec;
  // Exhaustive search enumerates p^(d(d+1)/2 + d) candidate forms; dimension 3
  // stays affordable only at p = 5.
  const int exhaustive_dim_cap = cfg.p == 5 ? 3 : 2;
  for (int trial = 0; trial < 20; ++trial) {
    int dim = 2 + trial % std::max(1, exhaustive_dim_cap - 1);
    AffineSpace w = AffineSpace::full(cfg.p, dim);
    QuadraticForm planted = random_form(w, rng);
    SpaceFunction f = phase_function(planted);
    rec.start();
    OracleResult res = inverse_u3_exhaustive(f);
    bool constant_diff = true;
    if (res.pieces.size() == 1) {
      PrimeField field(cfg.p);
      uint32_t d0 = field.sub(planted.evaluate_at(0), res.pieces[0].phase.evaluate_at(0));
      for (uint64_t i = 1; i < w.size() && constant_diff; ++i)
        constant_diff =
            field.sub(planted.evaluate_at(i), res.pieces[0].phase.evaluate_at(i)) == d0;
    } else {
      constant_diff = false;
    }
    std::ostringstream extra;
    extra << "dim=" << dim << " rank=" << planted.rank()
          << " phase_matches_up_to_constant=" << (constant_diff ? 1 : 0);
    rec.lower("oracle-exhaustive", tag(cfg, trial, extra.str()),
              constant_diff ? res.score : 0.0, 1.0 - 1e-9,
              "correlation 1 and recovered phase differs by a constant");
  }
  int dim = std::max(2, std::min(cfg.n, 3));
  AffineSpace w = AffineSpace::full(cfg.p, dim);
  for (int trial = 0; trial < 20; ++trial) {
    int rank = std::max(2, dim - static_cast<int>(rng.uniform(2)));
    QuadraticForm planted = random_form_of_rank(w, rank, rng);
    SpaceFunction f = phase_function(planted);
    std::ostringstream extra;
    extra << "dim=" << dim << " rank=" << rank;
    rec.start();
    OracleResult res = inverse_u3_derivative_fit(f, rng);
    rec.lower("oracle-derivative-fit", tag(cfg, trial, extra.str()), res.score, 0.99,
              "recovery score >= 0.99 for planted rank >= 2");
  }
  return rec.records;
}

// --- energy: refinement monotonicity and the orthogonal split --------------

std::vector<CheckRecord> suite_energy(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  for (int trial = 0; trial < 50; ++trial) {
    SpaceFunction f = random_bounded_real(w, rng);
    Factor b1 = QuadraticFactor(w, {random_form(w, rng)}).to_factor();
    Factor b2 = QuadraticFactor(w, {random_form(w, rng)}).to_factor();
    rec.start();
    double e1 = energy(f, b1);
    double e2 = energy(f, b2);
    double ej = energy(f, join(b1, b2));
    rec.lower("energy-monotone", tag(cfg, trial), ej, std::max(e1, e2) - 1e-12,
              "energy never decreases under refinement");
    rec.start();
    SpaceFunction pr = conditional_expectation(f, b1);
    SpaceFunction residual = f - pr;
    double total = 0, kept = 0, lost = 0;
    for (uint64_t i = 0; i < w.size(); ++i) {
      total += std::norm(f[i]);
      kept += std::norm(pr[i]);
      lost += std::norm(residual[i]);
    }
    rec.upper("energy-orthogonal", tag(cfg, trial),
              std::abs(total - kept - lost) / static_cast<double>(w.size()), 1e-10,
              "||f||^2 = ||E(f|B)||^2 + ||f - E(f|B)||^2 within 1e-10");
  }
  return rec.records;
}

// --- e2e: the full search on four canonical inputs -------------------------

void e2e_case(Recorder& rec, const SuiteConfig& cfg, const std::string& name, const PointSet& a,
              double alpha, double epsilon, KvnParams params) {
  RichSubspaceResult res = find_rich_subspace(a, alpha, epsilon, params);
  auto label = [&](const std::string& detail) {
    std::ostringstream s;
    s << "case=" << name << " p=" << cfg.p << " n=" << cfg.n << " seed=" << cfg.seed << " "
      << detail;
    return s.str();
  };
  for (const CertificateLine& line : res.certificate) {
    rec.records.push_back({"rich-certificate", label("line=" + line.name), line.lhs, line.rhs,
                           line.name, line.pass, now_ms() - rec.started});
    rec.started = now_ms();
  }
  const auto& log = res.outcome.log;
  double min_gain = 1.0;
  for (size_t i = 1; i < log.size(); ++i)
    min_gain = std::min(min_gain, log[i].energy - log[i - 1].energy);
  std::ostringstream iters;
  iters << "iterations=" << log.size();
  rec.lower("e2e-energy-log", label(iters.str()), min_gain, 1e-12,
            "energy strictly increases across refinements");
  rec.upper("e2e-uniformity", label(""), res.outcome.approximation_error, epsilon + 1e-9,
            "approximation error <= eta + 1e-9");
  rec.lower("e2e-density", label(""), res.outcome.density, alpha - epsilon - 1e-9,
            "piece density >= alpha - epsilon - 1e-9");
  int sep = res.outcome.factor.complexity() == 0 ? params.rank_target
                                                 : res.outcome.factor.min_combination_rank();
  rec.lower("e2e-separation", label(""), static_cast<double>(sep),
            static_cast<double>(params.rank_target),
            "piece factor separated at the configured rank (vacuous without forms)");
}

std::vector<CheckRecord> suite_e2e(const SuiteConfig& cfg) {
  AffineSpace w = AffineSpace::full(cfg.p, cfg.n);
  Rng rng(cfg.seed);
  Recorder rec;
  KvnParams params;
  params.seed = cfg.seed;
  params.oracle_trials = 400;  // the heuristic oracle needs retries on mixtures

  rec.start();
  PointSet full(w, std::vector<uint8_t>(w.size(), 1));
  e2e_case(rec, cfg, "full-space", full, 1.0, 0.25, params);

  PointSet hyper = gen_subspace(w, 1, rng);
  e2e_case(rec, cfg, "hyperplane", hyper, hyper.density(), 0.3, params);

  QuadraticForm form = random_form_of_rank(w, w.dim(), rng);
  PointSet level = gen_quad_level_set(form, 0);
  e2e_case(rec, cfg, "quad-level-set", level, level.density(), 0.15, params);

  PointSet random = gen_random(w, 0.5, rng);
  e2e_case(rec, cfg, "random", random, random.density(), 0.45, params);

  return rec.records;
}

using SuiteFn = std::function<std::vector<CheckRecord>(const SuiteConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"gauss", suite_gauss},
      {"gvn", suite_gvn},
      {"telescoping", suite_telescoping},
      {"averaging", suite_averaging},
      {"counting", suite_counting},
      {"positivity", suite_positivity},
      {"positivity-frontier", suite_positivity_frontier},
      {"rank-reduce", suite_rank_reduce},
      {"oracle", suite_oracle},
      {"energy", suite_energy},
      {"e2e", suite_e2e},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_table()) names.push_back(name);
  return names;
}

bool is_suite(const std::string& name) {
  for (const auto& [n, fn] : suite_table())
    if (n == name) return true;
  return false;
}

std::vector<CheckRecord> run_suite(const std::string& name, const SuiteConfig& cfg) {
  for (const auto& [n, fn] : suite_table())
    if (n == name) return fn(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace fourap
