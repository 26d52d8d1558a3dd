#include "fourap/kvn.hpp"

#include <cmath>
#include <sstream>

#include "fourap/gowers.hpp"
#include "fourap/rank_reduce.hpp"

namespace fourap {
namespace {

constexpr double kTol = 1e-12;

struct AtomState {
  double err;
  bool regular;
  double density;
  SpaceFunction residual;
};

AtomState analyze_atom(const PointSet& a, const LocalAtom& atom, double eta,
                       uint64_t spot_check_limit) {
  PointSet local = a.restrict_to(atom.piece);
  SpaceFunction ind = local.indicator();
  SpaceFunction expected = conditional_expectation(ind, atom.factor.to_factor());
  SpaceFunction residual = ind - expected;
  double err = u3_norm(residual);
  if (atom.piece.size() <= spot_check_limit) {
    double direct = u3_norm_naive(residual);
    if (std::abs(err - direct) > 1e-8)
      throw std::logic_error("fast and direct uniformity norms disagree on a piece");
  }
  return {err, err <= eta + kTol, local.density(), std::move(residual)};
}

}  // namespace

void KvnParams::validate() const {
  if (!(epsilon > 0 && epsilon <= 0.5)) throw std::invalid_argument("epsilon must be in (0, 1/2]");
  if (!(eta > 0 && eta <= 0.5)) throw std::invalid_argument("eta must be in (0, 1/2]");
  if (rank_target < 1) throw std::invalid_argument("rank target must be >= 1");
  if (complexity_cap < 1) throw std::invalid_argument("complexity cap must be >= 1");
  if (iteration_cap < 1) throw std::invalid_argument("iteration cap must be >= 1");
  if (!(min_energy_increment > 0))
    throw std::invalid_argument("energy increment threshold must be positive");
  if (oracle_trials < 1) throw std::invalid_argument("oracle trials must be >= 1");
}

std::string to_string(KvnErrorKind kind) {
  switch (kind) {
    case KvnErrorKind::iteration_cap: return "iteration-cap";
    case KvnErrorKind::energy_stall: return "energy-stall";
    case KvnErrorKind::no_rich_regular_atom: return "no-rich-regular-atom";
    case KvnErrorKind::complexity_cap: return "complexity-cap";
  }
  return "unknown";
}

KvnOutcome kvn_run(const PointSet& a, const KvnParams& params) {
  params.validate();
  if (a.count() == 0) throw std::invalid_argument("the input set is empty");
  const AffineSpace& w = a.domain();
  const double alpha = a.density();
  const SpaceFunction ind = a.indicator();

  LocalQuadraticFactor local = LocalQuadraticFactor::trivial(w);
  std::vector<IterationRecord> log;
  Rng rng(params.seed);
  double prev_energy = 0;

  for (int iter = 0;; ++iter) {
    double en = energy(ind, local.level2());
    std::vector<AtomState> states;
    states.reserve(local.atoms().size());
    double regular_mass = 0;
    for (const LocalAtom& atom : local.atoms()) {
      states.push_back(analyze_atom(a, atom, params.eta, params.spot_check_limit));
      if (states.back().regular) regular_mass += static_cast<double>(atom.piece.size());
    }
    regular_mass /= static_cast<double>(w.size());
    log.push_back({iter, local.atom_count(), regular_mass, en, local.max_codim(),
                   local.max_complexity()});

    if (regular_mass >= 1 - params.epsilon / 2 - kTol) {
      int best = -1;
      for (int i = 0; i < local.atom_count(); ++i) {
        if (!states[i].regular) continue;
        if (states[i].density + kTol < alpha - params.epsilon) continue;
        if (best < 0 || states[i].density > states[best].density) best = i;
      }
      if (best < 0) {
        throw KvnError(KvnErrorKind::no_rich_regular_atom,
                       "every sufficiently dense piece fails the uniformity threshold",
                       std::move(log));
      }
      const LocalAtom& atom = local.atoms()[best];
      // Re-derive the selected piece's guarantees from scratch.
      AtomState fresh = analyze_atom(a, atom, params.eta, params.spot_check_limit);
      if (fresh.err > params.eta + kTol)
        throw std::logic_error("selected piece fails the uniformity threshold on recheck");
      if (fresh.density + kTol < alpha - params.epsilon)
        throw std::logic_error("selected piece fails the density bound on recheck");
      if (!atom.factor.rank_separation_check(params.rank_target).ok)
        throw std::logic_error("selected piece factor fails rank separation on recheck");
      return {atom.piece, atom.factor, fresh.density, fresh.err, std::move(log)};
    }

    if (iter > 0 && en < prev_energy + params.min_energy_increment) {
      std::ostringstream msg;
      msg << "energy stalled at " << en << " after " << iter << " refinements";
      throw KvnError(KvnErrorKind::energy_stall, msg.str(), std::move(log));
    }
    prev_energy = en;
    if (iter == params.iteration_cap) {
      throw KvnError(KvnErrorKind::iteration_cap,
                     "refinement budget exhausted before reaching uniformity",
                     std::move(log));
    }

    std::vector<LocalAtom> next;
    for (int i = 0; i < local.atom_count(); ++i) {
      const LocalAtom& atom = local.atoms()[i];
      if (states[i].regular) {
        next.push_back(atom);
        continue;
      }
      OracleResult res = invoke_oracle(params.oracle, states[i].residual, rng,
                                       params.oracle_trials);
      for (const OraclePiece& op : res.pieces) {
        QuadraticFactor merged =
            atom.factor.restrict_to(op.piece).merge(QuadraticFactor(op.piece, {op.phase}));
        LocalQuadraticFactor reduced = rank_reduce(merged, params.rank_target);
        for (const LocalAtom& na : reduced.atoms()) {
          if (na.factor.complexity() > params.complexity_cap) {
            throw KvnError(KvnErrorKind::complexity_cap,
                           "piece factor complexity exceeded the configured cap",
                           std::move(log));
          }
          next.push_back(na);
        }
      }
    }
    local = LocalQuadraticFactor(w, std::move(next));
  }
}

namespace {

RichSubspaceResult build_certificate(const PointSet& a, KvnOutcome outcome, double alpha,
                                     double epsilon, double eta) {
  const AffineSpace& sub = outcome.subspace;
  const uint32_t p = sub.modulus();
  PointSet local = a.restrict_to(sub);
  SpaceFunction ind = local.indicator();
  SpaceFunction expected = conditional_expectation(ind, outcome.factor.to_factor());

  const double t_ind = t_count(ind).real();
  const double t_exp = t_count(expected).real();
  const uint64_t pairs = progression_pair_count(local);
  const double fourier = fourier_ap_count(outcome.factor.push_to_configuration(expected));

  const int d = outcome.factor.complexity();
  const int r = outcome.factor.min_combination_rank();
  const double avg_dev = d == 0 ? 0.0 : std::pow(p, (d - r) / 2.0);
  const double count_dev = d == 0 ? 0.0 : std::pow(p, (4.0 * d - r) / 2.0);

  const double beta = outcome.density;
  const double err = outcome.approximation_error;
  const double size2 = static_cast<double>(sub.size()) * static_cast<double>(sub.size());

  std::vector<CertificateLine> cert;
  auto upper = [&](const std::string& name, double lhs, double rhs) {
    cert.push_back({name, lhs, rhs, lhs <= rhs + 1e-9});
  };
  auto lower = [&](const std::string& name, double lhs, double rhs) {
    cert.push_back({name, lhs, rhs, lhs >= rhs - 1e-9});
  };
  lower("density", beta, alpha - epsilon);
  upper("uniformity", err, eta);
  upper("model-closeness", std::abs(t_ind - t_exp), 4 * err);
  upper("fourier-consistency", std::abs(t_exp - fourier), count_dev);
  lower("model-positivity", t_exp,
        beta * beta * beta * beta - 4 * avg_dev - count_dev);
  lower("progression-count", t_ind,
        beta * beta * beta * beta - 4 * err - 4 * avg_dev - count_dev);
  upper("count-consistency", std::abs(static_cast<double>(pairs) - t_ind * size2),
        1e-6 * size2);

  bool pass = true;
  for (const CertificateLine& line : cert) pass = pass && line.pass;

  return {std::move(outcome), pairs, t_ind, t_exp, fourier, r, avg_dev, count_dev,
          std::move(cert), pass};
}

}  // namespace

RichSubspaceResult find_rich_subspace(const PointSet& a, double alpha, double epsilon,
                                      KvnParams params) {
  if (a.density() + kTol < alpha)
    throw std::invalid_argument("set density is below the claimed alpha");
  params.epsilon = epsilon;
  params.eta = epsilon;
  params.validate();
  KvnOutcome outcome = kvn_run(a, params);
  return build_certificate(a, std::move(outcome), alpha, epsilon, epsilon);
}

ApFreeReport deduce_ap_free_bound(const PointSet& a, KvnParams params) {
  if (a.count() == 0) throw std::invalid_argument("the input set is empty");
  if (progression_pair_count(a) != a.count())
    throw std::invalid_argument("the input set contains a nontrivial progression");

  const double alpha = a.density();
  const double epsilon = std::min(alpha * alpha * alpha * alpha / 2, 0.49);
  const double eta = std::max(epsilon, params.eta);
  params.epsilon = epsilon;
  params.eta = eta;
  params.validate();

  KvnOutcome outcome = kvn_run(a, params);
  RichSubspaceResult rich = build_certificate(a, std::move(outcome), alpha, epsilon, eta);

  const uint64_t trivial = a.restrict_to(rich.outcome.subspace).count();
  const bool consistent = rich.pair_count == trivial;
  const uint64_t size = rich.outcome.subspace.size();
  const double predicted = 2 / (alpha * alpha * alpha * alpha);
  const bool pass = consistent && rich.pass;

  return {alpha,     epsilon,
          eta,       trivial,
          consistent, size,
          predicted, static_cast<double>(size) <= predicted + 1e-9,
          std::move(rich), pass};
}

}  // namespace fourap
