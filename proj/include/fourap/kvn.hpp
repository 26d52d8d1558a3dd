#pragma once

#include <stdexcept>
#include <string>

#include "fourap/inverse_u3.hpp"
#include "fourap/factor.hpp"

namespace fourap {

struct KvnParams {
  double epsilon = 0.25;             // density loss budget, in (0, 1/2]
  double eta = 0.25;                 // per-piece uniformity threshold, in (0, 1/2]
  int rank_target = 2;               // separation level enforced on every piece factor
  int complexity_cap = 4;            // max forms per piece factor
  int iteration_cap = 64;            // max refinement rounds before giving up
  double min_energy_increment = 1e-6;  // required energy gain per refinement
  OracleKind oracle = OracleKind::automatic;
  int oracle_trials = 20;
  uint64_t seed = 1;
  uint64_t spot_check_limit = 25;    // pieces up to this size get a direct-norm recheck

  void validate() const;
};

struct IterationRecord {
  int iteration;
  int atom_count;
  double regular_mass;   // size fraction of pieces meeting the uniformity threshold
  double energy;
  int max_codim;
  int max_complexity;
};

enum class KvnErrorKind { iteration_cap, energy_stall, no_rich_regular_atom, complexity_cap };

std::string to_string(KvnErrorKind kind);

// Raised when the iteration cannot meet its guarantees: the configured caps
// ran out, the energy stopped increasing, or no uniform piece is dense enough.
class KvnError : public std::runtime_error {
 public:
  KvnError(KvnErrorKind kind, const std::string& message, std::vector<IterationRecord> log)
      : std::runtime_error(message), kind(kind), log(std::move(log)) {}

  KvnErrorKind kind;
  std::vector<IterationRecord> log;
};

struct KvnOutcome {
  AffineSpace subspace;        // selected piece W'
  QuadraticFactor factor;      // its quadratic factor B
  double density;              // |A cap W'| / |W'|
  double approximation_error;  // u3 norm of 1_A - E(1_A | B) on W'
  std::vector<IterationRecord> log;
};

// Iteratively refines a local quadratic factor until pieces covering mass
// >= 1 - epsilon/2 are eta-uniform, then returns a uniform piece whose
// density is at least density(A) - epsilon. Invariants on the returned piece
// are re-verified from scratch; structural failures throw KvnError.
KvnOutcome kvn_run(const PointSet& a, const KvnParams& params);

struct CertificateLine {
  std::string name;
  double lhs;
  double rhs;
  bool pass;  // lhs <= rhs up to float tolerance
};

struct RichSubspaceResult {
  KvnOutcome outcome;
  uint64_t pair_count;    // exact (start, step) pairs with all four points in A
  double t_indicator;     // progression mean of the restricted indicator
  double t_expected;      // progression mean of its factor expectation
  double fourier_t;       // same quantity from the configuration-space transform
  int separation_level;   // achieved min combination rank (dim+1 when complexity 0)
  double averaging_dev;   // p^((d - r)/2), zero when complexity 0
  double counting_dev;    // p^((4d - r)/2), zero when complexity 0
  std::vector<CertificateLine> certificate;
  bool pass;
};

// Runs kvn_run with eta = epsilon and assembles a checked certificate chaining
// density, uniformity, the progression-count comparison against the factor
// model, and the resulting lower bound on the progression count.
RichSubspaceResult find_rich_subspace(const PointSet& a, double alpha, double epsilon,
                                      KvnParams params = {});

struct ApFreeReport {
  double alpha;
  double epsilon;                // alpha^4 / 2, capped below 1/2
  double eta;                    // uniformity threshold actually used
  uint64_t trivial_count;        // |A cap W'|
  bool consistent;               // pair count on W' equals the trivial count
  uint64_t subspace_size;
  double predicted_size_bound;   // 2 / alpha^4
  bool size_within_prediction;   // informational at this scale
  RichSubspaceResult rich;
  bool pass;
};

// For a set with no nontrivial 4-term progression: runs the rich-subspace
// search with epsilon = alpha^4/2 (uniformity threshold floored at
// params.eta, since the asymptotic threshold is unreachable at this scale)
// and checks that the found subspace carries only trivial progressions.
// A set containing a nontrivial progression is rejected up front.
ApFreeReport deduce_ap_free_bound(const PointSet& a, KvnParams params = {});

}  // namespace fourap
