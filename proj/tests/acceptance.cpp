// Acceptance gate: ten checks, one line each, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fourap/generators.hpp"
#include "fourap/gowers.hpp"
#include "fourap/suites.hpp"

using namespace fourap;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %2d (%s): %s%s%s\n", index, name.c_str(), pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

size_t count_failed(const std::vector<CheckRecord>& recs) {
  size_t failed = 0;
  for (const auto& r : recs)
    if (!r.pass) ++failed;
  return failed;
}

// 1: Gauss magnitude bound + exact square norm, 500 forms per (p, n).
void criterion_gauss() {
  Timer timer;
  size_t checks = 0, failed = 0;
  for (uint32_t p : {5u, 7u}) {
    for (int n = 1; n <= 4; ++n) {
      auto recs = run_suite("gauss", SuiteConfig{p, n, 7});
      checks += recs.size();
      failed += count_failed(recs);
    }
  }
  double sec = timer.seconds();
  std::ostringstream d;
  d << checks << " checks, " << failed << " violations, " << sec << " s";
  report(1, "gauss sums", failed == 0 && sec < 10.0, d.str());
}

// 2: progression average bounded by the least U3 norm; every function of
// every quadruple also gets a direct-loop U3 comparison.
void criterion_gvn() {
  Timer timer;
  size_t failed = 0, checks = 0;
  double worst_gap = 0;
  for (int n : {2, 3}) {
    AffineSpace w = AffineSpace::full(5, n);
    Rng rng(7);
    const int trials = n == 2 ? 200 : 50;
    for (int trial = 0; trial < trials; ++trial) {
      SpaceFunction fs[4] = {
          [&] {
            std::vector<cplx> vals(w.size());
            for (auto& v : vals) v = 2.0 * rng.uniform_real() - 1.0;
            return SpaceFunction(w, std::move(vals), true);
          }(),
          [&] {
            std::vector<cplx> vals(w.size());
            for (auto& v : vals) v = 2.0 * rng.uniform_real() - 1.0;
            return SpaceFunction(w, std::move(vals), true);
          }(),
          [&] {
            std::vector<cplx> vals(w.size());
            for (auto& v : vals) v = 2.0 * rng.uniform_real() - 1.0;
            return SpaceFunction(w, std::move(vals), true);
          }(),
          [&] {
            std::vector<cplx> vals(w.size());
            for (auto& v : vals) v = 2.0 * rng.uniform_real() - 1.0;
            return SpaceFunction(w, std::move(vals), true);
          }()};
      GvnReport rep = gvn_bound_check(fs[0], fs[1], fs[2], fs[3]);
      ++checks;
      if (!(rep.t_abs <= rep.min_u3 + 1e-9)) ++failed;
      for (const SpaceFunction& f : fs) {
        double gap = std::abs(u3_norm(f) - u3_norm_naive(f));
        worst_gap = std::max(worst_gap, gap);
        ++checks;
        if (!(gap <= 1e-8)) ++failed;
      }
    }
  }
  double sec = timer.seconds();
  std::ostringstream d;
  d << checks << " checks, " << failed << " violations, worst direct-loop gap " << worst_gap
    << ", " << sec << " s";
  report(2, "generalized von Neumann", failed == 0 && sec < 60.0, d.str());
}

// 3: telescoping identity and bound on 100 pairs over F_5^2.
void criterion_telescoping() {
  auto recs = run_suite("telescoping", SuiteConfig{5, 2, 7});
  size_t failed = count_failed(recs);
  std::ostringstream d;
  d << recs.size() << " checks, " << failed << " violations";
  report(3, "telescoping", failed == 0, d.str());
}

// 4: averaging bound for 50 verified factors on F_5^4, d in {1, 2}.
void criterion_averaging() {
  auto recs = run_suite("averaging", SuiteConfig{5, 4, 7});
  size_t failed = count_failed(recs);
  std::ostringstream d;
  d << recs.size() << " checks, " << failed << " violations";
  report(4, "averaging lemma", failed == 0, d.str());
}

// 5: counting bound + oscillation spot checks on the same population.
void criterion_counting() {
  Timer timer;
  auto recs = run_suite("counting", SuiteConfig{5, 4, 7});
  size_t failed = count_failed(recs);
  double sec = timer.seconds();
  std::ostringstream d;
  d << recs.size() << " checks, " << failed << " violations, " << sec << " s";
  report(5, "counting lemma", failed == 0 && sec < 300.0, d.str());
}

// 6: positivity with the rank hypothesis verified (complexity 0 at this
// scale: separation 10d = 0 holds vacuously), three densities.
void criterion_positivity() {
  size_t checks = 0, failed = 0;
  for (int n : {3, 4}) {
    auto recs = run_suite("positivity", SuiteConfig{5, n, 7});
    checks += recs.size();
    failed += count_failed(recs);
  }
  std::ostringstream d;
  d << checks << " checks, " << failed << " violations";
  report(6, "positivity", failed == 0, d.str());
}

// 7: rank reduction on 50 degenerate instances over F_5^4, d <= 3.
void criterion_rank_reduce() {
  auto recs = run_suite("rank-reduce", SuiteConfig{5, 4, 7});
  size_t failed = count_failed(recs);
  std::ostringstream d;
  d << recs.size() << " checks, " << failed << " violations";
  report(7, "rank reduction", failed == 0, d.str());
}

// 8: planted-phase recovery: exhaustive on F_5^2..F_5^3, fit on F_5^3.
void criterion_oracle() {
  auto recs = run_suite("oracle", SuiteConfig{5, 3, 7});
  size_t exhaustive = 0, fit = 0, failed = 0;
  for (const auto& r : recs) {
    if (r.lemma == "oracle-exhaustive") ++exhaustive;
    if (r.lemma == "oracle-derivative-fit") ++fit;
    if (!r.pass) ++failed;
  }
  std::ostringstream d;
  d << exhaustive << " exhaustive + " << fit << " fit recoveries, " << failed << " misses";
  report(8, "oracle recovery", failed == 0 && exhaustive >= 20 && fit >= 20, d.str());
}

// 9: end-to-end search over F_5^3 and F_5^4; the library path checks every
// invariant and certificate line, the binary path checks the exit codes.
void criterion_e2e() {
  Timer timer;
  size_t checks = 0, failed = 0;
  for (int n : {3, 4}) {
    auto recs = run_suite("e2e", SuiteConfig{5, n, 7});
    checks += recs.size();
    failed += count_failed(recs);
  }
  int bad_exit = 0;
  const std::string cli = FOURAP_CLI_PATH;
  const std::string cases[4] = {
      " kvn --gen subspace --codim 0 --p 5 --n 3 --epsilon 0.25",
      " kvn --gen subspace --codim 1 --p 5 --n 3 --epsilon 0.3",
      " kvn --gen quad-level-set --p 5 --n 3 --epsilon 0.15 --oracle-trials 400",
      " kvn --gen random --alpha 0.5 --p 5 --n 3 --epsilon 0.45",
  };
  for (const std::string& args : cases) {
    int status = std::system((cli + args + " > /dev/null 2>&1").c_str());
    if (status != 0) ++bad_exit;
  }
  double sec = timer.seconds();
  std::ostringstream d;
  d << checks << " checks, " << failed << " violations, " << bad_exit
    << " nonzero exits, " << sec << " s";
  report(9, "end-to-end search", failed == 0 && bad_exit == 0 && sec < 600.0, d.str());
}

// 10: two identical-seed full-suite runs of the binary, compared bytewise.
void criterion_determinism() {
  const std::string cli = FOURAP_CLI_PATH;
  const std::string args = " verify --p 5 --n 3 --suite all --seed 7";
  const char* paths[2] = {"acceptance_run_a.jsonl", "acceptance_run_b.jsonl"};
  int bad_exit = 0;
  for (const char* path : paths) {
    int status = std::system((cli + args + " > " + path + " 2> /dev/null").c_str());
    if (status != 0) ++bad_exit;
  }
  auto slurp = [](const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::string a = slurp(paths[0]);
  std::string b = slurp(paths[1]);
  std::remove(paths[0]);
  std::remove(paths[1]);
  std::ostringstream d;
  d << a.size() << " bytes vs " << b.size() << " bytes, " << bad_exit << " nonzero exits";
  report(10, "determinism", bad_exit == 0 && !a.empty() && a == b, d.str());
}

}  // namespace

int main() {
  criterion_gauss();
  criterion_gvn();
  criterion_telescoping();
  criterion_averaging();
  criterion_counting();
  criterion_positivity();
  criterion_rank_reduce();
  criterion_oracle();
  criterion_e2e();
  criterion_determinism();
  if (failures != 0) std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
