#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fourap/generators.hpp"
#include "fourap/kvn.hpp"
#include "fourap/set_io.hpp"
#include "fourap/suites.hpp"

using nlohmann::json;

namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

json space_json(const fourap::AffineSpace& w) {
  json basis = json::array();
  for (int r = 0; r < w.basis().rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < w.basis().cols(); ++c) row.push_back(w.basis().at(r, c));
    basis.push_back(row);
  }
  return json{{"p", w.modulus()},
              {"ambient_dim", w.ambient_dim()},
              {"dim", w.dim()},
              {"basis", basis},
              {"translate", w.translate()}};
}

json form_json(const fourap::QuadraticForm& q) {
  std::vector<uint32_t> m;
  m.reserve(static_cast<size_t>(q.matrix().rows()) * q.matrix().cols());
  for (int r = 0; r < q.matrix().rows(); ++r)
    for (int c = 0; c < q.matrix().cols(); ++c) m.push_back(q.matrix().at(r, c));
  return json{{"M", m}, {"r", q.linear()}, {"c", q.constant()}, {"rank", q.rank()}};
}

json log_json(const std::vector<fourap::IterationRecord>& log) {
  json out = json::array();
  for (const auto& rec : log) {
    out.push_back(json{{"iteration", rec.iteration},
                       {"atom_count", rec.atom_count},
                       {"regular_mass", rec.regular_mass},
                       {"energy", rec.energy},
                       {"max_codim", rec.max_codim},
                       {"max_complexity", rec.max_complexity}});
  }
  return out;
}

json certificate_json(const std::vector<fourap::CertificateLine>& cert) {
  json out = json::array();
  for (const auto& line : cert)
    out.push_back(json{{"name", line.name}, {"lhs", line.lhs}, {"rhs", line.rhs}, {"pass", line.pass}});
  return out;
}

json rich_json(const fourap::RichSubspaceResult& res) {
  json factor = json::array();
  for (const auto& q : res.outcome.factor.forms()) factor.push_back(form_json(q));
  return json{{"subspace", space_json(res.outcome.subspace)},
              {"factor", factor},
              {"density", res.outcome.density},
              {"approximation_error", res.outcome.approximation_error},
              {"pair_count", res.pair_count},
              {"t_indicator", res.t_indicator},
              {"t_expected", res.t_expected},
              {"fourier_t", res.fourier_t},
              {"separation_level", res.separation_level},
              {"averaging_dev", res.averaging_dev},
              {"counting_dev", res.counting_dev},
              {"log", log_json(res.outcome.log)},
              {"certificate", certificate_json(res.certificate)},
              {"pass", res.pass}};
}

struct GenOptions {
  std::string name;
  double alpha = 0.5;
  int codim = 1;
  int rank = -1;  // -1: full rank
  uint32_t value = 0;
  int k = 2;
};

fourap::PointSet make_set(const GenOptions& opt, const fourap::AffineSpace& w, fourap::Rng& rng) {
  if (opt.name == "random") {
    if (opt.alpha < 0.0 || opt.alpha > 1.0)
      throw std::invalid_argument("alpha must lie in [0, 1]");
    return fourap::gen_random(w, opt.alpha, rng);
  }
  if (opt.name == "subspace") {
    if (opt.codim < 0 || opt.codim > w.dim())
      throw std::invalid_argument("codim must lie in [0, n]");
    return fourap::gen_subspace(w, opt.codim, rng);
  }
  if (opt.name == "quad-level-set") {
    int rank = opt.rank < 0 ? w.dim() : opt.rank;
    if (rank > w.dim()) throw std::invalid_argument("rank must lie in [0, n]");
    if (opt.value >= w.modulus()) throw std::invalid_argument("value must lie in [0, p)");
    fourap::QuadraticForm q = fourap::random_form_of_rank(w, rank, rng);
    return fourap::gen_quad_level_set(q, opt.value);
  }
  if (opt.name == "ap-free-greedy") return fourap::gen_ap_free_greedy(w, rng);
  if (opt.name == "union-subspaces") {
    if (opt.k < 1) throw std::invalid_argument("k must be >= 1");
    return fourap::gen_union_subspaces(w, opt.k, rng);
  }
  throw std::invalid_argument("unknown generator: " + opt.name);
}

int cmd_verify(uint32_t p, int n, uint64_t seed, const std::string& suite) {
  fourap::SuiteConfig cfg{p, n, seed};
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = fourap::suite_names();
  } else {
    selected = {suite};
  }
  size_t total = 0, failed = 0;
  for (const std::string& name : selected) {
    auto records = fourap::run_suite(name, cfg);
    double ms = 0;
    size_t suite_failed = 0;
    for (const auto& r : records) {
      ms += r.wall_ms;
      if (!r.pass) ++suite_failed;
      json line{{"lemma", r.lemma}, {"params", r.inputs}, {"lhs", r.lhs},
                {"rhs", r.rhs},    {"bound", r.bound},    {"pass", r.pass}};
      std::cout << line.dump() << "\n";
    }
    total += records.size();
    failed += suite_failed;
    std::cerr << "[" << name << "] " << records.size() << " checks, " << suite_failed
              << " failed, " << static_cast<long>(ms) << " ms\n";
  }
  std::cerr << "verify: " << total << " checks, " << failed << " failed, " << selected.size()
            << " suites\n";
  return failed == 0 ? 0 : 1;
}

int cmd_kvn(const fourap::PointSet& a, const fourap::KvnParams& params, double epsilon,
            bool deduce) {
  if (deduce) {
    fourap::ApFreeReport rep = fourap::deduce_ap_free_bound(a, params);
    json out{{"alpha", rep.alpha},
             {"epsilon", rep.epsilon},
             {"eta", rep.eta},
             {"trivial_count", rep.trivial_count},
             {"consistent", rep.consistent},
             {"subspace_size", rep.subspace_size},
             {"predicted_size_bound", rep.predicted_size_bound},
             {"size_within_prediction", rep.size_within_prediction},
             {"rich", rich_json(rep.rich)},
             {"pass", rep.pass}};
    std::cout << out.dump(2) << "\n";
    return rep.pass ? 0 : 1;
  }
  fourap::RichSubspaceResult res = fourap::find_rich_subspace(a, a.density(), epsilon, params);
  std::cout << rich_json(res).dump(2) << "\n";
  return res.pass ? 0 : 1;
}

std::string default_out_path(const GenOptions& opt, uint32_t p, int n, uint64_t seed) {
  const char* dir = std::getenv("FOURAP_OUT_DIR");
  std::string base = dir && *dir ? dir : ".";
  std::ostringstream name;
  name << base << "/set-" << opt.name << "-p" << p << "n" << n << "s" << seed << ".txt";
  return name.str();
}

int cmd_gen(const GenOptions& opt, uint32_t p, int n, uint64_t seed, std::string out_path) {
  fourap::AffineSpace w = fourap::AffineSpace::full(p, n);
  fourap::Rng rng(seed);
  fourap::PointSet a = make_set(opt, w, rng);
  if (out_path.empty()) out_path = default_out_path(opt, p, n, seed);
  fourap::save_point_set(out_path, a);
  json summary{{"path", out_path},   {"generator", opt.name}, {"p", p},
               {"n", n},             {"seed", seed},          {"count", a.count()},
               {"density", a.density()}};
  std::cout << summary.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"4-term progression structure toolkit over F_p^n"};
  app.require_subcommand(1);

  uint32_t p = 5;
  int n = 3;
  uint64_t seed = 7;

  auto add_space_flags = [&](CLI::App* cmd) {
    cmd->add_option("--p", p, "field characteristic (prime >= 5)")->capture_default_str();
    cmd->add_option("--n", n, "dimension of the ambient space")->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  };

  // verify
  auto suites = fourap::suite_names();
  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run lemma verification suites");
  add_space_flags(verify);
  {
    auto valid = suites;
    valid.push_back("all");
    verify->add_option("--suite", suite, "suite name or 'all'")
        ->capture_default_str()
        ->check(CLI::IsMember(valid));
  }

  // kvn
  CLI::App* kvn = app.add_subcommand("kvn", "run the local refinement search on a set");
  add_space_flags(kvn);
  std::string input_path;
  GenOptions gen_opt;
  double epsilon = 0.25;
  double eta = 0.25;
  bool deduce = false;
  fourap::KvnParams params;
  std::string oracle = "automatic";
  kvn->add_option("--input", input_path, "point-set file (header line + indices)");
  kvn->add_option("--gen", gen_opt.name,
                  "generate the input set instead of reading a file")
      ->check(CLI::IsMember({"random", "subspace", "quad-level-set", "ap-free-greedy",
                             "union-subspaces"}));
  kvn->add_option("--alpha", gen_opt.alpha, "density for --gen random")->capture_default_str();
  kvn->add_option("--codim", gen_opt.codim, "codimension for --gen subspace")
      ->capture_default_str();
  kvn->add_option("--rank", gen_opt.rank, "form rank for --gen quad-level-set (-1: full)")
      ->capture_default_str();
  kvn->add_option("--value", gen_opt.value, "level for --gen quad-level-set")
      ->capture_default_str();
  kvn->add_option("--k", gen_opt.k, "piece count for --gen union-subspaces")
      ->capture_default_str();
  kvn->add_option("--epsilon", epsilon, "density loss budget in (0, 1/2]")
      ->capture_default_str();
  kvn->add_option("--eta", eta, "uniformity floor for --deduce-bound")->capture_default_str();
  kvn->add_option("--rank-target", params.rank_target, "separation level for piece factors")
      ->capture_default_str();
  kvn->add_option("--complexity-cap", params.complexity_cap, "max forms per piece factor")
      ->capture_default_str();
  kvn->add_option("--iteration-cap", params.iteration_cap, "max refinement rounds")
      ->capture_default_str();
  kvn->add_option("--min-energy-increment", params.min_energy_increment,
                  "required energy gain per refinement")
      ->capture_default_str();
  kvn->add_option("--oracle", oracle, "correlation oracle")
      ->capture_default_str()
      ->check(CLI::IsMember({"automatic", "exhaustive", "derivative-fit"}));
  kvn->add_option("--oracle-trials", params.oracle_trials, "oracle retry budget")
      ->capture_default_str();
  kvn->add_flag("--deduce-bound", deduce,
                "treat the input as progression-free and report the size bound");

  // gen
  CLI::App* gen = app.add_subcommand("gen", "write a generated point set to a file");
  add_space_flags(gen);
  std::string out_path;
  gen->add_option("--generator", gen_opt.name, "set generator")
      ->required()
      ->check(CLI::IsMember({"random", "subspace", "quad-level-set", "ap-free-greedy",
                             "union-subspaces"}));
  gen->add_option("--alpha", gen_opt.alpha, "density for random")->capture_default_str();
  gen->add_option("--codim", gen_opt.codim, "codimension for subspace")->capture_default_str();
  gen->add_option("--rank", gen_opt.rank, "form rank for quad-level-set (-1: full)")
      ->capture_default_str();
  gen->add_option("--value", gen_opt.value, "level for quad-level-set")->capture_default_str();
  gen->add_option("--k", gen_opt.k, "piece count for union-subspaces")->capture_default_str();
  gen->add_option("--out", out_path, "output path (default: $FOURAP_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!is_prime(p) || p < 5) {
    std::cerr << "p must be prime >= 5\n";
    return 2;
  }
  if (n < 1 || n > 6) {
    std::cerr << "n must lie in [1, 6]\n";
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) return cmd_verify(p, n, seed, suite);
    if (app.got_subcommand(gen)) return cmd_gen(gen_opt, p, n, seed, out_path);

    // kvn
    params.epsilon = epsilon;
    params.eta = eta;
    params.seed = seed;
    if (oracle == "exhaustive") params.oracle = fourap::OracleKind::exhaustive;
    if (oracle == "derivative-fit") params.oracle = fourap::OracleKind::derivative_fit;
    params.validate();
    if (input_path.empty() == gen_opt.name.empty()) {
      std::cerr << "kvn needs exactly one of --input or --gen\n";
      return 2;
    }
    fourap::Rng rng(seed);
    fourap::PointSet a =
        input_path.empty()
            ? make_set(gen_opt, fourap::AffineSpace::full(p, n), rng)
            : fourap::load_point_set(input_path);
    return cmd_kvn(a, params, epsilon, deduce);
  } catch (const fourap::KvnError& e) {
    json err{{"error", fourap::to_string(e.kind)}, {"message", e.what()}, {"log", log_json(e.log)}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "theory violation: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "theory violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
