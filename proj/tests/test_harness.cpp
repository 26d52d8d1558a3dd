#include <cstdio>
#include <sstream>

#include "doctest.h"
#include "fourap/generators.hpp"
#include "fourap/set_io.hpp"
#include "fourap/suites.hpp"

using namespace fourap;

TEST_CASE("random generator tracks the requested density") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng rng(42);
  PointSet a = gen_random(w, 0.5, rng);
  CHECK(std::abs(a.density() - 0.5) <= 0.15);  // 3+ sigma for 125 coin flips

  Rng zero(42);
  CHECK(gen_random(w, 0.0, zero).count() == 0);
  Rng one(42);
  CHECK(gen_random(w, 1.0, one).count() == w.size());
}

TEST_CASE("subspace generator hits the exact codimension") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng rng(7);
  PointSet hyper = gen_subspace(w, 1, rng);
  CHECK(hyper.density() == doctest::Approx(0.2).epsilon(1e-12));
  PointSet full = gen_subspace(w, 0, rng);
  CHECK(full.count() == w.size());
  PointSet point = gen_subspace(w, 3, rng);
  CHECK(point.count() == 1);
}

TEST_CASE("quad level set matches the form it came from") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng rng(9);
  QuadraticForm q = random_form_of_rank(w, 2, rng);
  PointSet level = gen_quad_level_set(q, 3);
  for (uint64_t i = 0; i < w.size(); ++i)
    CHECK(level.contains_index(i) == (q.evaluate_at(i) == 3));
}

TEST_CASE("random forms land on the requested rank") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng rng(11);
  for (int rank = 0; rank <= 3; ++rank)
    for (int rep = 0; rep < 5; ++rep)
      CHECK(random_form_of_rank(w, rank, rng).rank() == rank);
}

TEST_CASE("greedy progression-free set is free and maximal") {
  AffineSpace w = AffineSpace::full(5, 2);
  Rng rng(7);
  PointSet a = gen_ap_free_greedy(w, rng);
  CHECK(a.count() > 0);
  CHECK(progression_free(a));
  // Greedy maximality: every excluded point closes some progression.
  for (uint64_t j = 0; j < w.size(); ++j) {
    if (a.contains_index(j)) continue;
    std::vector<uint8_t> mask = a.mask();
    mask[j] = 1;
    CHECK(!progression_free(PointSet(w, std::move(mask))));
  }
}

TEST_CASE("union of subspaces is nonempty and deterministic") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng rng1(13);
  Rng rng2(13);
  PointSet a = gen_union_subspaces(w, 3, rng1);
  PointSet b = gen_union_subspaces(w, 3, rng2);
  CHECK(a.count() > 0);
  CHECK(a.mask() == b.mask());
}

TEST_CASE("generators replay under a fixed seed") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng r1(99), r2(99);
  CHECK(gen_random(w, 0.4, r1).mask() == gen_random(w, 0.4, r2).mask());
  CHECK(gen_subspace(w, 2, r1).mask() == gen_subspace(w, 2, r2).mask());
}

TEST_CASE("point sets survive a stream round trip") {
  AffineSpace w = AffineSpace::full(5, 3);
  Rng rng(21);
  PointSet a = gen_random(w, 0.3, rng);
  std::stringstream buf;
  write_point_set(buf, a);
  PointSet back = read_point_set(buf);
  CHECK(back.domain().modulus() == 5);
  CHECK(back.domain().ambient_dim() == 3);
  CHECK(back.mask() == a.mask());
}

TEST_CASE("point sets survive a file round trip") {
  AffineSpace w = AffineSpace::full(5, 2);
  Rng rng(22);
  PointSet a = gen_random(w, 0.5, rng);
  std::string path = "harness_roundtrip.txt";
  save_point_set(path, a);
  PointSet back = load_point_set(path);
  CHECK(back.mask() == a.mask());
  std::remove(path.c_str());
}

TEST_CASE("malformed set files are rejected") {
  auto reject = [](const std::string& text) {
    std::stringstream buf(text);
    CHECK_THROWS(read_point_set(buf));
  };
  reject("not json\n0\n");
  reject("{\"p\":5,\"n\":2,\"count\":2}\n0\n");            // count mismatch
  reject("{\"p\":5,\"n\":2,\"count\":1}\n625\n");          // out of range
  reject("{\"p\":5,\"n\":2,\"count\":2}\n3\n3\n");         // duplicate
  reject("{\"p\":1,\"n\":2,\"count\":0}\n");               // bad modulus
  CHECK_THROWS(load_point_set("no_such_file_anywhere.txt"));
}

TEST_CASE("suite registry is consistent") {
  auto names = suite_names();
  CHECK(names.size() >= 9);
  for (const auto& name : names) CHECK(is_suite(name));
  CHECK(!is_suite("all"));
  CHECK(!is_suite("bogus"));
  CHECK_THROWS_AS(run_suite("bogus", SuiteConfig{}), std::invalid_argument);
}

TEST_CASE("small suites pass and replay byte-for-byte") {
  SuiteConfig cfg{5, 2, 7};
  for (const std::string name : {"telescoping", "energy", "rank-reduce"}) {
    auto first = run_suite(name, cfg);
    auto second = run_suite(name, cfg);
    REQUIRE(!first.empty());
    REQUIRE(first.size() == second.size());
    for (size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].pass);
      CHECK(first[i].lemma == second[i].lemma);
      CHECK(first[i].inputs == second[i].inputs);
      CHECK(first[i].lhs == second[i].lhs);
      CHECK(first[i].rhs == second[i].rhs);
      CHECK(first[i].bound == second[i].bound);
    }
  }
}

TEST_CASE("every record carries a recomputable inputs summary") {
  SuiteConfig cfg{5, 2, 3};
  for (const auto& rec : run_suite("gauss", cfg)) {
    CHECK(rec.inputs.find("p=5") != std::string::npos);
    CHECK(rec.inputs.find("n=2") != std::string::npos);
    CHECK(rec.inputs.find("seed=3") != std::string::npos);
    CHECK(rec.inputs.find("trial=") != std::string::npos);
  }
}
