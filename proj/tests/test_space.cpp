#include <set>

#include "doctest.h"
#include "fourap/field.hpp"
#include "fourap/group_index.hpp"
#include "fourap/modmat.hpp"
#include "fourap/rng.hpp"
#include "fourap/space.hpp"

using namespace fourap;

namespace {

// Independent membership oracle: x in w + span(basis) iff appending x - w to
// the basis rows does not increase the rank.
bool member_oracle(const AffineSpace& s, const Point& x) {
  uint32_t p = s.modulus();
  PrimeField f(p);
  int n = s.ambient_dim();
  ModMatrix rows(s.dim() + 1, n, p);
  for (int r = 0; r < s.dim(); ++r)
    for (int c = 0; c < n; ++c) rows.at(r, c) = s.basis().at(r, c);
  for (int c = 0; c < n; ++c) rows.at(s.dim(), c) = f.sub(x[c], s.translate()[c]);
  return rows.rank() == s.dim();
}

ModMatrix random_symmetric(Rng& rng, int n, uint32_t p) {
  ModMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      uint32_t v = static_cast<uint32_t>(rng.uniform(p));
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f5(5);
  CHECK(f5.add(2, 3) == 0);
  CHECK(f5.inv(2) == 3);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.sub(1, 3) == 3);
  CHECK(f5.neg(2) == 3);
  CHECK(f5.half() == 3);

  for (uint32_t p : {5u, 7u, 11u, 31u}) {
    PrimeField f(p);
    for (uint32_t a = 1; a < p; ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }

  CHECK_THROWS(PrimeField(4));
  CHECK_THROWS(PrimeField(3));
  CHECK_THROWS(PrimeField(37));
  CHECK_THROWS(PrimeField(5).inv(0));
}

TEST_CASE("field elements carry and check their modulus") {
  FieldElement a(2, 5), b(3, 5);
  CHECK((a + b).value() == 0);
  CHECK((a * b).value() == 1);
  CHECK((-a).value() == 3);
  CHECK(a.inverse().value() == 3);
  FieldElement c(2, 7);
  CHECK_THROWS(a + c);
  CHECK_THROWS(a * c);
}

TEST_CASE("point canonical index is little-endian") {
  Point x({2, 3, 1}, 5);
  CHECK(x.canonical_index() == 2 + 3 * 5 + 1 * 25);
  for (uint64_t i = 0; i < 125; ++i) {
    CHECK(Point::from_index(i, 3, 5).canonical_index() == i);
  }
  CHECK_THROWS(Point::from_index(125, 3, 5));
}

TEST_CASE("full space enumeration") {
  AffineSpace s = AffineSpace::full(5, 2);
  CHECK(s.size() == 25);
  auto pts = s.enumerate();
  REQUIRE(pts.size() == 25);
  CHECK(pts[0] == Point({0, 0}, 5));
  CHECK(pts[1] == Point({1, 0}, 5));  // coordinate 0 least significant
  CHECK(pts[5] == Point({0, 1}, 5));
  std::set<uint64_t> seen;
  for (const auto& x : pts) seen.insert(x.canonical_index());
  CHECK(seen.size() == 25);
}

TEST_CASE("line enumeration starts at the translate") {
  AffineSpace line(5, 2, {{1, 0}}, {0, 3});
  CHECK(line.size() == 5);
  auto pts = line.enumerate();
  for (uint32_t t = 0; t < 5; ++t) {
    CHECK(pts[t] == Point({t, 3}, 5));
  }
}

TEST_CASE("random coset in F_5^4: differences stay in the direction space") {
  Rng rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<uint32_t>> basis;
    {
      // sample until the two direction vectors are independent
      while (true) {
        basis.clear();
        for (int j = 0; j < 2; ++j) {
          std::vector<uint32_t> v(4);
          for (auto& c : v) c = static_cast<uint32_t>(rng.uniform(5));
          basis.push_back(v);
        }
        ModMatrix m(2, 4, 5);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 4; ++c) m.at(r, c) = basis[r][c];
        if (m.rank() == 2) break;
      }
    }
    std::vector<uint32_t> w(4);
    for (auto& c : w) c = static_cast<uint32_t>(rng.uniform(5));
    AffineSpace s(5, 4, basis, w);
    CHECK(s.size() == 25);
    auto pts = s.enumerate();
    AffineSpace dir(5, 4, basis, {0, 0, 0, 0});
    for (const auto& x : pts) {
      CHECK(member_oracle(s, x));
      CHECK(dir.contains(x - pts[0]));
    }
  }
}

TEST_CASE("index round-trip on desk-scale spaces") {
  for (auto [p, n] : {std::pair<uint32_t, int>{5, 3}, {7, 2}}) {
    AffineSpace s = AffineSpace::full(p, n);
    for (uint64_t i = 0; i < s.size(); ++i) {
      CHECK(s.index_of(s.point_at(i)) == i);
    }
  }
  AffineSpace sub(5, 3, {{1, 2, 0}, {0, 1, 4}}, {3, 0, 1});
  for (uint64_t i = 0; i < sub.size(); ++i) {
    CHECK(sub.index_of(sub.point_at(i)) == i);
  }
}

TEST_CASE("dependent basis vectors are rejected") {
  CHECK_THROWS(AffineSpace(5, 3, {{1, 2, 0}, {2, 4, 0}}, {0, 0, 0}));
}

TEST_CASE("hyperplane intersection: coordinate slice of the plane") {
  AffineSpace s = AffineSpace::full(5, 2);
  auto cut = s.intersect_with_hyperplane({1, 0}, 2);
  REQUIRE(cut.has_value());
  CHECK(cut->dim() == 1);
  CHECK(cut->size() == 5);
  for (const auto& x : cut->enumerate()) CHECK(x[0] == 2);
}

TEST_CASE("hyperplane intersection: constant form cases") {
  AffineSpace line(5, 2, {{1, 0}}, {0, 3});
  // <(0,1), x> = 3 identically on the line
  auto same = line.intersect_with_hyperplane({0, 1}, 3);
  REQUIRE(same.has_value());
  CHECK(same->same_point_set(line));
  auto empty = line.intersect_with_hyperplane({0, 1}, 4);
  CHECK(!empty.has_value());
}

TEST_CASE("two successive independent cuts of F_5^3 leave 5 points") {
  AffineSpace s = AffineSpace::full(5, 3);
  auto c1 = s.intersect_with_hyperplane({1, 2, 0}, 1);
  REQUIRE(c1.has_value());
  auto c2 = c1->intersect_with_hyperplane({0, 1, 3}, 4);
  REQUIRE(c2.has_value());
  CHECK(c2->dim() == 1);
  CHECK(c2->size() == 5);

  // oracle: count solutions over the whole space
  PrimeField f(5);
  uint64_t count = 0;
  for (const auto& x : s.enumerate()) {
    uint32_t v1 = f.norm(x[0] + 2 * x[1]);
    uint32_t v2 = f.norm(x[1] + 3 * x[2]);
    if (v1 == 1 && v2 == 4) {
      ++count;
      CHECK(c2->contains(x));
    }
  }
  CHECK(count == 5);
}

TEST_CASE("non-constant hyperplane cut has size |W|/p") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform(3));
    AffineSpace s = AffineSpace::full(5, n);
    std::vector<uint32_t> normal(n);
    bool nonzero = false;
    for (auto& c : normal) {
      c = static_cast<uint32_t>(rng.uniform(5));
      nonzero = nonzero || c != 0;
    }
    if (!nonzero) normal[0] = 1;
    uint32_t value = static_cast<uint32_t>(rng.uniform(5));
    auto cut = s.intersect_with_hyperplane(normal, value);
    REQUIRE(cut.has_value());
    CHECK(cut->size() == s.size() / 5);
    uint64_t count = 0;
    PrimeField f(5);
    for (const auto& x : s.enumerate()) {
      uint64_t dot = 0;
      for (int c = 0; c < n; ++c) dot += static_cast<uint64_t>(normal[c]) * x[c];
      if (f.norm(static_cast<uint32_t>(dot % 5)) == value) ++count;
    }
    CHECK(count == cut->size());
  }
}

TEST_CASE("kernel subspace basics") {
  AffineSpace s = AffineSpace::full(5, 3);
  ModMatrix zero(3, 3, 5);
  CHECK(s.kernel_subspace(zero).same_point_set(s));
  ModMatrix identity = ModMatrix::identity(3, 5);
  AffineSpace k = s.kernel_subspace(identity);
  CHECK(k.dim() == 0);
  CHECK(k.size() == 1);
  CHECK(k.point_at(0) == Point({0, 0, 0}, 5));
  CHECK(k.codim_in(s) == 3);
}

TEST_CASE("kernel of a random rank-2 symmetric matrix on F_5^4") {
  Rng rng(7);
  AffineSpace s = AffineSpace::full(5, 4);
  int found = 0;
  while (found < 5) {
    ModMatrix m = random_symmetric(rng, 4, 5);
    if (m.rank() != 2) continue;
    ++found;
    AffineSpace k = s.kernel_subspace(m);
    CHECK(k.codim_in(s) == 2);
    // every kernel point is annihilated by M
    for (const auto& x : k.enumerate()) {
      auto mx = m.mul_vec(x.coords());
      for (uint32_t v : mx) CHECK(v == 0);
    }
  }
}

TEST_CASE("codimension is additive in towers") {
  AffineSpace s = AffineSpace::full(5, 4);
  auto w1 = s.intersect_with_hyperplane({1, 0, 2, 0}, 3);
  REQUIRE(w1.has_value());
  auto w2 = w1->intersect_with_hyperplane({0, 1, 1, 1}, 0);
  REQUIRE(w2.has_value());
  CHECK(w2->codim_in(*w1) + w1->codim_in(s) == w2->codim_in(s));
  CHECK(w2->codim_in(s) == 2);
}

TEST_CASE("complement directions extend a subspace basis") {
  AffineSpace s = AffineSpace::full(5, 3);
  auto sub = s.intersect_with_hyperplane({1, 1, 1}, 0);
  REQUIRE(sub.has_value());
  auto comp = s.complement_directions(*sub);
  CHECK(comp.size() == 1);
  // together they span the whole direction space
  ModMatrix m(3, 3, 5);
  for (int c = 0; c < 3; ++c) {
    m.at(0, c) = sub->basis().at(0, c);
    m.at(1, c) = sub->basis().at(1, c);
    m.at(2, c) = comp[0][c];
  }
  CHECK(m.rank() == 3);
}

TEST_CASE("group index arithmetic matches digit arithmetic") {
  GroupIndex g(5, 3);
  CHECK(g.size() == 125);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    uint32_t a = static_cast<uint32_t>(rng.uniform(125));
    uint32_t b = static_cast<uint32_t>(rng.uniform(125));
    Point pa = Point::from_index(a, 3, 5), pb = Point::from_index(b, 3, 5);
    CHECK(g.add(a, b) == (pa + pb).canonical_index());
    CHECK(g.sub(a, b) == (pa - pb).canonical_index());
    CHECK(g.scale(3, a) == pa.scaled(3).canonical_index());
    CHECK(g.neg(a) == pa.scaled(4).canonical_index());
  }
}

TEST_CASE("modmat solve and nullspace agree with brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 2 + static_cast<int>(rng.uniform(3));
    int cols = 2 + static_cast<int>(rng.uniform(3));
    ModMatrix a(rows, cols, 5);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) a.at(r, c) = static_cast<uint32_t>(rng.uniform(5));
    std::vector<uint32_t> b(rows);
    for (auto& v : b) v = static_cast<uint32_t>(rng.uniform(5));

    // brute force over all p^cols candidate solutions
    uint64_t space = 1;
    for (int c = 0; c < cols; ++c) space *= 5;
    uint64_t solutions = 0, null_count = 0;
    for (uint64_t i = 0; i < space; ++i) {
      auto x = Point::from_index(i, cols, 5);
      auto ax = a.mul_vec(x.coords());
      if (ax == b) ++solutions;
      bool zero = true;
      for (uint32_t v : ax) zero = zero && v == 0;
      if (zero) ++null_count;
    }
    auto sol = a.solve(b);
    CHECK(sol.has_value() == (solutions > 0));
    if (sol) CHECK(a.mul_vec(*sol) == b);
    uint64_t expected_null = 1;
    for (size_t k = 0; k < a.nullspace_basis().size(); ++k) expected_null *= 5;
    CHECK(expected_null == null_count);
    for (const auto& v : a.nullspace_basis()) {
      auto av = a.mul_vec(v);
      for (uint32_t e : av) CHECK(e == 0);
    }
  }
}
