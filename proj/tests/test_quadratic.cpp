#include <cmath>
#include <vector>

#include "doctest.h"
#include "fourap/cyclotomic.hpp"
#include "fourap/quadratic_form.hpp"
#include "fourap/rng.hpp"
#include "fourap/space.hpp"

using namespace fourap;

namespace {

ModMatrix random_symmetric(Rng& rng, int n, uint32_t p) {
  ModMatrix m(n, n, p);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      uint32_t v = static_cast<uint32_t>(rng.uniform(p));
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  return m;
}

std::vector<uint32_t> random_vector(Rng& rng, int n, uint32_t p) {
  std::vector<uint32_t> v(n);
  for (auto& c : v) c = static_cast<uint32_t>(rng.uniform(p));
  return v;
}

AffineSpace random_subspace(Rng& rng, uint32_t p, int n, int dim) {
  while (true) {
    std::vector<std::vector<uint32_t>> basis;
    for (int j = 0; j < dim; ++j) basis.push_back(random_vector(rng, n, p));
    ModMatrix m(dim, n, p);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < n; ++c) m.at(r, c) = basis[r][c];
    if (m.rank() != dim) continue;
    return AffineSpace(p, n, basis, random_vector(rng, n, p));
  }
}

QuadraticForm random_form(Rng& rng, const AffineSpace& domain) {
  uint32_t p = domain.modulus();
  int n = domain.ambient_dim();
  return QuadraticForm(domain, random_symmetric(rng, n, p), random_vector(rng, n, p),
                       static_cast<uint32_t>(rng.uniform(p)));
}

// Direct x^T M x + r^T x + c evaluation, independent of the class internals.
uint32_t eval_oracle(const ModMatrix& m, const std::vector<uint32_t>& r, uint32_t c,
                     const Point& x) {
  uint32_t p = m.modulus();
  uint64_t acc = c;
  int n = m.rows();
  for (int i = 0; i < n; ++i) {
    acc += static_cast<uint64_t>(r[i]) * x[i];
    for (int j = 0; j < n; ++j) {
      acc += static_cast<uint64_t>(x[i]) * m.at(i, j) % p * x[j];
    }
  }
  return static_cast<uint32_t>(acc % p);
}

}  // namespace

TEST_CASE("evaluation of basic forms") {
  AffineSpace plane = AffineSpace::full(5, 2);
  ModMatrix zero(2, 2, 5);

  QuadraticForm constant(plane, zero, {0, 0}, 3);
  CHECK(constant.evaluate(Point({1, 4}, 5)) == 3);
  CHECK(constant.rank() == 0);

  ModMatrix e00(2, 2, 5);
  e00.at(0, 0) = 1;
  QuadraticForm square(plane, e00, {0, 0}, 0);
  CHECK(square.evaluate(Point({2, 0}, 5)) == 4);
  CHECK(square.evaluate(Point({2, 3}, 5)) == 4);
  CHECK(square.rank() == 1);

  ModMatrix cross(2, 2, 5);
  cross.at(0, 1) = 3;
  cross.at(1, 0) = 3;
  QuadraticForm product(plane, cross, {0, 0}, 0);
  // x0 * x1 at (2, 3): 6 = 1 mod 5
  CHECK(product.evaluate(Point({2, 3}, 5)) == 1);
  CHECK(product.rank() == 2);
}

TEST_CASE("monomial coefficients are symmetrized with the inverse of two") {
  AffineSpace plane = AffineSpace::full(5, 2);
  ModMatrix q(2, 2, 5);
  q.at(0, 1) = 1;  // the monomial x0 x1
  QuadraticForm phi = QuadraticForm::from_monomials(plane, q, {0, 0}, 0);
  CHECK(phi.matrix().at(0, 1) == 3);
  CHECK(phi.matrix().at(1, 0) == 3);
  CHECK(phi.matrix().at(0, 0) == 0);
  for (const auto& x : plane.enumerate()) {
    CHECK(phi.evaluate(x) == (x[0] * x[1]) % 5);
  }
}

TEST_CASE("values agree with direct evaluation on random forms") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 5 : 7;
    int n = 1 + static_cast<int>(rng.uniform(3));
    int dim = static_cast<int>(rng.uniform(n + 1));
    AffineSpace domain = random_subspace(rng, p, n, dim);
    QuadraticForm phi = random_form(rng, domain);
    auto vals = phi.values();
    REQUIRE(vals.size() == domain.size());
    for (uint64_t i = 0; i < domain.size(); ++i) {
      Point x = domain.point_at(i);
      CHECK(vals[i] == eval_oracle(phi.matrix(), phi.linear(), phi.constant(), x));
      CHECK(phi.evaluate_at(i) == vals[i]);
    }
  }
}

TEST_CASE("coefficient form round-trips through the ambient representation") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    uint32_t p = 5;
    int n = 2 + static_cast<int>(rng.uniform(3));
    int dim = 1 + static_cast<int>(rng.uniform(n));
    AffineSpace domain = random_subspace(rng, p, n, dim);
    QuadraticForm phi = random_form(rng, domain);
    CoefficientForm cf = phi.coefficient_form();
    CHECK(cf.a.is_symmetric());

    // the coefficient polynomial reproduces the values
    PrimeField f(p);
    for (uint64_t i = 0; i < domain.size(); ++i) {
      Point x = domain.point_at(i);
      auto t = domain.coefficients_of(x);
      uint64_t acc = cf.c;
      for (int a = 0; a < dim; ++a) {
        acc += static_cast<uint64_t>(cf.b[a]) * t[a];
        for (int b = 0; b < dim; ++b) acc += static_cast<uint64_t>(t[a]) * cf.a.at(a, b) % p * t[b];
      }
      CHECK(static_cast<uint32_t>(acc % p) == phi.evaluate(x));
    }

    // and the inverse construction agrees pointwise
    QuadraticForm back = QuadraticForm::from_coefficient_form(domain, cf.a, cf.b, cf.c);
    for (uint64_t i = 0; i < domain.size(); ++i) {
      CHECK(back.evaluate_at(i) == phi.evaluate_at(i));
    }
    CHECK(back.rank() == phi.rank());
  }
}

TEST_CASE("restriction to the full domain changes nothing") {
  AffineSpace plane = AffineSpace::full(5, 2);
  Rng rng(43);
  QuadraticForm phi = random_form(rng, plane);
  QuadraticForm same = phi.restrict_to(plane);
  for (uint64_t i = 0; i < plane.size(); ++i) CHECK(same.evaluate_at(i) == phi.evaluate_at(i));
  CHECK(same.rank() == phi.rank());
}

TEST_CASE("rank is recomputed on restriction") {
  AffineSpace plane = AffineSpace::full(5, 2);
  ModMatrix e00(2, 2, 5);
  e00.at(0, 0) = 1;
  QuadraticForm square(plane, e00, {0, 0}, 0);  // x0^2, rank 1
  AffineSpace line(5, 2, {{0, 1}}, {0, 0});     // the x1 axis
  QuadraticForm restricted = square.restrict_to(line);
  CHECK(restricted.rank() == 0);
  for (uint64_t i = 0; i < 5; ++i) CHECK(restricted.evaluate_at(i) == 0);
}

TEST_CASE("rank of standard matrices") {
  AffineSpace cube = AffineSpace::full(5, 3);
  CHECK(QuadraticForm(cube, ModMatrix(3, 3, 5), {0, 0, 0}, 0).rank() == 0);
  CHECK(QuadraticForm(cube, ModMatrix::identity(3, 5), {0, 0, 0}, 0).rank() == 3);
  AffineSpace plane = AffineSpace::full(5, 2);
  ModMatrix offdiag(2, 2, 5);
  offdiag.at(0, 1) = 1;
  offdiag.at(1, 0) = 1;
  CHECK(QuadraticForm(plane, offdiag, {0, 0}, 0).rank() == 2);
}

TEST_CASE("restriction of a rank-3 form to a hyperplane stays close in rank") {
  Rng rng(44);
  int seen = 0;
  while (seen < 10) {
    AffineSpace space = AffineSpace::full(5, 4);
    QuadraticForm phi(space, random_symmetric(rng, 4, 5), random_vector(rng, 4, 5),
                      static_cast<uint32_t>(rng.uniform(5)));
    if (phi.rank() != 3) continue;
    ++seen;
    std::vector<uint32_t> normal = random_vector(rng, 4, 5);
    bool nz = false;
    for (uint32_t c : normal) nz = nz || c != 0;
    if (!nz) normal[0] = 1;
    auto sub = space.intersect_with_hyperplane(normal, static_cast<uint32_t>(rng.uniform(5)));
    REQUIRE(sub.has_value());
    QuadraticForm res = phi.restrict_to(*sub);
    CHECK(res.rank() >= 1);  // drop per cut hyperplane is at most two
    CHECK(res.rank() <= 3);
    for (uint64_t i = 0; i < sub->size(); ++i) {
      CHECK(res.evaluate_at(i) == phi.evaluate(sub->point_at(i)));
    }
  }
}

TEST_CASE("a single cut can cost two ranks, never more") {
  // x0 x1 restricted to the x0 axis vanishes: rank 2 -> 0 across one cut.
  AffineSpace plane = AffineSpace::full(5, 2);
  ModMatrix cross(2, 2, 5);
  cross.at(0, 1) = 3;
  cross.at(1, 0) = 3;
  QuadraticForm product(plane, cross, {0, 0}, 0);
  AffineSpace axis(5, 2, {{1, 0}}, {0, 0});
  CHECK(product.restrict_to(axis).rank() == 0);

  // and on random instances the drop never exceeds twice the codimension
  Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    uint32_t p = 5;
    int n = 2 + static_cast<int>(rng.uniform(3));
    AffineSpace space = AffineSpace::full(p, n);
    QuadraticForm phi = random_form(rng, space);
    int dim = 1 + static_cast<int>(rng.uniform(n));
    AffineSpace sub = random_subspace(rng, p, n, dim);
    int codim = n - dim;
    QuadraticForm res = phi.restrict_to(sub);
    CHECK(res.rank() >= phi.rank() - 2 * codim);
    CHECK(res.rank() <= phi.rank());
    CHECK(res.rank() <= dim);
  }
}

TEST_CASE("linear combinations evaluate pointwise") {
  Rng rng(46);
  AffineSpace cube = AffineSpace::full(5, 3);
  QuadraticForm a = random_form(rng, cube);
  QuadraticForm b = random_form(rng, cube);
  QuadraticForm combo = a.add_scaled(b, 2);
  PrimeField f(5);
  for (uint64_t i = 0; i < cube.size(); ++i) {
    CHECK(combo.evaluate_at(i) == f.add(a.evaluate_at(i), f.mul(2, b.evaluate_at(i))));
  }
}

TEST_CASE("character average magnitudes of one-variable forms") {
  AffineSpace line = AffineSpace::full(5, 1);
  ModMatrix zero(1, 1, 5), one(1, 1, 5);
  one.at(0, 0) = 1;

  QuadraticForm square(line, one, {0}, 0);
  CHECK(square.gauss_sum_magnitude() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
  CHECK(square.linear_part_in_image());

  QuadraticForm linear(line, zero, {1}, 0);
  CHECK(linear.gauss_sum_magnitude() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(!linear.linear_part_in_image());

  QuadraticForm constant(line, zero, {0}, 2);
  CHECK(constant.gauss_sum_magnitude() == doctest::Approx(1.0).epsilon(1e-9));

  QuadraticForm mixed(line, one, {1}, 0);  // x^2 + x completes to a square
  CHECK(mixed.gauss_sum_magnitude() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("scaling by a nonzero constant preserves the character average magnitude") {
  Rng rng(47);
  AffineSpace cube = AffineSpace::full(5, 3);
  for (int trial = 0; trial < 10; ++trial) {
    QuadraticForm phi = random_form(rng, cube);
    QuadraticForm scaled = QuadraticForm::zero(cube).add_scaled(phi, 2);
    CHECK(scaled.rank() == phi.rank());
    CHECK(scaled.gauss_sum_magnitude() == doctest::Approx(phi.gauss_sum_magnitude()).epsilon(1e-9));
  }
}

TEST_CASE("character average law on 500 random forms") {
  Rng rng(48);
  int checked = 0;
  while (checked < 500) {
    uint32_t p = (checked % 2 == 0) ? 5 : 7;
    int n = (p == 5) ? 1 + static_cast<int>(rng.uniform(4)) : 1 + static_cast<int>(rng.uniform(3));
    int dim = static_cast<int>(rng.uniform(n + 1));
    AffineSpace domain = random_subspace(rng, p, n, dim);
    QuadraticForm phi = random_form(rng, domain);
    ++checked;

    double mag = phi.gauss_sum_magnitude();
    double bound = std::pow(static_cast<double>(p), -phi.rank() / 2.0);
    CHECK(mag <= bound + 1e-9);

    auto total = exact_character_sum(phi, domain);
    auto norm = total.norm_squared().as_rational_integer();
    REQUIRE(norm.has_value());
    if (phi.linear_part_in_image()) {
      int64_t expected = 1;
      for (int k = 0; k < 2 * dim - phi.rank(); ++k) expected *= p;
      CHECK(*norm == expected);
      CHECK(mag == doctest::Approx(bound).epsilon(1e-9));
    } else {
      CHECK(*norm == 0);
      CHECK(mag == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
}
