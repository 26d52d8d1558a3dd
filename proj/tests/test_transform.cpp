#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fourap/cyclotomic.hpp"
#include "fourap/group_index.hpp"
#include "fourap/quadratic_form.hpp"
#include "fourap/rng.hpp"
#include "fourap/space.hpp"
#include "fourap/transform.hpp"

using namespace fourap;

namespace {

// Independent quadratic-time oracle for the expectation-normalized transform.
std::vector<cplx> dft_oracle(const std::vector<cplx>& f, uint32_t p, int dim) {
  GroupIndex g(p, dim);
  size_t size = f.size();
  std::vector<cplx> out(size);
  for (size_t xi = 0; xi < size; ++xi) {
    cplx acc = 0.0;
    for (size_t x = 0; x < size; ++x) {
      uint32_t dot = g.dot(static_cast<uint32_t>(xi), static_cast<uint32_t>(x));
      acc += f[x] * std::conj(character(dot, p));
    }
    out[xi] = acc / static_cast<double>(size);
  }
  return out;
}

std::vector<cplx> random_signal(Rng& rng, size_t size) {
  std::vector<cplx> f(size);
  for (auto& v : f) v = cplx(rng.uniform_real() * 2 - 1, rng.uniform_real() * 2 - 1);
  return f;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("characters multiply and sum to zero") {
  for (uint32_t p : {5u, 7u, 11u}) {
    cplx total = 0.0;
    for (uint32_t a = 0; a < p; ++a) {
      total += character(a, p);
      for (uint32_t b = 0; b < p; ++b) {
        CHECK(std::abs(character(a, p) * character(b, p) - character((a + b) % p, p)) < 1e-12);
      }
    }
    CHECK(std::abs(total) < 1e-12);
    CHECK(std::abs(character(0, p) - cplx(1.0)) < 1e-15);
  }
}

TEST_CASE("transform of the constant function is a delta at zero") {
  std::vector<cplx> f(25, 1.0);
  auto fh = dft(f, 5, 2);
  CHECK(std::abs(fh[0] - cplx(1.0)) < 1e-12);
  for (size_t i = 1; i < fh.size(); ++i) CHECK(std::abs(fh[i]) < 1e-12);
}

TEST_CASE("transform of a point mass is flat") {
  std::vector<cplx> f(5, 0.0);
  f[0] = 1.0;
  auto fh = dft(f, 5, 1);
  for (const auto& v : fh) CHECK(std::abs(v - cplx(0.2)) < 1e-12);
}

TEST_CASE("transform of a character concentrates at its frequency") {
  GroupIndex g(7, 2);
  uint32_t xi0 = 11;  // (4, 1)
  std::vector<cplx> f(49);
  for (uint32_t x = 0; x < 49; ++x) f[x] = character(g.dot(xi0, x), 7);
  auto fh = dft(f, 7, 2);
  for (uint32_t xi = 0; xi < 49; ++xi) {
    cplx want = (xi == xi0) ? cplx(1.0) : cplx(0.0);
    CHECK(std::abs(fh[xi] - want) < 1e-12);
  }
}

TEST_CASE("fast transform matches the quadratic-time oracle") {
  Rng rng(31);
  auto f = random_signal(rng, 125);
  auto fast = dft(f, 5, 3);
  auto slow = dft_oracle(f, 5, 3);
  CHECK(max_abs_diff(fast, slow) < 1e-9);
}

TEST_CASE("inverse transform undoes the transform") {
  Rng rng(32);
  for (auto [p, d] : {std::pair<uint32_t, int>{5, 3}, {7, 2}, {11, 1}}) {
    size_t size = 1;
    for (int i = 0; i < d; ++i) size *= p;
    auto f = random_signal(rng, size);
    auto back = idft(dft(f, p, d), p, d);
    CHECK(max_abs_diff(f, back) < 1e-9);
  }
}

TEST_CASE("energy identity") {
  Rng rng(33);
  for (auto [p, d] : {std::pair<uint32_t, int>{5, 4}, {7, 3}}) {
    size_t size = 1;
    for (int i = 0; i < d; ++i) size *= p;
    auto f = random_signal(rng, size);
    auto fh = dft(f, p, d);
    double lhs = 0, rhs = 0;
    for (const auto& v : f) lhs += std::norm(v);
    lhs /= static_cast<double>(size);
    for (const auto& v : fh) rhs += std::norm(v);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("real signals have conjugate-symmetric transforms") {
  Rng rng(34);
  GroupIndex g(5, 2);
  std::vector<cplx> f(25);
  for (auto& v : f) v = rng.uniform_real() * 2 - 1;
  auto fh = dft(f, 5, 2);
  for (uint32_t xi = 0; xi < 25; ++xi) {
    CHECK(std::abs(fh[g.neg(xi)] - std::conj(fh[xi])) < 1e-12);
  }
}

TEST_CASE("transform size must match p^dim") {
  std::vector<cplx> f(24, 1.0);
  CHECK_THROWS(dft(f, 5, 2));
}

TEST_CASE("cyclotomic integers form a ring with the expected relations") {
  uint32_t p = 5;
  auto z = CyclotomicInt::root(1, p);
  // 1 + zeta + zeta^2 + zeta^3 + zeta^4 = 0
  CyclotomicInt total = CyclotomicInt::zero(p);
  for (uint32_t a = 0; a < p; ++a) total = total + CyclotomicInt::root(a, p);
  CHECK(total.is_zero());
  // zeta^2 * zeta^4 = zeta (exponent arithmetic mod p)
  CHECK(CyclotomicInt::root(2, p) * CyclotomicInt::root(4, p) == CyclotomicInt::root(1, p));
  CHECK(z.conjugate() == CyclotomicInt::root(4, p));
  // |zeta^a|^2 = 1
  CHECK(z.norm_squared().as_rational_integer() == 1);
  CHECK((z - z).is_zero());
  // equality is modulo the all-ones vector
  CyclotomicInt a({3, 1, 1, 1, 1}, p);
  CyclotomicInt b({2, 0, 0, 0, 0}, p);
  CHECK(a == b);
  CHECK(a.as_rational_integer() == 2);
  CHECK(a.canonical().coeffs() == std::vector<int64_t>{2, 0, 0, 0, 0});
  CHECK(!CyclotomicInt::root(1, p).as_rational_integer().has_value());
}

TEST_CASE("cyclotomic embedding matches floating-point characters") {
  Rng rng(35);
  for (uint32_t p : {5u, 7u}) {
    for (int trial = 0; trial < 50; ++trial) {
      CyclotomicInt z = CyclotomicInt::zero(p);
      cplx w = 0.0;
      for (int k = 0; k < 6; ++k) {
        uint32_t a = static_cast<uint32_t>(rng.uniform(p));
        z = z + CyclotomicInt::root(a, p);
        w += character(a, p);
      }
      CHECK(std::abs(z.embed() - w) < 1e-9);
    }
  }
}

TEST_CASE("exact character sums of one-variable forms") {
  AffineSpace line = AffineSpace::full(5, 1);
  ModMatrix zero(1, 1, 5);

  auto constant = QuadraticForm(line, zero, {0}, 0);
  auto s0 = exact_character_sum(constant, line);
  CHECK(s0.canonical().coeffs() == std::vector<int64_t>{5, 0, 0, 0, 0});
  CHECK(s0.as_rational_integer() == 5);

  auto linear = QuadraticForm(line, zero, {1}, 0);
  auto s1 = exact_character_sum(linear, line);
  CHECK(s1.coeffs() == std::vector<int64_t>{1, 1, 1, 1, 1});
  CHECK(s1.is_zero());

  ModMatrix one(1, 1, 5);
  one.at(0, 0) = 1;
  auto square = QuadraticForm(line, one, {0}, 0);
  auto s2 = exact_character_sum(square, line);
  // x^2 takes value 0 once and each nonzero square twice
  CHECK(s2.coeffs() == std::vector<int64_t>{1, 2, 0, 0, 2});
  CHECK(s2.norm_squared().as_rational_integer() == 5);
}

TEST_CASE("exact character sums agree with the numeric average") {
  Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 5 : 7;
    int n = 2 + static_cast<int>(rng.uniform(2));
    AffineSpace s = AffineSpace::full(p, n);
    ModMatrix m(n, n, p);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        uint32_t v = static_cast<uint32_t>(rng.uniform(p));
        m.at(i, j) = v;
        m.at(j, i) = v;
      }
    std::vector<uint32_t> r(n);
    for (auto& v : r) v = static_cast<uint32_t>(rng.uniform(p));
    QuadraticForm phi(s, m, r, static_cast<uint32_t>(rng.uniform(p)));
    auto exact = exact_character_sum(phi, s);
    double numeric = phi.gauss_sum_magnitude() * static_cast<double>(s.size());
    CHECK(std::abs(std::abs(exact.embed()) - numeric) < 1e-9 * static_cast<double>(s.size()));
  }
}
