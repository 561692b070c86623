#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lsopkit/numerics.hpp"
#include "lsopkit/pfaffian.hpp"

using namespace lsopkit;

TEST_CASE("tridiagonal eigenvalues of small matrices") {
  CHECK(sym_tridiag_eigs({{3.5}, {}}) == std::vector<double>{3.5});
  auto e = sym_tridiag_eigs({{0.0, 0.0}, {1.0}});
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  e = sym_tridiag_eigs({{2.0, 2.0}, {1.0}});
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(3.0));
}

TEST_CASE("tridiagonal shape is validated") {
  CHECK_THROWS_AS(sym_tridiag_eigs({{1.0, 2.0}, {}}), Error);
}

TEST_CASE("dense eigenvalues") {
  auto id = dense_eigs(MatrixD::identity(3));
  REQUIRE(id.size() == 3);
  for (auto& z : id) CHECK(std::abs(z - Complex(1.0)) < 1e-14);

  MatrixD rot(2, 2);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  auto r = dense_eigs(rot);
  CHECK(std::abs(r[0] - Complex(0, -1)) < 1e-14);
  CHECK(std::abs(r[1] - Complex(0, 1)) < 1e-14);

  MatrixD comp(2, 2);  // z^2 - 5/2 z + 1
  comp(0, 0) = 2.5;
  comp(0, 1) = -1.0;
  comp(1, 0) = 1.0;
  auto c = dense_eigs(comp);
  CHECK(std::abs(c[0] - Complex(0.5)) < 1e-14);
  CHECK(std::abs(c[1] - Complex(2.0)) < 1e-14);
}

TEST_CASE("tridiagonal and dense solvers agree; eigenvalue sum is the trace") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t n = 1; n <= 12; ++n) {
    SymTridiag t;
    for (std::size_t i = 0; i < n; ++i) t.diag.push_back(u(rng));
    for (std::size_t i = 0; i + 1 < n; ++i) t.offdiag.push_back(u(rng));
    auto a = sym_tridiag_eigs(t);
    auto b = dense_eigs(t.dense());
    double tr = 0, sa = 0;
    for (double d : t.diag) tr += d;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(b[i].imag()) < 1e-10);
      CHECK(std::fabs(a[i] - b[i].real()) < 1e-10);
      sa += a[i];
    }
    CHECK(std::fabs(sa - tr) <= 1e-10 * std::max(1.0, std::fabs(tr)));
  }
}

TEST_CASE("dense eigenvalue size limit") {
  CHECK_THROWS_AS(dense_eigs(MatrixD::identity(65)), Error);
}

TEST_CASE("determinants") {
  CHECK(dense_det(Matrix<Rational>::identity(4)) == 1);
  Matrix<Rational> rot(2, 2);
  rot(0, 1) = 1;
  rot(1, 0) = -1;
  CHECK(dense_det(rot) == 1);

  auto m = testutil::single_node();
  Rational c0 = c_moment(m, 0), c1 = c_moment(m, 1), c2 = c_moment(m, 2);
  Matrix<Rational> h(2, 2);
  h(0, 0) = c0;
  h(0, 1) = c1;
  h(1, 0) = c1;
  h(1, 1) = c2;
  CHECK(dense_det(h) == Rational(c0 * c2 - c1 * c1));
}

TEST_CASE("determinant of a skew array is its Pfaffian squared") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 8; n += 2) {
    auto s = testutil::random_skew(n, rng);
    Rational pf = pf_eliminate(s);
    CHECK(dense_det(s.dense()) == Rational(pf * pf));
  }
}

TEST_CASE("linear solve and inverse") {
  MatrixD a(2, 2);
  a(0, 0) = 4;
  a(0, 1) = 1;
  a(1, 0) = 2;
  a(1, 1) = 3;
  MatrixD rhs(2, 1);
  rhs(0, 0) = 1;
  rhs(1, 0) = 2;
  MatrixD x = solve(a, rhs);
  CHECK(x(0, 0) == doctest::Approx(0.1));
  CHECK(x(1, 0) == doctest::Approx(0.6));
  MatrixD inv = inverse(a);
  CHECK(max_abs_diff(a * inv, MatrixD::identity(2)) < 1e-15);
  MatrixD sing(2, 2);
  CHECK_THROWS_AS(inverse(sing), Error);
}

TEST_CASE("matched distance pairs multisets") {
  std::vector<Complex> a{{1, 0}, {2, 0}, {3, 1}};
  std::vector<Complex> b{{3, 1}, {1, 0.001}, {2, 0}};
  CHECK(matched_distance(a, b) == doctest::Approx(0.001));
}
