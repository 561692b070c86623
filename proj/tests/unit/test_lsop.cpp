#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lsopkit/lsop_engine.hpp"

using namespace lsopkit;
using P = LaurentPoly<Rational>;

TEST_CASE("recurrence data on a single node") {
  auto t = make_moment_table(testutil::single_node(), 1);
  auto rec = moment_pfaffian_table(t, 1);
  CHECK(rec.tau[0] == 1);
  CHECK(rec.sigma[0] == 0);
  CHECK(rec.tau[1] == Rational(3, 2));
  CHECK(rec.sigma[1] == Rational(15, 4));
  CHECK(rec.alpha[1] == Rational(5, 2));
  CHECK(rec.tau[2] == 0);
  CHECK(rec.beta[1] == 0);
}

TEST_CASE("degenerate moments are rejected") {
  DiscreteMeasure<Rational> m{{Rational(2), Rational(2)}, {Rational(1), Rational(-1)}};
  CHECK_THROWS_AS(moment_pfaffian_table(make_moment_table(m, 1), 1), Error);
}

TEST_CASE("low-order polynomials from Pfaffians") {
  auto t = make_moment_table(testutil::single_node(), 1);
  CHECK(lsop_via_pfaffian(t, 0) == P(Rational(1)));
  CHECK(lsop_via_pfaffian(t, 1) == P::monomial(1));
  P q2 = P::from_pairs({{2, Rational(1)}, {1, Rational(-5, 2)}, {0, Rational(1)}});
  CHECK(lsop_via_pfaffian(t, 2) == q2);
  auto rec = moment_pfaffian_table(t, 1);
  auto q = lsop_via_recurrence(rec, 1);
  REQUIRE(q.size() == 3);
  CHECK(q[1] == P::monomial(1));
  CHECK(q[2] == q2);
}

TEST_CASE("Pfaffian and recurrence routes agree") {
  for (int n = 1; n <= 5; ++n) {
    auto m = testutil::small_measure(n);
    auto t = make_moment_table(m, n);
    auto rec = moment_pfaffian_table(t, n);
    auto q = lsop_via_recurrence(rec, n);
    for (int k = 0; k <= 2 * n; ++k) {
      CHECK(lsop_via_pfaffian(t, k) == q[static_cast<std::size_t>(k)]);
    }
    // normalization: monic, odd ones lack z^{2k}
    for (int k = 0; k < n; ++k) {
      const auto& odd = q[static_cast<std::size_t>(2 * k + 1)];
      CHECK(odd.leading_coeff() == 1);
      CHECK(odd.coeff(2 * k) == 0);
      CHECK(q[static_cast<std::size_t>(2 * k)].is_self_reciprocal());
    }
  }
}

TEST_CASE("skew orthogonality of the monic family") {
  auto m = testutil::small_measure(4);
  auto t = make_moment_table(m, 4);
  auto rec = moment_pfaffian_table(t, 4);
  auto q = lsop_via_recurrence(rec, 4);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Rational v = skew_inner(m, q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]);
      if (i % 2 == 0 && j == i + 1) {
        CHECK(v == Rational(rec.tau[static_cast<std::size_t>(i / 2 + 1)] /
                            rec.tau[static_cast<std::size_t>(i / 2)]));
      } else if (j % 2 == 0 && i == j + 1) {
        CHECK(v == Rational(-rec.tau[static_cast<std::size_t>(j / 2 + 1)] /
                            rec.tau[static_cast<std::size_t>(j / 2)]));
      } else {
        CHECK(v == 0);
      }
    }
  }
}

TEST_CASE("orthonormal scaling on a single node") {
  auto t = make_moment_table(testutil::single_node(), 1);
  auto rec = moment_pfaffian_table(t, 1);
  // tau_2 = 0 so only n = 0 is scaled
  auto s2 = orthonormal_scale_squares(rec);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0] == Rational(2, 3));
  auto recd = rec.cast<double>();
  auto qd = lsop_via_recurrence(recd, 1);
  auto qt = orthonormalize(qd, recd);
  REQUIRE(qt.size() == 2);
  CHECK(qt[0].coeff(0) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  auto md = testutil::single_node().cast<double>();
  CHECK(skew_inner(md, qt[0], qt[1]) == doctest::Approx(1.0));
  auto sp = scaled_pairing(skew_inner(testutil::single_node(), lsop_via_pfaffian(t, 0),
                                      lsop_via_pfaffian(t, 1)),
                           s2[0], s2[0]);
  CHECK(sp.is_one());
}

TEST_CASE("even polynomials reduce to ordinary orthogonal polynomials") {
  CHECK(even_to_op(P(Rational(1))) == P(Rational(1)));
  auto t = make_moment_table(testutil::single_node(), 1);
  auto r1 = even_to_op(lsop_via_pfaffian(t, 2));
  CHECK(r1 == P::from_pairs({{1, Rational(1)}, {0, Rational(-5, 2)}}));
  CHECK_THROWS_AS(even_to_op(P::from_pairs({{2, Rational(1)}, {0, Rational(2)}})), Error);
  CHECK_THROWS_AS(even_to_op(P::monomial(3)), Error);

  const int n = 4;
  auto m = testutil::small_measure(n);
  auto tab = make_moment_table(m, n);
  auto rec = moment_pfaffian_table(tab, n);
  auto q = lsop_via_recurrence(rec, n);
  std::vector<P> r;
  for (int k = 0; k <= n; ++k) {
    r.push_back(even_to_op(q[static_cast<std::size_t>(2 * k)]));
    CHECK(r.back() == op_via_hankel(tab.c, k));
  }
  // three-term recurrence in w
  const P w = P::monomial(1);
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    P rhs = r[i + 1] + r[i] * Rational(rec.alpha[i + 1] - rec.alpha[i]);
    if (k > 0) rhs += r[i - 1] * rec.beta[i];
    CHECK(w * r[i] == rhs);
  }
  // classical orthogonality
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < a; ++b)
      CHECK(op_functional(m, P(r[static_cast<std::size_t>(a)] * r[static_cast<std::size_t>(b)])) == 0);
}

TEST_CASE("Hankel polynomial of degree one") {
  std::vector<Rational> c{Rational(3), Rational(5), Rational(2)};
  CHECK(op_via_hankel(c, 0) == P(Rational(1)));
  CHECK(op_via_hankel(c, 1) == P::from_pairs({{1, Rational(1)}, {0, Rational(-5, 3)}}));
  std::vector<Rational> zero{Rational(0), Rational(0), Rational(0)};
  CHECK_THROWS_AS(op_via_hankel(zero, 1), Error);
}

TEST_CASE("Pfaffian and Hankel determinants coincide") {
  auto m = testutil::small_measure(4);
  auto t = make_moment_table(m, 4);
  auto rep = verify_pfaffian_det(t, t.c, 4);
  for (const auto& d : rep.tau_deviation) CHECK(d == 0);
  for (const auto& d : rep.sigma_deviation) CHECK(d == 0);
  CHECK(rep.max_relative == 0.0);
  auto bad = t.c;
  bad[2] += 1;
  CHECK(verify_pfaffian_det(t, bad, 4).max_relative > 0.0);
}

TEST_CASE("Kodama construction") {
  std::vector<Rational> zeros(3, Rational(0));
  auto q0 = kodama_sops(zeros, zeros, 3);
  for (int n = 0; n < 8; ++n) CHECK(q0[static_cast<std::size_t>(n)] == P::monomial(n));
  std::mt19937_64 rng(4);
  std::vector<Rational> a, b;
  for (int i = 0; i < 3; ++i) {
    a.push_back(testutil::random_rational(rng));
    b.push_back(testutil::random_rational(rng));
  }
  auto q = kodama_sops(a, b, 3);
  CHECK(q[0] == P(Rational(1)));
  CHECK(q[1] == P::monomial(1));
  for (const auto& r : kodama_residuals(a, b, q)) CHECK(r.is_zero());
}

TEST_CASE("node-value recurrence data equals the Pfaffian table") {
  for (int n = 1; n <= 5; ++n) {
    auto m = testutil::small_measure(n);
    auto a = moment_pfaffian_table(make_moment_table(m, n), n);
    auto b = recurrence_via_stieltjes(m);
    CHECK(a.alpha == b.alpha);
    CHECK(a.beta == b.beta);
    CHECK(a.tau == b.tau);
    CHECK(a.sigma == b.sigma);
  }
}
