#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lsopkit/lsolp_basis.hpp"

using namespace lsopkit;
using PD = LaurentPoly<double>;
using PR = LaurentPoly<Rational>;

namespace {

std::vector<PD> orthonormal_lsops(const DiscreteMeasure<Rational>& m) {
  const int n = static_cast<int>(m.size());
  auto rec = recurrence_via_stieltjes(m).cast<double>();
  auto q = lsop_via_recurrence(rec, n);
  return orthonormalize(q, rec);
}

bool butterfly_pattern(const MatrixD& a, std::size_t n, double tol) {
  for (std::size_t i = 0; i < 2 * n; ++i) {
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const bool top = i < n, left = j < n;
      const std::size_t bi = top ? i : i - n, bj = left ? j : j - n;
      bool allowed;
      if (top && left) allowed = bi == bj;
      else if (!top && left) allowed = bi == bj;
      else allowed = bi + 1 >= bj && bj + 1 >= bi;  // tridiagonal blocks
      if (!allowed && std::fabs(a(i, j)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("LSOLPs from orthonormal LSOPs") {
  auto m = testutil::single_node();
  auto qt = orthonormal_lsops(m);
  auto md = m.cast<double>();
  auto fam = lsolp_from_lsop(md, qt);
  REQUIRE(fam.size() == 2);
  CHECK(fam[0] == qt[0]);
  CHECK(fam[1] == PD(-qt[0].shifted(-1)));
  CHECK(skew_inner(md, fam[0], fam[1]) == doctest::Approx(1.0));
  // z Q_{2n+1} = -Q_{2n}
  CHECK(fam[1].shifted(1) == -fam[0]);

  std::vector<PD> bad{PD(2.0), PD::monomial(1)};
  CHECK_THROWS_AS(lsolp_from_lsop(md, bad), Error);
}

TEST_CASE("skew Gram-Schmidt matches the LSOP construction exactly") {
  for (int n = 1; n <= 4; ++n) {
    auto m = n == 1 ? testutil::single_node() : testutil::small_measure(n);
    auto rec = recurrence_via_stieltjes(m);
    auto q = lsop_via_recurrence(rec, n);
    auto gs = gram_schmidt_lsolp_monic(m, static_cast<std::size_t>(2 * n));
    auto monic = lsolp_monic_from_lsop(q, n);
    REQUIRE(gs.family.size() == monic.size());
    for (std::size_t i = 0; i < monic.size(); ++i) CHECK(gs.family[i] == monic[i]);
    for (int k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      CHECK(gs.kappa[i] == Rational(-rec.tau[i + 1] / rec.tau[i]));
    }
    // normalized versions agree in double
    auto fam_gs = normalize_gram_schmidt(gs);
    auto qt = orthonormalize(lsop_via_recurrence(rec.cast<double>(), n), rec.cast<double>());
    auto fam = lsolp_from_lsop(qt);
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (const auto& [e, c] : fam[i].terms())
        CHECK(fam_gs[i].coeff(e) == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("Gram-Schmidt degenerate inputs") {
  DiscreteMeasure<Rational> dup{{Rational(2), Rational(2)}, {Rational(1), Rational(1)}};
  CHECK_THROWS_AS(gram_schmidt_lsolp_monic(dup, 4), Error);
  auto one = gram_schmidt_lsolp(testutil::single_node().cast<double>(), 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].coeff(0) == doctest::Approx(std::sqrt(2.0 / 3.0)));
}

TEST_CASE("gauge transform") {
  auto m = testutil::small_measure(3);
  auto md = m.cast<double>();
  auto fam = lsolp_from_lsop(orthonormal_lsops(m));
  auto same = gauge_transform(fam, GaugeParams<double>::trivial(3));
  for (std::size_t i = 0; i < fam.size(); ++i) CHECK(same[i] == fam[i]);
  GaugeParams<double> g{{1.5, -0.7, 2.0}, {0.3, -1.1, 0.25}};
  auto gt = gauge_transform(fam, g);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      CHECK(skew_inner(md, gt[2 * a], gt[2 * b + 1]) ==
            doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
      CHECK(std::fabs(skew_inner(md, gt[2 * a], gt[2 * b])) < 1e-10);
    }
  }
  GaugeParams<double> zero{{1.0, 0.0, 1.0}, {0, 0, 0}};
  CHECK_THROWS_AS(gauge_transform(fam, zero), Error);
}

TEST_CASE("exact support tables are skew orthonormal") {
  auto em = build_exact_model(testutil::small_measure(5));
  CHECK(skew_gram_defect(lsop_support_table(em)).max() < 1e-12);
  CHECK(skew_gram_defect(lsolp_support_table(em)).max() < 1e-12);
}

TEST_CASE("multiplication matrix") {
  auto m1 = testutil::single_node();
  auto mm = multiplication_matrix(m1.cast<double>(), lsolp_from_lsop(orthonormal_lsops(m1)));
  auto e = dense_eigs(mm.a);
  CHECK(std::abs(e[0] - Complex(0.5)) < 1e-12);
  CHECK(std::abs(e[1] - Complex(2.0)) < 1e-12);

  auto em = build_exact_model(testutil::small_measure(4));
  auto table = lsolp_support_table(em);
  auto base = multiplication_matrix(table);
  CHECK(butterfly_pattern(base.a, 4, 1e-10));
  std::vector<Complex> expected;
  for (double z : table.nodes) {
    expected.emplace_back(z);
    expected.emplace_back(1.0 / z);
  }
  CHECK(matched_distance(dense_eigs(base.a), expected) < 1e-9);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 2.0), v(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    GaugeParams<double> g;
    for (int i = 0; i < 4; ++i) {
      g.r.push_back(u(rng));
      g.lambda.push_back(v(rng));
    }
    auto mg = multiplication_matrix(gauge_support(table, g));
    CHECK(butterfly_pattern(mg.a, 4, 1e-9));
    CHECK(matched_distance(dense_eigs(mg.a), expected) < 1e-8);
  }
}

TEST_CASE("multiplication matrix rejects a non-closed family") {
  auto em = build_exact_model(testutil::small_measure(3));
  auto table = lsolp_support_table(em);
  table.values[2][1] += 0.5;
  CHECK_THROWS_AS(multiplication_matrix(table), Error);
}
