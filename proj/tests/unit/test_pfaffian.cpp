#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lsopkit/pfaffian.hpp"

using namespace lsopkit;
using testutil::random_skew;

namespace {

SkewArray<Rational> four_example() {
  SkewArray<Rational> s(4);
  s.set(0, 1, 1);
  s.set(0, 2, 2);
  s.set(0, 3, 3);
  s.set(1, 2, 4);
  s.set(1, 3, 5);
  s.set(2, 3, 6);
  return s;
}

}  // namespace

TEST_CASE("skew array storage") {
  SkewArray<Rational> s(3);
  s.set(0, 2, Rational(5, 3));
  CHECK(s(2, 0) == Rational(-5, 3));
  CHECK(s(1, 1) == 0);
  s.set(2, 1, 4);
  CHECK(s(1, 2) == -4);
  CHECK_THROWS_AS(s.set(1, 1, 1), Error);
  CHECK_THROWS_AS(s(3, 0), Error);
}

TEST_CASE("small Pfaffians") {
  CHECK(pf_eliminate(SkewArray<Rational>(0)) == 1);
  SkewArray<Rational> two(2);
  two.set(0, 1, Rational(7, 2));
  CHECK(pf_eliminate(two) == Rational(7, 2));
  CHECK(pf_expand(two) == Rational(7, 2));
  CHECK(pf_eliminate(four_example()) == 8);
  CHECK(pf_expand(four_example()) == 8);
  SkewArray<double> d(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) d.set(i, j, four_example()(i, j).get_d());
  CHECK(pf_eliminate(d) == doctest::Approx(8.0));
}

TEST_CASE("odd size and expansion cap") {
  CHECK_THROWS_AS(pf_eliminate(SkewArray<Rational>(3)), Error);
  CHECK_THROWS_AS(pf_expand(SkewArray<Rational>(5)), Error);
  CHECK_THROWS_AS(pf_expand(SkewArray<Rational>(12)), Error);
  CHECK_THROWS_AS(pf_indices(four_example(), {0, 1, 2}), Error);
}

TEST_CASE("zero pivot row gives exactly zero") {
  SkewArray<double> s(4);
  s.set(1, 2, 3.0);
  s.set(2, 3, 1.0);
  CHECK(pf_eliminate(s) == 0.0);
}

TEST_CASE("elimination and expansion agree exactly up to size 10") {
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n <= 10; n += 2) {
    for (int rep = 0; rep < 3; ++rep) {
      auto s = random_skew(n, rng);
      CHECK(pf_eliminate(s) == pf_expand(s));
    }
  }
}

TEST_CASE("duplicated indices and transpositions") {
  std::mt19937_64 rng(5);
  auto s = random_skew(8, rng);
  CHECK(pf_indices(s, {0, 3, 3, 5}) == 0);
  IndexList idx{0, 1, 2, 3, 4, 5};
  const Rational base = pf_indices(s, idx);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> perm(idx);
    std::shuffle(perm.begin(), perm.end(), rng);
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    const Rational expected = inversions % 2 == 0 ? base : Rational(-base);
    CHECK(pf_indices(s, perm) == expected);
  }
}

TEST_CASE("four-index identity with an even base set") {
  std::mt19937_64 rng(13);
  for (int base_size : {0, 2, 4}) {
    auto s = random_skew(static_cast<std::size_t>(base_size + 4), rng);
    IndexList base;
    for (int i = 0; i < base_size; ++i) base.push_back(i + 4);
    auto r = check_identity_even(s, base, 0, 1, 2, 3);
    CHECK(r.residual == 0);
  }
  auto sd = testutil::random_skew_double(8, rng);
  auto r = check_identity_even(sd, {4, 5, 6, 7}, 0, 1, 2, 3);
  CHECK(r.residual <= 1e-10 * r.scale);
}

TEST_CASE("four-index identity with an odd base set") {
  std::mt19937_64 rng(17);
  for (int base_size : {1, 3}) {
    auto s = random_skew(static_cast<std::size_t>(base_size + 4), rng);
    IndexList base;
    for (int i = 0; i < base_size; ++i) base.push_back(i + 4);
    CHECK(check_identity_odd(s, base, 0, 1, 2, 3).residual == 0);
  }
  auto s = random_skew(6, rng);
  auto r = check_identity_odd(s, {4}, 0, 0, 2, 3);
  CHECK(r.residual == 0);
  CHECK(r.scale == 0);
  CHECK_THROWS_AS(check_identity_odd(s, {4, 5}, 0, 1, 2, 3), Error);
}
