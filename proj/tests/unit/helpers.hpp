#pragma once

#include <random>

#include "lsopkit/moments.hpp"
#include "lsopkit/pfaffian.hpp"
#include "lsopkit/scalar.hpp"

namespace testutil {

using lsopkit::Rational;

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline lsopkit::SkewArray<Rational> random_skew(std::size_t n, std::mt19937_64& rng) {
  lsopkit::SkewArray<Rational> s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, random_rational(rng));
  return s;
}

inline lsopkit::SkewArray<double> random_skew_double(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  lsopkit::SkewArray<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, u(rng));
  return s;
}

inline lsopkit::DiscreteMeasure<Rational> single_node() {
  return {{Rational(2)}, {Rational(1)}};
}

/// Nodes 1.2, 1.9, 2.6, ... with small exact weights.
inline lsopkit::DiscreteMeasure<Rational> small_measure(int n) {
  lsopkit::DiscreteMeasure<Rational> m;
  for (int k = 0; k < n; ++k) {
    m.nodes.push_back(lsopkit::make_rational(12 + 7 * k, 10));
    m.weights.push_back(lsopkit::make_rational(1 + (k * 3) % 5, 4));
  }
  return m;
}

}  // namespace testutil
