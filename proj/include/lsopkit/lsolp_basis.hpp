#pragma once

// Laurent skew orthogonal Laurent polynomials (LSOLPs): construction from the
// even LSOPs, skew Gram-Schmidt, gauge changes, and the matrix of
// multiplication by z on the measure's support.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lsopkit/errors.hpp"
#include "lsopkit/laurent_poly.hpp"
#include "lsopkit/model.hpp"
#include "lsopkit/moments.hpp"
#include "lsopkit/numerics.hpp"

namespace lsopkit {

/// Q~_{2n} = Q_{2n}/r_n, Q~_{2n+1} = r_n Q_{2n+1} + lambda_n Q_{2n}.
template <class T>
struct GaugeParams {
  std::vector<T> r;
  std::vector<T> lambda;

  static GaugeParams trivial(std::size_t n) {
    return {std::vector<T>(n, T(1)), std::vector<T>(n, T(0))};
  }
  void validate(std::size_t n) const {
    if (r.size() < n || lambda.size() < n) {
      throw Error(ErrorKind::Dimension, "gauge needs " + std::to_string(n) + " parameters");
    }
    for (std::size_t i = 0; i < n; ++i)
      if (is_zero(r[i])) throw Error(ErrorKind::Gauge, "gauge r_" + std::to_string(i) + " is zero");
  }
};

template <class T>
using LsolpFamily = std::vector<LaurentPoly<T>>;

/// Q_{2m} = z^{-m} q~_{2m}, Q_{2m+1} = -z^{-m-1} q~_{2m} from the even
/// orthonormal LSOPs; `qt` holds q~_0..q~_{2N-1}.
template <class T>
LsolpFamily<T> lsolp_from_lsop(const std::vector<LaurentPoly<T>>& qt) {
  LsolpFamily<T> out;
  for (std::size_t m = 0; 2 * m < qt.size(); ++m) {
    const int e = static_cast<int>(m);
    out.push_back(qt[2 * m].shifted(-e));
    out.push_back(-qt[2 * m].shifted(-e - 1));
  }
  return out;
}

/// As above, then checks skew orthonormality on `m` by direct evaluation.
inline LsolpFamily<double> lsolp_from_lsop(const DiscreteMeasure<double>& m,
                                           const std::vector<LaurentPoly<double>>& qt,
                                           double tol = 1e-9) {
  LsolpFamily<double> fam = lsolp_from_lsop(qt);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const double target = (i % 2 == 0 && j == i + 1) ? 1.0 : 0.0;
      const double v = skew_inner(m, fam[i], fam[j]);
      if (std::fabs(v - target) > tol) {
        throw Error(ErrorKind::Structure, "lsolp_from_lsop: input not skew orthonormal, <Q_" +
                                              std::to_string(i) + "|Q_" + std::to_string(j) +
                                              "> = " + format_double(v));
      }
    }
  }
  return fam;
}

/// Monic companions z^{-m} q_{2m}, z^{-m-1} q_{2m} for m < N.
template <class T>
LsolpFamily<T> lsolp_monic_from_lsop(const std::vector<LaurentPoly<T>>& q, int order) {
  LsolpFamily<T> out;
  for (int m = 0; m < order; ++m) {
    const auto& q2m = q.at(static_cast<std::size_t>(2 * m));
    out.push_back(q2m.shifted(-m));
    out.push_back(q2m.shifted(-m - 1));
  }
  return out;
}

/// Element j of the alternating basis 1, z^-1, z, z^-2, z^2, ...
inline int alternating_exponent(std::size_t j) {
  const int k = static_cast<int>((j + 1) / 2);
  return j % 2 == 1 ? -k : k;
}

template <class T>
struct MonicGramSchmidt {
  LsolpFamily<T> family;  ///< monic in the alternating basis
  std::vector<T> kappa;   ///< kappa_n = <Q_{2n}|Q_{2n+1}>
};

/// Skew Gram-Schmidt on the alternating basis, pairwise; count is rounded up
/// to an even number internally and the result truncated to `count`.
template <class T>
MonicGramSchmidt<T> gram_schmidt_lsolp_monic(const DiscreteMeasure<T>& m, std::size_t count) {
  if (count == 0) throw Error(ErrorKind::Dimension, "gram_schmidt_lsolp: empty family");
  if (count > 2 * m.size()) {
    throw Error(ErrorKind::Dimension, "gram_schmidt_lsolp: at most 2N members on N nodes");
  }
  using P = LaurentPoly<T>;
  MonicGramSchmidt<T> out;
  const std::size_t pairs = (count + 1) / 2;
  for (std::size_t l = 0; l < pairs; ++l) {
    P even = P::monomial(alternating_exponent(2 * l));
    P odd = P::monomial(alternating_exponent(2 * l + 1));
    for (std::size_t j = 0; j < l; ++j) {
      const P& pj = out.family[2 * j];
      const P& rj = out.family[2 * j + 1];
      for (P* f : {&even, &odd}) {
        const T b = skew_inner(m, pj, *f) / out.kappa[j];
        const T a = -skew_inner(m, rj, *f) / out.kappa[j];
        *f -= pj * a + rj * b;
      }
    }
    const T kappa = skew_inner(m, even, odd);
    if (is_zero(kappa)) {
      throw Error(ErrorKind::Degeneracy,
                  "gram_schmidt_lsolp: vanishing skew Gram minor at pair " + std::to_string(l));
    }
    out.family.push_back(std::move(even));
    out.family.push_back(std::move(odd));
    out.kappa.push_back(kappa);
  }
  out.family.resize(count);
  return out;
}

/// Normalized family: Q_{2n} = Q^m_{2n}/sqrt|kappa|, Q_{2n+1} = sgn(kappa) Q^m_{2n+1}/sqrt|kappa|.
LsolpFamily<double> normalize_gram_schmidt(const MonicGramSchmidt<Rational>& gs);
LsolpFamily<double> gram_schmidt_lsolp(const DiscreteMeasure<double>& m, std::size_t count);

template <class T>
LsolpFamily<T> gauge_transform(const LsolpFamily<T>& fam, const GaugeParams<T>& g) {
  const std::size_t n = fam.size() / 2;
  g.validate(n);
  LsolpFamily<T> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(fam[2 * i] * T(T(1) / g.r[i]));
    out.push_back(fam[2 * i + 1] * g.r[i] + fam[2 * i] * g.lambda[i]);
  }
  return out;
}

/// Values of a family at the 2N support points z_1..z_N, 1/z_1..1/z_N.
struct SupportTable {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<std::vector<double>> values;  ///< values[member][point]

  std::size_t order() const { return nodes.size(); }
  std::size_t members() const { return values.size(); }
  double point(std::size_t p) const {
    return p < nodes.size() ? nodes[p] : 1.0 / nodes[p - nodes.size()];
  }
  /// <f_i | f_j> from support values.
  double pairing(std::size_t i, std::size_t j) const;
};

template <class T>
SupportTable support_table(const DiscreteMeasure<T>& m, const std::vector<LaurentPoly<T>>& fam) {
  SupportTable t;
  for (std::size_t k = 0; k < m.size(); ++k) {
    t.nodes.push_back(to_double(m.nodes[k]));
    t.weights.push_back(to_double(m.weights[k]));
  }
  for (const auto& f : fam) {
    std::vector<double> row;
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_double(f(m.nodes[k])));
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_double(f(T(T(1) / m.nodes[k]))));
    t.values.push_back(std::move(row));
  }
  return t;
}

/// Orthonormal LSOPs q~_0..q~_{2N-1}: exact values rounded once, times s_n.
SupportTable lsop_support_table(const ExactModel& em);
/// Orthonormal LSOLPs Q_0..Q_{2N-1}, same evaluation scheme.
SupportTable lsolp_support_table(const ExactModel& em);

SupportTable gauge_support(const SupportTable& t, const GaugeParams<double>& g);

struct SkewGramDefect {
  double dual = 0.0;  ///< max |<f_{2m}|f_{2n+1}> - delta_mn|
  double even = 0.0;  ///< max |<f_{2m}|f_{2n}>|
  double odd = 0.0;   ///< max |<f_{2m+1}|f_{2n+1}>|
  double max() const { return std::max({dual, even, odd}); }
};

SkewGramDefect skew_gram_defect(const SupportTable& t);

struct MultiplicationMatrix {
  MatrixD a;                ///< rows/cols ordered (f_1, f_3, ..., f_0, f_2, ...)
  double residual = 0.0;    ///< max relative residual at the support points
};

inline constexpr double kRepresentationTol = 1e-8;

/// Matrix of f -> z f in the family, coefficients from the duality pairings
/// <f_{2m}|.> and <.|f_{2m+1}>. Throws Representation if some support point
/// violates (z w) = A w beyond `tol`.
MultiplicationMatrix multiplication_matrix(const SupportTable& t,
                                           double tol = kRepresentationTol);

/// Multiplication matrix from exact polynomials (small problems and tests).
MultiplicationMatrix multiplication_matrix(const DiscreteMeasure<double>& m,
                                           const LsolpFamily<double>& fam,
                                           double tol = kRepresentationTol);

}  // namespace lsopkit
