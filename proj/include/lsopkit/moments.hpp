#pragma once

// Finite discrete Laurent skew inner products and their moments.

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lsopkit/errors.hpp"
#include "lsopkit/laurent_poly.hpp"
#include "lsopkit/pfaffian.hpp"
#include "lsopkit/scalar.hpp"

namespace lsopkit {

/// Nodes z_k with weights w_k. Canonical form keeps |z_k| > 1, since z and
/// 1/z are the same spectral point.
template <class T>
struct DiscreteMeasure {
  std::vector<T> nodes;
  std::vector<T> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Shape and nonzero nodes; enough for inner products.
  void validate_basic() const {
    if (nodes.size() != weights.size()) {
      throw Error(ErrorKind::Dimension, "measure: nodes and weights differ in length");
    }
    for (const T& z : nodes)
      if (is_zero(z)) throw Error(ErrorKind::Evaluation, "measure: node equal to 0");
  }

  /// Canonical-form invariants: |z| > 1, distinct pairs {z, 1/z}, nonzero weights.
  void validate_canonical() const {
    validate_basic();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (!(magnitude(nodes[k]) > T(1))) {
        throw Error(ErrorKind::Admissibility,
                    "measure: node " + std::to_string(k) + " not in canonical form |z|>1");
      }
      if (is_zero(weights[k])) {
        throw Error(ErrorKind::Admissibility, "measure: zero weight at node " + std::to_string(k));
      }
      for (std::size_t j = 0; j < k; ++j) {
        const T inv = T(1) / nodes[k];
        if (nodes[j] == nodes[k] || nodes[j] == inv) {
          throw Error(ErrorKind::Admissibility, "measure: repeated spectral point at nodes " +
                                                    std::to_string(j) + "," + std::to_string(k));
        }
      }
    }
  }

  template <class U>
  DiscreteMeasure<U> cast() const {
    DiscreteMeasure<U> out;
    for (const T& z : nodes) out.nodes.push_back(scalar_from<U>(z));
    for (const T& w : weights) out.weights.push_back(scalar_from<U>(w));
    return out;
  }
};

/// sum_k (f(1/z_k) g(z_k) - f(z_k) g(1/z_k)) w_k
template <class T>
T skew_inner(const DiscreteMeasure<T>& m, const LaurentPoly<T>& f, const LaurentPoly<T>& g) {
  m.validate_basic();
  T total(0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const T& z = m.nodes[k];
    const T zi = T(1) / z;
    total += (f(zi) * g(z) - f(z) * g(zi)) * m.weights[k];
  }
  return total;
}

/// mu_n = <1 | z^n> = sum_k (z_k^n - z_k^{-n}) w_k
template <class T>
T mu_moment(const DiscreteMeasure<T>& m, int n) {
  m.validate_basic();
  T total(0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const T zn = LaurentPoly<T>::ipow(m.nodes[k], n);
    total += (zn - T(1) / zn) * m.weights[k];
  }
  return total;
}

/// c_i = sum_k (z_k + 1/z_k)^i (z_k - 1/z_k) w_k: moments of the classical
/// functional seen by the even-degree polynomials.
template <class T>
T c_moment(const DiscreteMeasure<T>& m, int i) {
  if (i < 0) throw Error(ErrorKind::Dimension, "c_moment: negative index");
  m.validate_basic();
  T total(0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const T& z = m.nodes[k];
    const T zi = T(1) / z;
    total += LaurentPoly<T>::ipow(T(z + zi), i) * (z - zi) * m.weights[k];
  }
  return total;
}

/// The classical functional f(w) -> sum_k f(z_k + 1/z_k)(z_k - 1/z_k) w_k.
template <class T>
T op_functional(const DiscreteMeasure<T>& m, const LaurentPoly<T>& f) {
  m.validate_basic();
  T total(0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const T& z = m.nodes[k];
    const T zi = T(1) / z;
    total += f(T(z + zi)) * (z - zi) * m.weights[k];
  }
  return total;
}

/// Coefficients of the Chebyshev polynomial of the second kind U_n(w) in the
/// monomial basis, ascending.
std::vector<mpz_class> chebyshev2_coeffs(int n);

/// mu_0..mu_count from classical moments; mu_n needs c_0..c_{n-1}.
template <class T>
std::vector<T> mu_from_c(const std::vector<T>& c, std::size_t count) {
  if (c.size() < count) {
    throw Error(ErrorKind::Dimension, "mu_from_c: need " + std::to_string(count) +
                                          " classical moments, got " + std::to_string(c.size()));
  }
  std::vector<T> mu(count + 1, T(0));
  for (std::size_t n = 1; n <= count; ++n) {
    T acc(0);
    for (std::size_t k = 0; 2 * k <= n - 1; ++k) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), n - 1 - k, k);
      const T term = T(scalar_from<T>(Rational(binom))) * c[n - 1 - 2 * k];
      if (k % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    mu[n] = acc;
  }
  return mu;
}

/// Which sign links the Pfaffian entries to the skew moments.
enum class MomentSign {
  InnerProduct,  ///< Pf(i,j) = <z^i|z^j> = mu_{j-i}
  Transposed,    ///< Pf(i,j) = mu_{i-j}
};

/// Skew moments mu_n (n >= 0 stored, mu_{-n} = -mu_n) and classical moments c_i.
template <class T>
struct MomentTable {
  std::vector<T> mu_nonneg;
  std::vector<T> c;
  int order = 0;

  T mu(int n) const {
    const std::size_t k = static_cast<std::size_t>(n < 0 ? -n : n);
    if (k >= mu_nonneg.size()) {
      throw Error(ErrorKind::IncompleteTable, "moment mu_" + std::to_string(n) + " not tabulated");
    }
    return n < 0 ? T(-mu_nonneg[k]) : mu_nonneg[k];
  }

  /// Entry Pf(i,j) of the skew-moment table.
  T pf_entry(int i, int j, MomentSign sign = MomentSign::InnerProduct) const {
    return sign == MomentSign::InnerProduct ? mu(j - i) : mu(i - j);
  }

  /// Skew array over the index list, entry (p,q) = Pf(idx_p, idx_q).
  SkewArray<T> skew_array(const IndexList& idx, MomentSign sign = MomentSign::InnerProduct) const {
    SkewArray<T> s(idx.size());
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = p + 1; q < idx.size(); ++q) s.set(p, q, pf_entry(idx[p], idx[q], sign));
    return s;
  }

  /// Table whose skew moments are derived from classical moments.
  static MomentTable from_classical(std::vector<T> c, int order) {
    MomentTable t;
    t.mu_nonneg = mu_from_c(c, c.size());
    t.c = std::move(c);
    t.order = order;
    return t;
  }
};

/// Moments needed for order N: mu_0..mu_{4N} and c_0..c_{2N+1}.
template <class T>
MomentTable<T> make_moment_table(const DiscreteMeasure<T>& m, int order) {
  if (order < 1) throw Error(ErrorKind::Dimension, "moment table order must be >= 1");
  MomentTable<T> t;
  t.order = order;
  const int mu_max = std::max(4 * order, 2 * order + 2);
  t.mu_nonneg.reserve(static_cast<std::size_t>(mu_max + 1));
  for (int n = 0; n <= mu_max; ++n) t.mu_nonneg.push_back(mu_moment(m, n));
  for (int i = 0; i <= 2 * order + 1; ++i) t.c.push_back(c_moment(m, i));
  return t;
}

}  // namespace lsopkit
