#pragma once

// Pfaffians of skew-symmetric arrays: elimination (production) and recursive
// expansion (oracle), plus the four-index product identities.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lsopkit/errors.hpp"
#include "lsopkit/numerics.hpp"
#include "lsopkit/scalar.hpp"

namespace lsopkit {

using IndexList = std::vector<int>;

/// Skew-symmetric array holding only its strict upper triangle.
template <class T>
class SkewArray {
 public:
  SkewArray() = default;
  explicit SkewArray(std::size_t size)
      : size_(size), upper_(size * (size - (size > 0 ? 1 : 0)) / 2, T(0)) {}

  std::size_t size() const noexcept { return size_; }

  /// Entry (i,j) of the full array: negated for i>j, zero on the diagonal.
  T operator()(std::size_t i, std::size_t j) const {
    check(i, j);
    if (i == j) return T(0);
    if (i < j) return upper_[offset(i, j)];
    return T(-upper_[offset(j, i)]);
  }

  void set(std::size_t i, std::size_t j, const T& value) {
    check(i, j);
    if (i == j) {
      if (!is_zero(value)) throw Error(ErrorKind::Structure, "skew array diagonal must be zero");
      return;
    }
    if (i < j)
      upper_[offset(i, j)] = value;
    else
      upper_[offset(j, i)] = T(-value);
  }

  Matrix<T> dense() const {
    Matrix<T> m(size_, size_);
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  /// Sub-array in the order given by `idx`; duplicates are allowed here and
  /// make the resulting array singular.
  SkewArray select(const IndexList& idx) const {
    SkewArray out(idx.size());
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (idx[p] < 0 || static_cast<std::size_t>(idx[p]) >= size_) {
        throw Error(ErrorKind::IncompleteTable,
                    "index " + std::to_string(idx[p]) + " outside skew table of size " +
                        std::to_string(size_));
      }
      for (std::size_t q = p + 1; q < idx.size(); ++q)
        out.upper_[out.offset(p, q)] = (*this)(idx[p], idx[q]);
    }
    return out;
  }

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    // row-major strict upper triangle
    return i * (2 * size_ - i - 1) / 2 + (j - i - 1);
  }
  void check(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_) {
      throw Error(ErrorKind::IncompleteTable, "skew array index out of range");
    }
  }

  std::size_t size_ = 0;
  std::vector<T> upper_;
};

namespace detail {

inline std::size_t bit_size(const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

/// Integer Pfaffian by fraction-free elimination. Each step replaces the
/// remaining entries by Pf(M, a, b) for the growing pivot set M, using
/// Pf(M,c,d,a,b)Pf(M) = Pf(M,c,d)Pf(M,a,b) - Pf(M,c,a)Pf(M,d,b) + Pf(M,c,b)Pf(M,d,a)
/// with an exact division by Pf(M).
inline mpz_class pf_integer(Matrix<mpz_class> b) {
  const std::size_t n = b.rows();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t k = 0; k < n; k += 2) {
    std::size_t piv = n;
    std::size_t best = 0;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(b(k, j)) == 0) continue;
      const std::size_t bits = bit_size(b(k, j));
      if (piv == n || bits < best) {
        best = bits;
        piv = j;
      }
    }
    if (piv == n) return 0;
    if (piv != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(b(k + 1, j), b(piv, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(b(i, k + 1), b(i, piv));
      sign = -sign;
    }
    const mpz_class p = b(k, k + 1);
    if (k + 2 == n) return sign > 0 ? p : mpz_class(-p);
    for (std::size_t i = k + 2; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        t = p * b(i, j);
        t -= b(k, i) * b(k + 1, j);
        t += b(k, j) * b(k + 1, i);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        b(i, j) = t;
        b(j, i) = -t;
      }
    }
    prev = p;
  }
  return sign > 0 ? prev : mpz_class(-prev);  // unreachable for n > 0
}

/// Rational Pfaffian: clear denominators, Pf(L A) = L^{n/2} Pf(A).
inline Rational pf_rational(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  mpz_class lcm = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
  Matrix<mpz_class> b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      mpz_class v = lcm / a(i, j).get_den();
      v *= a(i, j).get_num();
      b(j, i) = -v;
      b(i, j) = std::move(v);
    }
  }
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(n / 2));
  Rational out(pf_integer(std::move(b)), scale);
  out.canonicalize();
  return out;
}

}  // namespace detail

/// Pfaffian by skew-symmetric Gaussian elimination, O(n^3). Doubles pivot on
/// the largest entry of the pivot row; rationals go through a fraction-free
/// integer elimination. A zero pivot row gives exactly 0.
template <class T>
T pf_eliminate(const SkewArray<T>& s) {
  const std::size_t n = s.size();
  if (n % 2 != 0) {
    throw Error(ErrorKind::Dimension, "Pfaffian of odd-sized array (" + std::to_string(n) + ")");
  }
  if constexpr (is_exact_v<T>) {
    return detail::pf_rational(s.dense());
  } else {
    Matrix<T> a = s.dense();
    T result(1);
    for (std::size_t k = 0; k < n; k += 2) {
      std::size_t piv = k + 1;
      for (std::size_t j = k + 2; j < n; ++j)
        if (magnitude(a(k, j)) > magnitude(a(k, piv))) piv = j;
      if (is_zero(a(k, piv))) return T(0);
      if (piv != k + 1) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(piv, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, piv));
        result = -result;
      }
      const T pivot = a(k, k + 1);
      result *= pivot;
      // Schur complement of the leading 2x2 block.
      for (std::size_t i = k + 2; i < n; ++i) {
        const T u = a(k + 1, i) / pivot;
        const T v = a(k, i) / pivot;
        if (is_zero(u) && is_zero(v)) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          a(i, j) += u * a(k, j) - v * a(k + 1, j);
          a(j, i) = -a(i, j);
        }
      }
    }
    return result;
  }
}

inline constexpr std::size_t kDefaultExpandCap = 10;

namespace detail {

template <class T>
T pf_expand_rec(const SkewArray<T>& s, std::vector<std::size_t>& idx) {
  const std::size_t m = idx.size();
  if (m == 0) return T(1);
  const std::size_t last = idx.back();
  idx.pop_back();
  T total(0);
  for (std::size_t k = 0; k < m - 1; ++k) {
    const T entry = s(idx[k], last);
    if (!is_zero(entry)) {
      const std::size_t removed = idx[k];
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      const T minor = pf_expand_rec(s, idx);
      idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(k), removed);
      if (k % 2 == 0)
        total += entry * minor;
      else
        total -= entry * minor;
    }
  }
  idx.push_back(last);
  return total;
}

}  // namespace detail

/// Pfaffian by recursive expansion along the last index (exponential cost).
template <class T>
T pf_expand(const SkewArray<T>& s, std::size_t cap = kDefaultExpandCap) {
  const std::size_t n = s.size();
  if (n % 2 != 0) {
    throw Error(ErrorKind::Dimension, "Pfaffian of odd-sized array (" + std::to_string(n) + ")");
  }
  if (n > cap) {
    throw Error(ErrorKind::Refused, "pf_expand: size " + std::to_string(n) + " exceeds cap " +
                                        std::to_string(cap) + "; use pf_eliminate");
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return detail::pf_expand_rec(s, idx);
}

inline bool has_duplicates(IndexList idx) {
  std::sort(idx.begin(), idx.end());
  return std::adjacent_find(idx.begin(), idx.end()) != idx.end();
}

/// Pf(i_1, ..., i_2n) over the entries of `s`.
template <class T>
T pf_indices(const SkewArray<T>& s, const IndexList& idx) {
  if (idx.size() % 2 != 0) {
    throw Error(ErrorKind::Dimension, "Pfaffian index list of odd length");
  }
  SkewArray<T> sub = s.select(idx);  // validates range first
  if (has_duplicates(idx)) return T(0);
  return pf_eliminate(sub);
}

template <class T>
struct IdentityResidual {
  T residual;  ///< |LHS - RHS|
  T scale;     ///< largest |product term| on either side
};

namespace detail {

template <class T>
IdentityResidual<T> residual_of(const T& lhs, const T (&terms)[3]) {
  const T rhs = terms[0] - terms[1] + terms[2];
  T scale = magnitude(lhs);
  for (const T& t : terms) scale = std::max<T>(scale, magnitude(t));
  return {magnitude(T(lhs - rhs)), scale};
}

inline IndexList with(const IndexList& base, std::initializer_list<int> extra) {
  IndexList out = base;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace detail

/// Four-index product identity over an even base set M:
/// Pf(M,a,b,c,d)Pf(M) = Pf(M,a,b)Pf(M,c,d) - Pf(M,a,c)Pf(M,b,d) + Pf(M,a,d)Pf(M,b,c).
template <class T>
IdentityResidual<T> check_identity_even(const SkewArray<T>& s, const IndexList& base, int a,
                                        int b, int c, int d) {
  if (base.size() % 2 != 0) {
    throw Error(ErrorKind::Dimension, "even identity needs a base set of even cardinality");
  }
  using detail::with;
  const T lhs = pf_indices(s, with(base, {a, b, c, d})) * pf_indices(s, base);
  const T terms[3] = {
      T(pf_indices(s, with(base, {a, b})) * pf_indices(s, with(base, {c, d}))),
      T(pf_indices(s, with(base, {a, c})) * pf_indices(s, with(base, {b, d}))),
      T(pf_indices(s, with(base, {a, d})) * pf_indices(s, with(base, {b, c}))),
  };
  return detail::residual_of(lhs, terms);
}

/// Odd-base companion identity:
/// Pf(M,a,b,c)Pf(M,d) = Pf(M,a,b,d)Pf(M,c) - Pf(M,a,c,d)Pf(M,b) + Pf(M,b,c,d)Pf(M,a).
template <class T>
IdentityResidual<T> check_identity_odd(const SkewArray<T>& s, const IndexList& base, int a,
                                       int b, int c, int d) {
  if (base.size() % 2 != 1) {
    throw Error(ErrorKind::Dimension, "odd identity needs a base set of odd cardinality");
  }
  using detail::with;
  const T lhs = pf_indices(s, with(base, {a, b, c})) * pf_indices(s, with(base, {d}));
  const T terms[3] = {
      T(pf_indices(s, with(base, {a, b, d})) * pf_indices(s, with(base, {c}))),
      T(pf_indices(s, with(base, {a, c, d})) * pf_indices(s, with(base, {b}))),
      T(pf_indices(s, with(base, {b, c, d})) * pf_indices(s, with(base, {a}))),
  };
  return detail::residual_of(lhs, terms);
}

}  // namespace lsopkit
