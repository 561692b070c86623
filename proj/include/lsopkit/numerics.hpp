#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "lsopkit/errors.hpp"
#include "lsopkit/scalar.hpp"

namespace lsopkit {

/// Dense row-major matrix for desk-scale problems.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw Error(ErrorKind::Dimension, "ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::Dimension, "matrix product shape mismatch");
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) {
      throw Error(ErrorKind::Dimension, "matrix-vector shape mismatch");
    }
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw Error(ErrorKind::Dimension, "matrix shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using MatrixD = Matrix<double>;
using Complex = std::complex<double>;

/// Symmetric tridiagonal matrix stored as its two nonzero diagonals.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }
  void validate() const;
  MatrixD dense() const;
};

/// All eigenvalues in ascending order (implicit-shift QL).
std::vector<double> sym_tridiag_eigs(const SymTridiag& t);

/// Eigenvalues of a general real square matrix (balancing, Hessenberg
/// reduction, Francis double-shift QR). Sorted by (real, imag).
std::vector<Complex> dense_eigs(const MatrixD& m);

MatrixD solve(const MatrixD& a, const MatrixD& b);
MatrixD inverse(const MatrixD& a);

double norm_inf(const MatrixD& m);
double max_abs(const MatrixD& m);
double max_abs_diff(const MatrixD& a, const MatrixD& b);

/// Minimum-cost perfect matching of two equal-size complex multisets under
/// |a-b|; returns the largest matched distance.
double matched_distance(const std::vector<Complex>& a,
                        const std::vector<Complex>& b);

namespace detail {

/// Bareiss fraction-free determinant of an integer matrix.
inline mpz_class bareiss_det(Matrix<mpz_class> m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m(piv, k)) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(t);
      }
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : mpz_class(-m(n - 1, n - 1));
}

/// Clears denominators row by row, then Bareiss.
inline Rational rational_det(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  Matrix<mpz_class> b(n, n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) b(i, j) = lcm / a(i, j).get_den() * a(i, j).get_num();
    scale *= lcm;
  }
  Rational out(bareiss_det(std::move(b)), scale);
  out.canonicalize();
  return out;
}

}  // namespace detail

/// Determinant by elimination. Doubles pivot on largest magnitude; rationals
/// use fraction-free (Bareiss) elimination on cleared denominators.
template <class T>
T dense_det(Matrix<T> m) {
  if (!m.square()) throw Error(ErrorKind::Dimension, "determinant of non-square matrix");
  if constexpr (is_exact_v<T>) {
    return detail::rational_det(m);
  } else {
    const std::size_t n = m.rows();
    T det(1);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (magnitude(m(i, k)) > magnitude(m(piv, k))) piv = i;
      if (is_zero(m(piv, k))) return T(0);
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
        det = -det;
      }
      const T pivot = m(k, k);
      det *= pivot;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (is_zero(m(i, k))) continue;
        const T factor = m(i, k) / pivot;
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
      }
    }
    return det;
  }
}

/// Solves a square linear system exactly (first nonzero pivot) or with
/// partial pivoting for doubles. Throws Degeneracy on singular input.
template <class T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) {
    throw Error(ErrorKind::Dimension, "solve_linear shape mismatch");
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    if constexpr (is_exact_v<T>) {
      while (piv < n && is_zero(a(piv, k))) ++piv;
      if (piv == n) throw Error(ErrorKind::Degeneracy, "singular linear system");
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (magnitude(a(i, k)) > magnitude(a(piv, k))) piv = i;
      if (is_zero(a(piv, k))) throw Error(ErrorKind::Degeneracy, "singular linear system");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      const T factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

}  // namespace lsopkit
