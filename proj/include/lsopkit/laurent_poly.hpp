#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lsopkit/errors.hpp"
#include "lsopkit/scalar.hpp"

namespace lsopkit {

/// Sparse Laurent polynomial: exponent -> coefficient, zero coefficients
/// never stored.
template <class T>
class LaurentPoly {
 public:
  using Terms = std::map<int, T>;

  LaurentPoly() = default;
  explicit LaurentPoly(const T& constant) { add_term(0, constant); }

  static LaurentPoly monomial(int exponent, const T& coeff = T(1)) {
    LaurentPoly p;
    p.add_term(exponent, coeff);
    return p;
  }

  static LaurentPoly from_pairs(const std::vector<std::pair<int, T>>& pairs) {
    LaurentPoly p;
    for (const auto& [e, c] : pairs) p.add_term(e, c);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Highest and lowest exponent; undefined for the zero polynomial.
  int max_exponent() const { return require_nonzero().rbegin()->first; }
  int min_exponent() const { return require_nonzero().begin()->first; }

  T coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? T(0) : it->second;
  }

  T leading_coeff() const { return require_nonzero().rbegin()->second; }

  void add_term(int exponent, const T& coeff) {
    if (lsopkit::is_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (lsopkit::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Multiplication by z^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  /// p(z) -> p(1/z).
  LaurentPoly reciprocal() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, T(-c));
    return *this;
  }
  LaurentPoly& operator*=(const T& s) {
    if (lsopkit::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const T& s) { return a *= s; }
  friend LaurentPoly operator*(const T& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= T(-1); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, T(ca * cb));
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Evaluation; nonpositive exponents require a nonzero point.
  template <class U>
  U operator()(const U& z) const {
    if (terms_.empty()) return U(0);
    if (lsopkit::is_zero(z) && terms_.begin()->first < 0) {
      throw Error(ErrorKind::Evaluation, "Laurent polynomial evaluated at 0");
    }
    // Horner over the exponent range, then scale by z^min.
    const int lo = terms_.begin()->first;
    const int hi = terms_.rbegin()->first;
    U acc(0);
    auto it = terms_.rbegin();
    for (int e = hi; e >= lo; --e) {
      acc *= z;
      if (it != terms_.rend() && it->first == e) {
        acc += U(it->second);
        ++it;
      }
    }
    return acc * ipow(z, lo);
  }

  template <class U>
  static U ipow(const U& z, int k) {
    if (k < 0) {
      if (lsopkit::is_zero(z)) throw Error(ErrorKind::Evaluation, "negative power of 0");
      return U(U(1) / ipow(z, -k));
    }
    U result(1);
    U base = z;
    unsigned n = static_cast<unsigned>(k);
    while (n != 0) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n != 0) base *= base;
    }
    return result;
  }

  /// Coefficient conversion between scalar backends.
  template <class U>
  LaurentPoly<U> cast() const {
    LaurentPoly<U> out;
    for (const auto& [e, c] : terms_) out.add_term(e, scalar_from<U>(c));
    return out;
  }

  /// z^{hi+lo} p(1/z) == p(z): coefficient palindrome.
  bool is_self_reciprocal() const {
    if (terms_.empty()) return true;
    const int sum = min_exponent() + max_exponent();
    for (const auto& [e, c] : terms_)
      if (!(coeff(sum - e) == c)) return false;
    return true;
  }

  /// Dense ascending coefficients for a polynomial with exponents >= 0.
  std::vector<T> dense() const {
    if (terms_.empty()) return {};
    if (min_exponent() < 0) throw Error(ErrorKind::Structure, "dense(): negative exponents");
    std::vector<T> out(static_cast<std::size_t>(max_exponent() + 1), T(0));
    for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(e)] = c;
    return out;
  }

 private:
  const Terms& require_nonzero() const {
    if (terms_.empty()) throw Error(ErrorKind::Structure, "zero polynomial has no degree");
    return terms_;
  }

  Terms terms_;
};

}  // namespace lsopkit
