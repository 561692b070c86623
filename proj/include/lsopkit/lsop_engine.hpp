#pragma once

// Laurent skew orthogonal polynomials: Pfaffian route, recurrence route,
// reduction of the even family to ordinary orthogonal polynomials.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lsopkit/errors.hpp"
#include "lsopkit/laurent_poly.hpp"
#include "lsopkit/moments.hpp"
#include "lsopkit/numerics.hpp"
#include "lsopkit/pfaffian.hpp"

namespace lsopkit {

/// alpha[n] = sigma_n/tau_n (alpha[0] = 0), beta[n] = tau_{n+1}tau_{n-1}/tau_n^2
/// for n >= 1 (beta[0] unused), tau[0..N+1], sigma[0..N].
template <class T>
struct RecurrenceData {
  int order = 0;
  std::vector<T> alpha;
  std::vector<T> beta;
  std::vector<T> tau;
  std::vector<T> sigma;

  template <class U>
  RecurrenceData<U> cast() const {
    RecurrenceData<U> out;
    out.order = order;
    for (const T& x : alpha) out.alpha.push_back(scalar_from<U>(x));
    for (const T& x : beta) out.beta.push_back(scalar_from<U>(x));
    for (const T& x : tau) out.tau.push_back(scalar_from<U>(x));
    for (const T& x : sigma) out.sigma.push_back(scalar_from<U>(x));
    return out;
  }
};

inline IndexList iota_list(int count) {
  IndexList idx(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

/// Index set (0..2n-1) of tau_n.
inline IndexList tau_indices(int n) { return iota_list(2 * n); }

/// Index set (0..2n-2, 2n) of sigma_n; empty for n = 0.
inline IndexList sigma_indices(int n) {
  if (n == 0) return {};
  IndexList idx = iota_list(2 * n - 1);
  idx.push_back(2 * n);
  return idx;
}

template <class T>
RecurrenceData<T> moment_pfaffian_table(const MomentTable<T>& mu, int order,
                                        MomentSign sign = MomentSign::InnerProduct) {
  if (order < 1) throw Error(ErrorKind::Dimension, "recurrence table order must be >= 1");
  RecurrenceData<T> rec;
  rec.order = order;
  for (int n = 0; n <= order + 1; ++n) {
    rec.tau.push_back(pf_eliminate(mu.skew_array(tau_indices(n), sign)));
  }
  for (int n = 0; n <= order; ++n) {
    rec.sigma.push_back(n == 0 ? T(0) : pf_eliminate(mu.skew_array(sigma_indices(n), sign)));
  }
  double scale = 1.0;
  for (int n = 0; n <= order; ++n) {
    const T& t = rec.tau[static_cast<std::size_t>(n)];
    bool degenerate = is_zero(t);
    if constexpr (!is_exact_v<T>) {
      degenerate = degenerate || std::fabs(t) <= 1e-8 * scale;
      scale = std::max(scale, std::fabs(t));
    }
    if (degenerate) {
      throw Error(ErrorKind::Degeneracy,
                  "tau_" + std::to_string(n) + " vanishes; skew orthogonal polynomials do not exist");
    }
  }
  rec.alpha.push_back(T(0));
  rec.beta.push_back(T(0));
  for (int n = 1; n <= order; ++n) {
    const auto k = static_cast<std::size_t>(n);
    rec.alpha.push_back(rec.sigma[k] / rec.tau[k]);
    rec.beta.push_back(rec.tau[k + 1] * rec.tau[k - 1] / (rec.tau[k] * rec.tau[k]));
  }
  return rec;
}

/// The same recurrence data from node values: a Stieltjes procedure for the
/// polynomials orthogonal at x_k = z_k + 1/z_k with weights (z_k - 1/z_k) w_k,
/// using tau_n = h_0...h_{n-1}, beta_n = h_n/h_{n-1} and
/// alpha_n = a_0 + ... + a_{n-1} (a_j the Jacobi diagonal). Order = node count.
template <class T>
RecurrenceData<T> recurrence_via_stieltjes(const DiscreteMeasure<T>& m) {
  m.validate_basic();
  const std::size_t n_nodes = m.size();
  if (n_nodes == 0) throw Error(ErrorKind::Dimension, "empty measure");
  std::vector<T> x, omega;
  for (std::size_t k = 0; k < n_nodes; ++k) {
    const T zi = T(1) / m.nodes[k];
    x.push_back(m.nodes[k] + zi);
    omega.push_back((m.nodes[k] - zi) * m.weights[k]);
  }
  RecurrenceData<T> rec;
  rec.order = static_cast<int>(n_nodes);
  rec.tau.push_back(T(1));
  rec.sigma.push_back(T(0));
  rec.alpha.push_back(T(0));
  rec.beta.push_back(T(0));
  std::vector<T> prev(n_nodes, T(0)), cur(n_nodes, T(1));
  T h_prev(1);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    T h(0), xh(0);
    for (std::size_t k = 0; k < n_nodes; ++k) {
      const T sq = cur[k] * cur[k] * omega[k];
      h += sq;
      xh += x[k] * sq;
    }
    if (is_zero(h)) {
      throw Error(ErrorKind::Degeneracy,
                  "tau_" + std::to_string(j + 1) + " vanishes; skew orthogonal polynomials do not exist");
    }
    const T a = xh / h;
    if (j > 0) rec.beta.push_back(h / h_prev);
    rec.tau.push_back(rec.tau.back() * h);
    rec.alpha.push_back(rec.alpha.back() + a);
    rec.sigma.push_back(rec.alpha.back() * rec.tau.back());
    const T b = j > 0 ? T(h / h_prev) : T(0);
    for (std::size_t k = 0; k < n_nodes; ++k) {
      const T next = (x[k] - a) * cur[k] - b * prev[k];
      prev[k] = cur[k];
      cur[k] = next;
    }
    h_prev = h;
  }
  // x^N-degree polynomial vanishes on all nodes
  rec.tau.push_back(T(0));
  rec.beta.push_back(T(0));
  return rec;
}

/// Monic q_n from the Pfaffian with a variable column Pf(i, z) = z^i,
/// expanded along that column and divided by tau_{floor(n/2)}.
template <class T>
LaurentPoly<T> lsop_via_pfaffian(const MomentTable<T>& mu, int n,
                                 MomentSign sign = MomentSign::InnerProduct) {
  if (n < 0) throw Error(ErrorKind::Dimension, "negative polynomial index");
  const int half = n / 2;
  const T tau = pf_eliminate(mu.skew_array(tau_indices(half), sign));
  if (is_zero(tau)) {
    throw Error(ErrorKind::Degeneracy, "tau_" + std::to_string(half) + " vanishes");
  }
  IndexList rows = iota_list(n % 2 == 0 ? n + 1 : n);
  if (n % 2 == 1) rows.back() = n;  // (0..2m-1, 2m+1)
  LaurentPoly<T> q;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    IndexList rest = rows;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    const T minor = pf_eliminate(mu.skew_array(rest, sign));
    q.add_term(rows[k], k % 2 == 0 ? minor : T(-minor));
  }
  return q * T(T(1) / tau);
}

/// q_0..q_{2N} from the coupled two-step recurrence.
template <class T>
std::vector<LaurentPoly<T>> lsop_via_recurrence(const RecurrenceData<T>& rec, int order) {
  if (order < 0 || order > rec.order) {
    throw Error(ErrorKind::Dimension, "recurrence order outside the tabulated range");
  }
  using P = LaurentPoly<T>;
  const P z = P::monomial(1);
  std::vector<P> q;
  q.push_back(P(T(1)));
  if (order == 0) return q;
  q.push_back(z);
  for (int n = 0; n < order; ++n) {
    const auto k = static_cast<std::size_t>(n);
    if (n > 0) {
      // q_{2n+1} = z(q_{2n} - beta_n q_{2n-2}) + alpha_n q_{2n}
      q.push_back(z * (q[2 * k] - q[2 * k - 2] * rec.beta[k]) + q[2 * k] * rec.alpha[k]);
    }
    // q_{2n+2} = z(q_{2n+1} - alpha_{n+1} q_{2n}) + q_{2n}
    q.push_back(z * (q[2 * k + 1] - q[2 * k] * rec.alpha[k + 1]) + q[2 * k]);
  }
  return q;
}

/// (z + 1/z)^j
template <class T>
LaurentPoly<T> joukowski_power(int j) {
  using P = LaurentPoly<T>;
  const P base = P::monomial(1) + P::monomial(-1);
  P out(T(1));
  for (int i = 0; i < j; ++i) out = out * base;
  return out;
}

/// R with q_{2n}(z) = z^n R(z + 1/z), found by peeling the top power.
template <class T>
LaurentPoly<T> even_to_op(const LaurentPoly<T>& q2n) {
  if (q2n.is_zero()) throw Error(ErrorKind::Structure, "even_to_op: zero polynomial");
  const int lo = q2n.min_exponent();
  const int hi = q2n.max_exponent();
  if (lo != 0 || hi % 2 != 0 || !q2n.is_self_reciprocal()) {
    throw Error(ErrorKind::Structure, "even_to_op: input is not self-reciprocal of even degree");
  }
  const int n = hi / 2;
  LaurentPoly<T> rest = q2n.shifted(-n);
  LaurentPoly<T> out;
  for (int j = n; j >= 0; --j) {
    const T top = rest.coeff(j);
    if (is_zero(top)) continue;
    out.add_term(j, top);
    rest -= joukowski_power<T>(j) * top;
  }
  if (!rest.is_zero()) {
    throw Error(ErrorKind::Structure, "even_to_op: residual after peeling");
  }
  return out;
}

/// det [c_{i+j}]_{i,j<n}; 1 for n = 0.
template <class T>
T hankel_det(const std::vector<T>& c, int n) {
  if (n == 0) return T(1);
  if (c.size() < static_cast<std::size_t>(2 * n - 1)) {
    throw Error(ErrorKind::IncompleteTable, "hankel_det: not enough classical moments");
  }
  const auto sz = static_cast<std::size_t>(n);
  Matrix<T> h(sz, sz);
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = 0; j < sz; ++j) h(i, j) = c[i + j];
  return dense_det(h);
}

/// Hankel determinant with the last column shifted to c_{i+n}; 0 for n = 0.
template <class T>
T shifted_hankel_det(const std::vector<T>& c, int n) {
  if (n == 0) return T(0);
  if (c.size() < static_cast<std::size_t>(2 * n)) {
    throw Error(ErrorKind::IncompleteTable, "shifted_hankel_det: not enough classical moments");
  }
  const auto sz = static_cast<std::size_t>(n);
  Matrix<T> h(sz, sz);
  for (std::size_t i = 0; i < sz; ++i) {
    for (std::size_t j = 0; j + 1 < sz; ++j) h(i, j) = c[i + j];
    h(i, sz - 1) = c[i + sz];
  }
  return dense_det(h);
}

/// Monic orthogonal polynomial of degree n in w as a ratio of Hankel-type
/// determinants; the numerator is expanded along its polynomial column.
template <class T>
LaurentPoly<T> op_via_hankel(const std::vector<T>& c, int n) {
  if (n < 0) throw Error(ErrorKind::Dimension, "negative degree");
  if (n == 0) return LaurentPoly<T>(T(1));
  const T denom = hankel_det(c, n);
  if (is_zero(denom)) throw Error(ErrorKind::Degeneracy, "singular Hankel block");
  const auto sz = static_cast<std::size_t>(n);
  LaurentPoly<T> out;
  for (std::size_t row = 0; row <= sz; ++row) {
    Matrix<T> minor(sz, sz);
    std::size_t r = 0;
    for (std::size_t i = 0; i <= sz; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0; j < sz; ++j) minor(r, j) = c[i + j];
      ++r;
    }
    const T cof = dense_det(minor);
    out.add_term(static_cast<int>(row), (row + sz) % 2 == 0 ? cof : T(-cof));
  }
  return out * T(T(1) / denom);
}

template <class T>
struct PfaffianDetReport {
  std::vector<T> tau_deviation;    ///< tau_n - hankel_det(c, n), n = 0..N
  std::vector<T> sigma_deviation;  ///< sigma_n - shifted_hankel_det(c, n)
  double max_relative = 0.0;
};

template <class T>
PfaffianDetReport<T> verify_pfaffian_det(const MomentTable<T>& mu, const std::vector<T>& c,
                                         int order) {
  PfaffianDetReport<T> rep;
  auto track = [&rep](const T& lhs, const T& rhs, std::vector<T>& dev) {
    const T d = lhs - rhs;
    dev.push_back(d);
    const double scale = std::max({1.0, std::fabs(to_double(lhs)), std::fabs(to_double(rhs))});
    rep.max_relative = std::max(rep.max_relative, std::fabs(to_double(d)) / scale);
  };
  for (int n = 0; n <= order; ++n) {
    const T tau = pf_eliminate(mu.skew_array(tau_indices(n)));
    const T sigma = n == 0 ? T(0) : pf_eliminate(mu.skew_array(sigma_indices(n)));
    track(tau, hankel_det(c, n), rep.tau_deviation);
    track(sigma, shifted_hankel_det(c, n), rep.sigma_deviation);
  }
  return rep;
}

/// Squared orthonormalizing factors s_n^2 = tau_n/tau_{n+1}, n = 0..N-1.
template <class T>
std::vector<T> orthonormal_scale_squares(const RecurrenceData<T>& rec) {
  std::vector<T> out;
  for (int n = 0; n < rec.order; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const T ratio = rec.tau[k] / rec.tau[k + 1];
    if (!(ratio > T(0))) {
      throw Error(ErrorKind::Admissibility,
                  "tau_" + std::to_string(n) + "/tau_" + std::to_string(n + 1) + " is not positive");
    }
    out.push_back(ratio);
  }
  return out;
}

/// q~_n = sqrt(tau_m/tau_{m+1}) q_n with m = floor(n/2), for n < 2N.
inline std::vector<LaurentPoly<double>> orthonormalize(const std::vector<LaurentPoly<double>>& q,
                                                       const RecurrenceData<double>& rec) {
  const std::vector<double> s2 = orthonormal_scale_squares(rec);
  std::vector<LaurentPoly<double>> out;
  for (std::size_t n = 0; n < q.size() && n / 2 < s2.size(); ++n)
    out.push_back(q[n] * std::sqrt(s2[n / 2]));
  return out;
}

/// An exact real number sign * sqrt(square).
struct SignedSquare {
  int sign = 0;
  Rational square;

  bool is_zero() const { return sign == 0; }
  bool is_one() const { return sign > 0 && square == 1; }
  double value() const { return sign * std::sqrt(square.get_d()); }
};

/// The pairing <s_i q_i | s_j q_j> with s^2 exact.
inline SignedSquare scaled_pairing(const Rational& raw, const Rational& s2_left,
                                   const Rational& s2_right) {
  SignedSquare out;
  out.sign = sgn(raw);
  out.square = raw * raw * s2_left * s2_right;
  return out;
}

/// Kodama's construction from a three-term recurrence
/// p_{n+1}(x) = (x - a_n) p_n(x) - b_n p_{n-1}(x): q_{2n} = p_n(z^2),
/// q_{2n+1} = z p_n(z^2), n = 0..N.
template <class T>
std::vector<LaurentPoly<T>> kodama_sops(const std::vector<T>& a, const std::vector<T>& b,
                                        int order) {
  if (a.size() < static_cast<std::size_t>(order) || b.size() < static_cast<std::size_t>(order)) {
    throw Error(ErrorKind::Dimension, "kodama_sops: need N recurrence coefficients");
  }
  using P = LaurentPoly<T>;
  const P x = P::monomial(2);
  std::vector<P> p{P(T(1))};
  for (int n = 0; n < order; ++n) {
    const auto k = static_cast<std::size_t>(n);
    P next = x * p[k] - p[k] * a[k];
    if (n > 0) next -= p[k - 1] * b[k];
    p.push_back(next);
  }
  std::vector<P> q;
  for (const P& pn : p) {
    q.push_back(pn);
    q.push_back(pn.shifted(1));
  }
  return q;
}

/// Residuals z q_{2n} - q_{2n+1} and z q_{2n+1} - q_{2n+2} - a_n q_{2n} - b_n q_{2n-2}.
template <class T>
std::vector<LaurentPoly<T>> kodama_residuals(const std::vector<T>& a, const std::vector<T>& b,
                                             const std::vector<LaurentPoly<T>>& q) {
  std::vector<LaurentPoly<T>> out;
  const std::size_t n_max = q.size() / 2;
  for (std::size_t n = 0; n + 1 < n_max; ++n) {
    out.push_back(q[2 * n].shifted(1) - q[2 * n + 1]);
    LaurentPoly<T> r = q[2 * n + 1].shifted(1) - q[2 * n + 2] - q[2 * n] * a[n];
    if (n > 0) r -= q[2 * n - 2] * b[n];
    out.push_back(r);
  }
  return out;
}

}  // namespace lsopkit
