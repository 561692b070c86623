#include "lsopkit/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lsopkit {

void SymTridiag::validate() const {
  if (diag.empty() ? !offdiag.empty() : offdiag.size() + 1 != diag.size()) {
    throw Error(ErrorKind::Dimension, "tridiagonal: offdiag must have n-1 entries");
  }
  for (double v : diag)
    if (!std::isfinite(v)) throw Error(ErrorKind::Numerical, "tridiagonal: non-finite diagonal");
  for (double v : offdiag)
    if (!std::isfinite(v)) throw Error(ErrorKind::Numerical, "tridiagonal: non-finite offdiagonal");
}

MatrixD SymTridiag::dense() const {
  validate();
  const std::size_t n = diag.size();
  MatrixD m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = offdiag[i];
  return m;
}

std::vector<double> sym_tridiag_eigs(const SymTridiag& t) {
  t.validate();
  const int n = static_cast<int>(t.diag.size());
  std::vector<double> d = t.diag;
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];

  constexpr int kMaxIter = 60;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIter) {
          std::ostringstream msg;
          msg << "sym_tridiag_eigs: no convergence for eigenvalue " << l << " after "
              << kMaxIter << " iterations (residual offdiag " << e[l] << ")";
          throw Error(ErrorKind::Numerical, msg.str());
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// 1-based working copy, the natural indexing for the EISPACK-style loops.
struct Work {
  int n;
  std::vector<double> v;
  explicit Work(const MatrixD& m)
      : n(static_cast<int>(m.rows())), v(static_cast<std::size_t>((n + 1) * (n + 1)), 0.0) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) at(i, j) = m(i - 1, j - 1);
  }
  double& at(int i, int j) { return v[static_cast<std::size_t>(i * (n + 1) + j)]; }
};

void balance(Work& a) {
  constexpr double radix = 2.0;
  const double sqrdx = radix * radix;
  const int n = a.n;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 1; i <= n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        c += std::fabs(a.at(j, i));
        r += std::fabs(a.at(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (int j = 1; j <= n; ++j) a.at(i, j) *= g;
        for (int j = 1; j <= n; ++j) a.at(j, i) *= f;
      }
    }
  }
}

void to_hessenberg(Work& a) {
  const int n = a.n;
  for (int m = 2; m < n; ++m) {
    double x = 0.0;
    int i = m;
    for (int j = m; j <= n; ++j) {
      if (std::fabs(a.at(j, m - 1)) > std::fabs(x)) {
        x = a.at(j, m - 1);
        i = j;
      }
    }
    if (i != m) {
      for (int j = m - 1; j <= n; ++j) std::swap(a.at(i, j), a.at(m, j));
      for (int j = 1; j <= n; ++j) std::swap(a.at(j, i), a.at(j, m));
    }
    if (x != 0.0) {
      for (i = m + 1; i <= n; ++i) {
        double y = a.at(i, m - 1);
        if (y == 0.0) continue;
        y /= x;
        a.at(i, m - 1) = y;
        for (int j = m; j <= n; ++j) a.at(i, j) -= y * a.at(m, j);
        for (int j = 1; j <= n; ++j) a.at(j, m) += y * a.at(j, i);
      }
    }
  }
  for (int i = 3; i <= n; ++i)
    for (int j = 1; j < i - 1; ++j) a.at(i, j) = 0.0;
}

void hessenberg_qr(Work& a, std::vector<double>& wr, std::vector<double>& wi) {
  constexpr int kMaxIter = 90;
  const int n = a.n;
  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::fabs(a.at(i, j));
  int nn = n;
  double t = 0.0;
  double p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, z = 0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::fabs(a.at(l - 1, l - 1)) + std::fabs(a.at(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(a.at(l, l - 1)) + s == s) {
          a.at(l, l - 1) = 0.0;
          break;
        }
      }
      x = a.at(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn--] = 0.0;
      } else {
        y = a.at(nn - 1, nn - 1);
        w = a.at(nn, nn - 1) * a.at(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          nn -= 2;
        } else {
          if (its == kMaxIter) {
            throw Error(ErrorKind::Numerical,
                        "dense_eigs: QR iteration did not converge (active block " +
                            std::to_string(nn) + ")");
          }
          if (its % 10 == 0 && its > 0) {
            // exceptional shift
            t += x;
            for (int i = 1; i <= nn; ++i) a.at(i, i) -= x;
            s = std::fabs(a.at(nn, nn - 1)) + std::fabs(a.at(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a.at(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a.at(m + 1, m) + a.at(m, m + 1);
            q = a.at(m + 1, m + 1) - z - r - s;
            r = a.at(m + 2, m + 1);
            s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::fabs(a.at(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const double v = std::fabs(p) * (std::fabs(a.at(m - 1, m - 1)) + std::fabs(z) +
                                             std::fabs(a.at(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a.at(i, i - 2) = 0.0;
            if (i != m + 2) a.at(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a.at(k, k - 1);
              q = a.at(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a.at(k + 2, k - 1);
              if ((x = std::fabs(p) + std::fabs(q) + std::fabs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = std::copysign(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == m) {
                if (l != m) a.at(k, k - 1) = -a.at(k, k - 1);
              } else {
                a.at(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a.at(k, j) + q * a.at(k + 1, j);
                if (k != nn - 1) {
                  p += r * a.at(k + 2, j);
                  a.at(k + 2, j) -= p * z;
                }
                a.at(k + 1, j) -= p * y;
                a.at(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a.at(i, k) + y * a.at(i, k + 1);
                if (k != nn - 1) {
                  p += z * a.at(i, k + 2);
                  a.at(i, k + 2) -= p * r;
                }
                a.at(i, k + 1) -= p * q;
                a.at(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }
}

}  // namespace

std::vector<Complex> dense_eigs(const MatrixD& m) {
  if (!m.square()) throw Error(ErrorKind::Dimension, "dense_eigs: matrix must be square");
  if (m.rows() > 64) throw Error(ErrorKind::Dimension, "dense_eigs: size limited to 64");
  for (double v : m.data())
    if (!std::isfinite(v)) throw Error(ErrorKind::Numerical, "dense_eigs: non-finite entry");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {};
  Work a(m);
  balance(a);
  to_hessenberg(a);
  std::vector<double> wr(static_cast<std::size_t>(n + 1)), wi(static_cast<std::size_t>(n + 1));
  hessenberg_qr(a, wr, wi);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  std::sort(out.begin(), out.end(), [](const Complex& x, const Complex& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

MatrixD solve(const MatrixD& a, const MatrixD& b) {
  if (!a.square() || a.rows() != b.rows()) {
    throw Error(ErrorKind::Dimension, "solve: shape mismatch");
  }
  const std::size_t n = a.rows();
  MatrixD lu = a;
  MatrixD x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) throw Error(ErrorKind::Degeneracy, "solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t c = 0; c < x.cols(); ++c) {
    for (std::size_t i = n; i-- > 0;) {
      double acc = x(i, c);
      for (std::size_t j = i + 1; j < n; ++j) acc -= lu(i, j) * x(j, c);
      x(i, c) = acc / lu(i, i);
    }
  }
  return x;
}

MatrixD inverse(const MatrixD& a) { return solve(a, MatrixD::identity(a.rows())); }

double norm_inf(const MatrixD& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::fabs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_abs(const MatrixD& m) {
  double best = 0.0;
  for (double v : m.data()) best = std::max(best, std::fabs(v));
  return best;
}

double max_abs_diff(const MatrixD& a, const MatrixD& b) { return max_abs(a - b); }

double matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Dimension, "matched_distance: multisets differ in size");
  }
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0.0;
  // Hungarian algorithm, 1-based potentials.
  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](int i, int j) { return std::abs(a[i - 1] - b[j - 1]); };
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double worst = 0.0;
  for (int j = 1; j <= n; ++j) worst = std::max(worst, cost(p[j], j));
  return worst;
}

}  // namespace lsopkit
