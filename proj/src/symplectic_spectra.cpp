#include "lsopkit/symplectic_spectra.hpp"

#include <algorithm>
#include <cmath>

namespace lsopkit {

namespace {

std::size_t order_of(const RecurrenceData<double>& rec) {
  if (rec.order < 1) throw Error(ErrorKind::Dimension, "recurrence order must be >= 1");
  return static_cast<std::size_t>(rec.order);
}

double checked_sqrt_beta(const RecurrenceData<double>& rec, std::size_t n) {
  const double b = rec.beta.at(n);
  if (b < 0.0) {
    throw Error(ErrorKind::Admissibility, "beta_" + std::to_string(n) + " is negative");
  }
  return std::sqrt(b);
}

MatrixD bidiagonal_f(const RecurrenceData<double>& rec) {
  const std::size_t n = order_of(rec);
  MatrixD f = MatrixD::identity(n);
  for (std::size_t i = 1; i < n; ++i) f(i, i - 1) = -checked_sqrt_beta(rec, i);
  return f;
}

void put_block(MatrixD& dst, std::size_t r0, std::size_t c0, const MatrixD& src, double s = 1.0) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = s * src(i, j);
}

}  // namespace

PencilPair build_pencil(const RecurrenceData<double>& rec) {
  const std::size_t n = order_of(rec);
  const MatrixD f = bidiagonal_f(rec);
  PencilPair p{MatrixD(2 * n, 2 * n), MatrixD(2 * n, 2 * n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.u(i, i) = i == 0 ? 0.0 : rec.alpha[i];  // H
    p.u(i, n + i) = 1.0;
    p.v(n + i, i) = rec.alpha[i + 1];          // G
    p.v(n + i, n + i) = 1.0;
  }
  put_block(p.u, n, 0, f.transpose(), -1.0);
  put_block(p.v, 0, 0, f);
  return p;
}

PencilPair build_rearranged_pencil(const RecurrenceData<double>& rec) {
  const std::size_t n = order_of(rec);
  const MatrixD f = bidiagonal_f(rec);
  PencilPair p{MatrixD(2 * n, 2 * n), MatrixD(2 * n, 2 * n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.u(i, i) = 1.0;
    p.u(i, n + i) = i == 0 ? 0.0 : -rec.alpha[i];  // -H
    p.v(n + i, i) = 1.0;
    p.v(n + i, n + i) = -rec.alpha[i + 1];         // -G
  }
  put_block(p.u, n, n, f.transpose(), -1.0);
  put_block(p.v, 0, n, f);
  return p;
}

double pencil_residual(const PencilPair& p, const SupportTable& lsops) {
  const std::size_t n = lsops.order();
  if (lsops.members() < 2 * n || p.u.rows() != 2 * n) {
    throw Error(ErrorKind::Dimension, "pencil_residual: pencil and LSOP table sizes differ");
  }
  double worst = 0.0;
  for (std::size_t pt = 0; pt < 2 * n; ++pt) {
    const double z = lsops.point(pt);
    MatrixD v(2 * n, 1);
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v(i, 0) = lsops.values[2 * i + 1][pt];
      v(n + i, 0) = lsops.values[2 * i][pt];
    }
    for (std::size_t i = 0; i < 2 * n; ++i) vmax = std::max(vmax, std::fabs(v(i, 0)));
    const MatrixD uv = p.u * v;
    const MatrixD vv = p.v * v;
    double r = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) r = std::max(r, std::fabs(uv(i, 0) - z * vv(i, 0)));
    worst = std::max(worst, r / std::max(vmax, 1e-300));
  }
  return worst;
}

PencilDiagnosis diagnose_pencil(const RecurrenceData<double>& rec, const SupportTable& lsops,
                                double tol) {
  PencilDiagnosis d;
  const PencilPair standard = build_pencil(rec);
  const PencilPair rearranged = build_rearranged_pencil(rec);
  d.standard_residual = pencil_residual(standard, lsops);
  d.rearranged_residual = pencil_residual(rearranged, lsops);
  d.u_entry_diff = max_abs_diff(standard.u, rearranged.u);
  d.v_entry_diff = max_abs_diff(standard.v, rearranged.v);
  d.standard_ok = d.standard_residual <= tol;
  d.validated = d.standard_ok ? standard : rearranged;
  return d;
}

MatrixD symplectic_j(std::size_t n) {
  MatrixD j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

SymplecticCheck symplectic_pencil_check(const PencilPair& p) {
  const std::size_t n = p.u.rows() / 2;
  const MatrixD j = symplectic_j(n);
  SymplecticCheck c;
  c.pencil = norm_inf(p.u * j * p.u.transpose() - p.v * j * p.v.transpose());
  c.pencil_relative = c.pencil / std::max(1.0, norm_inf(p.u) * norm_inf(p.v));
  const MatrixD s = solve(p.v, p.u);
  c.transfer = norm_inf(s.transpose() * j * s - j);
  const double sn = norm_inf(s);
  c.transfer_relative = c.transfer / std::max(1.0, sn * sn);
  return c;
}

std::vector<Complex> pencil_eigs(const PencilPair& p) { return dense_eigs(solve(p.v, p.u)); }

SymTridiag build_tridiagonal_T(const RecurrenceData<double>& rec) {
  const std::size_t n = order_of(rec);
  SymTridiag t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(rec.alpha[i + 1] - rec.alpha[i]);
  for (std::size_t i = 1; i < n; ++i) t.offdiag.push_back(checked_sqrt_beta(rec, i));
  return t;
}

std::string ButterflyConvention::name() const {
  std::string out = diagonal == Diagonal::Alpha ? "diagonal=alpha_n" : "diagonal=alpha_{n+1}-alpha_n";
  out += shift == Shift::AsGiven ? ",shift=lambda_n" : ",shift=lambda_n/r_n";
  return out;
}

std::vector<ButterflyConvention> ButterflyConvention::all() {
  using D = Diagonal;
  using S = Shift;
  return {{D::Alpha, S::AsGiven}, {D::Alpha, S::Rescaled}, {D::AlphaDifference, S::AsGiven},
          {D::AlphaDifference, S::Rescaled}};
}

void ButterflyParams::validate() const {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n || c.size() != n || d.size() + 1 != n) {
    throw Error(ErrorKind::Dimension, "butterfly parameters need |a|=|b|=|c|=N, |d|=N-1");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] == 0.0) throw Error(ErrorKind::Structure, "butterfly parameter a_" + std::to_string(i + 1) + " is zero");
}

ButterflyParams butterfly_params(const RecurrenceData<double>& rec, const GaugeParams<double>& g,
                                 ButterflyConvention conv) {
  const std::size_t n = order_of(rec);
  g.validate(n);
  ButterflyParams bp;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = g.r[i];
    const double lam = conv.shift == ButterflyConvention::Shift::AsGiven ? g.lambda[i] : g.lambda[i] / r;
    const double diag = conv.diagonal == ButterflyConvention::Diagonal::Alpha
                            ? rec.alpha[i]
                            : rec.alpha[i + 1] - rec.alpha[i];
    bp.a.push_back(1.0 / (r * r));
    bp.b.push_back(lam);
    bp.c.push_back(r * r * (diag - lam));
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    bp.d.push_back(g.r[k] * g.r[k + 1] * checked_sqrt_beta(rec, k + 1));
  return bp;
}

MatrixD butterfly_from_params(const ButterflyParams& bp) {
  bp.validate();
  const std::size_t n = bp.size();
  MatrixD m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = bp.b[i];
    m(i, n + i) = bp.b[i] * bp.c[i] - 1.0 / bp.a[i];
    m(n + i, i) = bp.a[i];
    m(n + i, n + i) = bp.a[i] * bp.c[i];
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    m(k, n + k + 1) = bp.b[k] * bp.d[k];
    m(k + 1, n + k) = bp.b[k + 1] * bp.d[k];
    m(n + k, n + k + 1) = bp.a[k] * bp.d[k];
    m(n + k + 1, n + k) = bp.a[k + 1] * bp.d[k];
  }
  return m;
}

MatrixD build_butterfly(const RecurrenceData<double>& rec, const GaugeParams<double>& g,
                        ButterflyConvention conv) {
  return butterfly_from_params(butterfly_params(rec, g, conv));
}

RecoveredParams recover_params(const ButterflyParams& bp) {
  bp.validate();
  RecoveredParams out;
  const std::size_t n = bp.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.r_squared.push_back(1.0 / bp.a[i]);
    out.shift.push_back(bp.b[i]);
    out.diagonal.push_back(bp.a[i] * bp.c[i] + bp.b[i]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    out.beta.push_back(bp.d[k] * bp.d[k] * bp.a[k] * bp.a[k + 1]);
  return out;
}

SymTridiag butterfly_to_tridiagonal(const ButterflyParams& bp) {
  bp.validate();
  const std::size_t n = bp.size();
  SymTridiag t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(bp.a[i] * bp.c[i] + bp.b[i]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double prod = bp.a[k] * bp.a[k + 1];
    if (!(prod > 0.0)) {
      throw Error(ErrorKind::Hypothesis, "tridiagonal reduction needs a_i a_{i+1} > 0; a_" +
                                             std::to_string(k + 1) + " a_" +
                                             std::to_string(k + 2) + " = " + format_double(prod));
    }
    t.offdiag.push_back(std::sqrt(prod) * std::fabs(bp.d[k]));
  }
  return t;
}

std::vector<std::pair<Complex, Complex>> eig_correspondence(const std::vector<double>& lambdas) {
  std::vector<std::pair<Complex, Complex>> out;
  for (double lam : lambdas) {
    const double disc = lam * lam - 4.0;
    if (std::fabs(disc) <= kDoubleRootTol) {
      out.emplace_back(Complex(lam / 2.0), Complex(lam / 2.0));
    } else if (disc > 0.0) {
      // larger-magnitude root without cancellation, then its reciprocal
      const double big = (lam + std::copysign(std::sqrt(disc), lam)) / 2.0;
      out.emplace_back(Complex(big), Complex(1.0 / big));
    } else {
      const double im = std::sqrt(-disc) / 2.0;
      out.emplace_back(Complex(lam / 2.0, im), Complex(lam / 2.0, -im));
    }
  }
  return out;
}

Complex canonical_point(Complex z) {
  if (std::abs(z) < 1.0) return 1.0 / z;
  return z;
}

double canonical_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> ca, cb;
  for (const Complex& z : a) ca.push_back(canonical_point(z));
  for (const Complex& z : b) cb.push_back(canonical_point(z));
  return matched_distance(ca, cb);
}

std::vector<ConventionTrial> determine_butterfly_convention(
    const RecurrenceData<double>& rec, const SupportTable& lsolps,
    const std::vector<GaugeParams<double>>& gauges) {
  std::vector<MatrixD> reference;
  for (const auto& g : gauges)
    reference.push_back(multiplication_matrix(gauge_support(lsolps, g)).a);
  std::vector<ConventionTrial> trials;
  for (const auto& conv : ButterflyConvention::all()) {
    ConventionTrial t{conv, 0.0};
    for (std::size_t i = 0; i < gauges.size(); ++i)
      t.entry_diff = std::max(t.entry_diff, max_abs_diff(build_butterfly(rec, gauges[i], conv), reference[i]));
    trials.push_back(t);
  }
  std::stable_sort(trials.begin(), trials.end(), [](const ConventionTrial& x, const ConventionTrial& y) {
    return x.entry_diff < y.entry_diff;
  });
  return trials;
}

}  // namespace lsopkit
