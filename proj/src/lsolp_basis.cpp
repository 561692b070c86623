#include "lsopkit/lsolp_basis.hpp"

#include <algorithm>
#include <cmath>

namespace lsopkit {

LsolpFamily<double> normalize_gram_schmidt(const MonicGramSchmidt<Rational>& gs) {
  LsolpFamily<double> out;
  for (std::size_t i = 0; i < gs.family.size(); ++i) {
    const Rational& kappa = gs.kappa[i / 2];
    double s = 1.0 / std::sqrt(std::fabs(kappa.get_d()));
    if (i % 2 == 1 && sgn(kappa) < 0) s = -s;
    LaurentPoly<double> f;
    for (const auto& [e, c] : gs.family[i].terms()) f.add_term(e, c.get_d() * s);
    out.push_back(std::move(f));
  }
  return out;
}

LsolpFamily<double> gram_schmidt_lsolp(const DiscreteMeasure<double>& m, std::size_t count) {
  auto gs = gram_schmidt_lsolp_monic(m, count);
  LsolpFamily<double> out;
  for (std::size_t i = 0; i < gs.family.size(); ++i) {
    const double kappa = gs.kappa[i / 2];
    double s = 1.0 / std::sqrt(std::fabs(kappa));
    if (i % 2 == 1 && kappa < 0) s = -s;
    out.push_back(gs.family[i] * s);
  }
  return out;
}

double SupportTable::pairing(std::size_t i, std::size_t j) const {
  const std::size_t n = nodes.size();
  const auto& f = values.at(i);
  const auto& g = values.at(j);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += (f[n + k] * g[k] - f[k] * g[n + k]) * weights[k];
  return total;
}

namespace {

SupportTable base_table(const ExactModel& em) {
  SupportTable t;
  for (std::size_t k = 0; k < em.measure.size(); ++k) {
    t.nodes.push_back(em.measure.nodes[k].get_d());
    t.weights.push_back(em.measure.weights[k].get_d());
  }
  return t;
}

// exact value of z^shift * poly(z) at every support point, rounded once
std::vector<double> exact_row(const ExactModel& em, const LaurentPoly<Rational>& poly, int shift,
                              double scale) {
  std::vector<double> row;
  const std::size_t n = em.measure.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational z = pass == 0 ? em.measure.nodes[k] : Rational(1 / em.measure.nodes[k]);
      const Rational v = poly(z) * LaurentPoly<Rational>::ipow(z, shift);
      row.push_back(v.get_d() * scale);
    }
  }
  return row;
}

void require_definite(const ExactModel& em) {
  if (em.scale_sq.empty()) {
    for (std::size_t k = 0; k < em.rec.tau.size(); ++k)
      if (!(em.rec.tau[k] > 0))
        throw Error(ErrorKind::Admissibility,
                    "orthonormal values need tau_n > 0, got tau_" + std::to_string(k) + " = " +
                        format_double(em.rec.tau[k].get_d()));
    throw Error(ErrorKind::Admissibility, "model has no orthonormal scaling");
  }
}

}  // namespace

SupportTable lsop_support_table(const ExactModel& em) {
  require_definite(em);
  SupportTable t = base_table(em);
  for (int n = 0; n < 2 * em.order; ++n) {
    const double s = std::sqrt(em.scale_sq[static_cast<std::size_t>(n / 2)].get_d());
    t.values.push_back(exact_row(em, em.q[static_cast<std::size_t>(n)], 0, s));
  }
  return t;
}

SupportTable lsolp_support_table(const ExactModel& em) {
  require_definite(em);
  SupportTable t = base_table(em);
  for (int m = 0; m < em.order; ++m) {
    const double s = std::sqrt(em.scale_sq[static_cast<std::size_t>(m)].get_d());
    const auto& q2m = em.q[static_cast<std::size_t>(2 * m)];
    t.values.push_back(exact_row(em, q2m, -m, s));
    t.values.push_back(exact_row(em, q2m, -m - 1, -s));
  }
  return t;
}

SupportTable gauge_support(const SupportTable& t, const GaugeParams<double>& g) {
  const std::size_t n = t.members() / 2;
  g.validate(n);
  SupportTable out = t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& even = t.values[2 * i];
    const auto& odd = t.values[2 * i + 1];
    for (std::size_t p = 0; p < even.size(); ++p) {
      out.values[2 * i][p] = even[p] / g.r[i];
      out.values[2 * i + 1][p] = g.r[i] * odd[p] + g.lambda[i] * even[p];
    }
  }
  return out;
}

SkewGramDefect skew_gram_defect(const SupportTable& t) {
  SkewGramDefect d;
  const std::size_t n = t.members() / 2;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double target = a == b ? 1.0 : 0.0;
      d.dual = std::max(d.dual, std::fabs(t.pairing(2 * a, 2 * b + 1) - target));
      d.even = std::max(d.even, std::fabs(t.pairing(2 * a, 2 * b)));
      d.odd = std::max(d.odd, std::fabs(t.pairing(2 * a + 1, 2 * b + 1)));
    }
  }
  return d;
}

MultiplicationMatrix multiplication_matrix(const SupportTable& t, double tol) {
  const std::size_t n = t.order();
  if (t.members() != 2 * n) {
    throw Error(ErrorKind::Dimension, "multiplication_matrix: need 2N members on N nodes");
  }
  const std::size_t pts = 2 * n;
  // w-vector slot of member i: odd members first
  auto slot = [n](std::size_t i) { return i % 2 == 1 ? i / 2 : n + i / 2; };

  SupportTable shifted = t;  // z * f at each point
  for (auto& row : shifted.values)
    for (std::size_t p = 0; p < pts; ++p) row[p] *= t.point(p);

  // pairing between a member of t and a member of shifted
  auto cross = [&](const std::vector<double>& f, const std::vector<double>& g) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += (f[n + k] * g[k] - f[k] * g[n + k]) * t.weights[k];
    return total;
  };

  MultiplicationMatrix out;
  out.a = MatrixD(pts, pts);
  for (std::size_t i = 0; i < pts; ++i) {
    const auto& zf = shifted.values[i];
    for (std::size_t m = 0; m < n; ++m) {
      // coefficient on f_{2m+1} is <f_{2m}|zf>, on f_{2m} is <zf|f_{2m+1}>
      out.a(slot(i), slot(2 * m + 1)) = cross(t.values[2 * m], zf);
      out.a(slot(i), slot(2 * m)) = cross(zf, t.values[2 * m + 1]);
    }
  }
  for (std::size_t p = 0; p < pts; ++p) {
    double scale = 0.0;
    for (std::size_t i = 0; i < pts; ++i) scale = std::max(scale, std::fabs(t.values[i][p]));
    scale *= std::max(1.0, std::fabs(t.point(p)));
    for (std::size_t i = 0; i < pts; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < pts; ++j) {
        const std::size_t member = j < n ? 2 * j + 1 : 2 * (j - n);
        acc += out.a(slot(i), j) * t.values[member][p];
      }
      const double r = std::fabs(shifted.values[i][p] - acc) / std::max(scale, 1e-300);
      out.residual = std::max(out.residual, r);
    }
  }
  if (out.residual > tol) {
    throw Error(ErrorKind::Representation,
                "multiplication_matrix: residual " + format_double(out.residual) +
                    " above tolerance " + format_double(tol));
  }
  return out;
}

MultiplicationMatrix multiplication_matrix(const DiscreteMeasure<double>& m,
                                           const LsolpFamily<double>& fam, double tol) {
  return multiplication_matrix(support_table(m, fam), tol);
}

}  // namespace lsopkit
