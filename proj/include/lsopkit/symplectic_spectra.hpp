#pragma once

// Symplectic pencil, butterfly matrix and the tridiagonal reductions.

#include <string>
#include <utility>
#include <vector>

#include "lsopkit/lsolp_basis.hpp"
#include "lsopkit/lsop_engine.hpp"
#include "lsopkit/numerics.hpp"

namespace lsopkit {

struct PencilPair {
  MatrixD u;
  MatrixD v;
};

/// Standard block layout: U = [[H, I], [-F^T, O]], V = [[F, O], [G, I]],
/// F unit lower bidiagonal with subdiagonal -sqrt(beta_n), G = diag(alpha_1..alpha_N),
/// H = diag(0, alpha_1..alpha_{N-1}).
PencilPair build_pencil(const RecurrenceData<double>& rec);

/// Pencil rearranged from the two-step recurrence for v = (odd; even):
/// U = [[I, -H], [O, -F^T]], V = [[O, F], [I, -G]].
PencilPair build_rearranged_pencil(const RecurrenceData<double>& rec);

/// max over support points of ||U v - z V v||_inf / ||v||_inf with
/// v = (q~_1, q~_3, ..., q~_0, q~_2, ...); `lsops` holds q~_0..q~_{2N-1}.
double pencil_residual(const PencilPair& p, const SupportTable& lsops);

struct PencilDiagnosis {
  double standard_residual = 0.0;
  double rearranged_residual = 0.0;
  double u_entry_diff = 0.0;  ///< max |U_standard - U_rearranged|
  double v_entry_diff = 0.0;
  bool standard_ok = false;    ///< standard pencil within tolerance
  PencilPair validated;       ///< the pencil used downstream
};

PencilDiagnosis diagnose_pencil(const RecurrenceData<double>& rec, const SupportTable& lsops,
                                double tol);

MatrixD symplectic_j(std::size_t n);

struct SymplecticCheck {
  double pencil = 0.0;           ///< ||U J U^T - V J V^T||_inf
  double pencil_relative = 0.0;  ///< divided by max(1, ||U|| ||V||)
  double transfer = 0.0;         ///< ||S^T J S - J||_inf, S = V^{-1} U
  double transfer_relative = 0.0;  ///< divided by max(1, ||S||^2)
};

SymplecticCheck symplectic_pencil_check(const PencilPair& p);

/// Eigenvalues of the pencil via the transfer matrix V^{-1} U.
std::vector<Complex> pencil_eigs(const PencilPair& p);

SymTridiag build_tridiagonal_T(const RecurrenceData<double>& rec);

/// Which coefficient sits on the diagonal of the multiplication operator and
/// how the gauge shift enters the butterfly entries.
struct ButterflyConvention {
  enum class Diagonal { Alpha, AlphaDifference } diagonal = Diagonal::AlphaDifference;
  enum class Shift { AsGiven, Rescaled } shift = Shift::Rescaled;

  std::string name() const;
  static std::vector<ButterflyConvention> all();
};

inline constexpr ButterflyConvention kDirectButterfly{ButterflyConvention::Diagonal::Alpha,
                                                       ButterflyConvention::Shift::AsGiven};

struct ButterflyParams {
  std::vector<double> a, b, c;
  std::vector<double> d;  ///< N-1 couplings, d[k] between k and k+1
  std::size_t size() const { return a.size(); }
  void validate() const;
};

ButterflyParams butterfly_params(const RecurrenceData<double>& rec, const GaugeParams<double>& g,
                                 ButterflyConvention conv = {});

/// Butterfly matrix assembled from its parameters.
MatrixD butterfly_from_params(const ButterflyParams& bp);

MatrixD build_butterfly(const RecurrenceData<double>& rec, const GaugeParams<double>& g,
                        ButterflyConvention conv = {});

struct RecoveredParams {
  std::vector<double> diagonal;  ///< coefficient on the operator diagonal (a c + b)
  std::vector<double> beta;      ///< beta_1..beta_{N-1}
  std::vector<double> r_squared;
  std::vector<double> shift;     ///< b
};

/// Inverse of butterfly_params; r is recovered only up to sign.
RecoveredParams recover_params(const ButterflyParams& bp);

/// diag_i = a_i c_i + b_i, offdiag_i = sqrt(a_i a_{i+1}) |d_i|.
SymTridiag butterfly_to_tridiagonal(const ButterflyParams& bp);

inline constexpr double kDoubleRootTol = 1e-12;

/// Roots of z^2 - lambda z + 1 for each lambda, |z| >= 1 first.
std::vector<std::pair<Complex, Complex>> eig_correspondence(const std::vector<double>& lambdas);

/// Canonical representative with |z| >= 1 (z and 1/z are one spectral point).
Complex canonical_point(Complex z);

/// Matching distance between two spectra after folding z -> canonical_point(z).
double canonical_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

struct ConventionTrial {
  ButterflyConvention convention;
  double entry_diff = 0.0;  ///< max over gauges of max |A - B|
};

/// Compares build_butterfly under every convention with the multiplication
/// matrix of the gauged family; sorted by entry_diff, best first.
std::vector<ConventionTrial> determine_butterfly_convention(
    const RecurrenceData<double>& rec, const SupportTable& lsolps,
    const std::vector<GaugeParams<double>>& gauges);

}  // namespace lsopkit
