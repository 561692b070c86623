// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are the
// suite defaults; every criterion must also finish within 10 seconds.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "lsopkit/io.hpp"
#include "lsopkit/model.hpp"
#include "lsopkit/symplectic_spectra.hpp"
#include "lsopkit/verify.hpp"

using namespace lsopkit;

namespace {

constexpr double kTimeLimitSeconds = 10.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

DiscreteMeasure<Rational> seeded(std::uint64_t seed, int order, Mode mode) {
  GeneratorOptions opt;
  opt.seed = seed;
  opt.order = order;
  opt.mode = mode;
  opt.min_gap = 0.1;
  return generate_measure(opt).measure;
}

VerificationReport verify(const DiscreteMeasure<Rational>& m, std::uint64_t seed, Mode mode,
                          std::vector<std::string> only) {
  VerifyConfig cfg;
  cfg.seed = seed;
  cfg.mode = mode;
  cfg.only = std::move(only);
  return run_verification(m, cfg);
}

std::string where(const ClaimRecord& c, std::uint64_t seed, int order) {
  return c.id + " seed " + std::to_string(seed) + " N=" + std::to_string(order) + " residual " +
         c.residual.dump() + (c.detail.rfind("error", 0) == 0 ? " (" + c.detail + ")" : "");
}

/// Every listed claim must pass.
void require_claims(Outcome& out, const VerificationReport& rep, std::uint64_t seed, int order) {
  for (const auto& c : rep.claims) out.require(c.pass, where(c, seed, order));
}

/// Every listed claim must pass with an exact zero residual.
void require_exact(Outcome& out, const VerificationReport& rep, std::uint64_t seed, int order) {
  for (const auto& c : rep.claims)
    out.require(c.pass && c.tolerance == "exact" && c.residual == "0", where(c, seed, order));
}

/// Worst numeric residual over the listed claims of a report.
double worst_residual(const VerificationReport& rep) {
  double worst = 0.0;
  for (const auto& c : rep.claims) {
    if (c.residual.is_number()) worst = std::max(worst, c.residual.get<double>());
    if (c.residual.is_array())
      for (const auto& v : c.residual) worst = std::max(worst, v.get<double>());
  }
  return worst;
}

Outcome pfaffian_identities() {
  Outcome out;
  const std::uint64_t seed = 11;
  const auto rep = verify(seeded(seed, 2, Mode::Rational), seed, Mode::Rational,
                          {"pfaffian_product_identities", "pfaffian_square_determinant",
                           "pfaffian_elimination_expansion"});
  require_exact(out, rep, seed, 2);
  out.detail << "50 identity tables, Pf^2=det for sizes 2..8, elimination=expansion up to 10, all exact";
  return out;
}

Outcome skew_orthogonality() {
  Outcome out;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int order = 1 + static_cast<int>((seed - 1) % 8);
    const auto rep = verify(seeded(seed, order, Mode::Double), seed, Mode::Double, {"skew_orthonormality"});
    require_claims(out, rep, seed, order);
    worst = std::max(worst, worst_residual(rep));
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int order = 1 + static_cast<int>(seed);
    require_exact(out, verify(seeded(seed, order, Mode::Rational), seed, Mode::Rational, {"skew_orthonormality"}),
                  seed, order);
  }
  out.detail << "20 double measures N=1..8 worst defect " << worst << " (tol 1e-9); 6 rational measures exact";
  return out;
}

Outcome cross_route() {
  Outcome out;
  for (int order = 1; order <= 6; ++order) {
    const std::uint64_t seed = 100 + static_cast<std::uint64_t>(order);
    require_exact(out, verify(seeded(seed, order, Mode::Rational), seed, Mode::Rational, {"lsop_cross_route"}),
                  seed, order);
  }
  out.detail << "rational N=1..6, q_0..q_2N coefficientwise equal";
  return out;
}

Outcome op_reduction() {
  Outcome out;
  for (int order = 1; order <= 6; ++order) {
    const std::uint64_t seed = 200 + static_cast<std::uint64_t>(order);
    require_exact(out,
                  verify(seeded(seed, order, Mode::Rational), seed, Mode::Rational,
                         {"even_lsop_op_reduction", "op_orthogonality"}),
                  seed, order);
  }
  double worst = 0.0;
  for (int order = 1; order <= 8; ++order) {
    const std::uint64_t seed = 300 + static_cast<std::uint64_t>(order);
    const auto rep = verify(seeded(seed, order, Mode::Double), seed, Mode::Double, {"op_orthogonality"});
    require_claims(out, rep, seed, order);
    worst = std::max(worst, worst_residual(rep));
  }
  out.detail << "rational N=1..6 exact; double N=1..8 worst orthogonality residual " << worst << " (tol 1e-9)";
  return out;
}

Outcome hankel_determinants() {
  Outcome out;
  for (int order = 1; order <= 6; ++order) {
    const std::uint64_t seed = 400 + static_cast<std::uint64_t>(order);
    require_exact(out,
                  verify(seeded(seed, order, Mode::Rational), seed, Mode::Rational,
                         {"moment_chebyshev_link", "pfaffian_hankel_determinants"}),
                  seed, order);
  }
  out.detail << "rational N=1..6, tau_n and sigma_n equal Hankel determinants for n<=N";
  return out;
}

Outcome pencil() {
  Outcome out;
  double worst = 0.0;
  std::set<std::string> layouts;
  for (int order = 1; order <= 8; ++order) {
    const std::uint64_t seed = 500 + static_cast<std::uint64_t>(order);
    const auto rep = verify(seeded(seed, order, Mode::Double), seed, Mode::Double,
                            {"pencil_recurrence_fidelity", "pencil_symplecticity", "pencil_spectrum"});
    require_claims(out, rep, seed, order);
    if (const auto* c = rep.find("pencil_spectrum")) worst = std::max(worst, c->residual.get<double>());
    if (const auto* c = rep.find("pencil_recurrence_fidelity")) layouts.insert(c->convention);
  }
  out.require(layouts.size() == 1, "pencil layout differs between measures");
  out.detail << "double N=1..8, worst eigenvalue distance " << worst << " (tol 1e-6), layout "
             << (layouts.empty() ? "?" : *layouts.begin());
  return out;
}

Outcome tridiagonal() {
  Outcome out;
  double worst = 0.0;
  for (int order = 1; order <= 8; ++order) {
    const std::uint64_t seed = 600 + static_cast<std::uint64_t>(order);
    const auto rep = verify(seeded(seed, order, Mode::Double), seed, Mode::Double, {"tridiagonal_spectrum"});
    require_claims(out, rep, seed, order);
    worst = std::max(worst, worst_residual(rep));
  }
  // negative control: one weight with flipped sign breaks positivity
  auto bad = seeded(607, 4, Mode::Double);
  bad.weights[1] = -bad.weights[1];
  const auto rep = verify(bad, 607, Mode::Double, {"tridiagonal_spectrum"});
  out.require(!rep.claims.front().pass, "negative control was not flagged");
  out.detail << "double N=1..8 worst |eig(T) - (z+1/z)| " << worst
             << " (tol 1e-8); sign-flipped weight flagged: " << rep.claims.front().detail;
  return out;
}

Outcome butterfly() {
  Outcome out;
  double worst_entries = 0.0, worst_eigs = 0.0;
  std::set<std::string> conventions;
  for (int order = 1; order <= 8; ++order) {
    const std::uint64_t seed = 700 + static_cast<std::uint64_t>(order);
    const auto rep = verify(seeded(seed, order, Mode::Double), seed, Mode::Double,
                            {"butterfly_entrywise", "butterfly_spectrum", "gauge_invariance"});
    require_claims(out, rep, seed, order);
    if (const auto* c = rep.find("butterfly_entrywise")) {
      conventions.insert(c->convention);
      if (c->residual.is_number()) worst_entries = std::max(worst_entries, c->residual.get<double>());
    }
    if (const auto* c = rep.find("butterfly_spectrum"); c && c->residual.is_number())
      worst_eigs = std::max(worst_eigs, c->residual.get<double>());
  }
  out.require(conventions.size() == 1, "determined convention differs between measures");
  out.detail << "double N=1..8 x 20 gauges, convention "
             << (conventions.empty() ? "?" : *conventions.begin()) << ", entry diff " << worst_entries
             << " (tol 1e-9), spectrum " << worst_eigs << " (tol 1e-7)";
  return out;
}

Outcome butterfly_roundtrip() {
  Outcome out;
  for (int order = 1; order <= 8; ++order) {
    const std::uint64_t seed = 800 + static_cast<std::uint64_t>(order);
    require_claims(out,
                   verify(seeded(seed, order, Mode::Double), seed, Mode::Double,
                          {"butterfly_tridiagonal_roundtrip"}),
                   seed, order);
  }
  // a=[1], b=[0], c=[5/2] gives lambda = 5/2 and (z, 1/z) = (2, 1/2)
  ButterflyParams bp{{1.0}, {0.0}, {2.5}, {}};
  const auto pairs = eig_correspondence(sym_tridiag_eigs(butterfly_to_tridiagonal(bp)));
  out.require(pairs.size() == 1 && std::abs(pairs[0].first - Complex(2.0)) <= 1e-12 &&
                  std::abs(pairs[0].second - Complex(0.5)) <= 1e-12,
              "1x1 example did not give (2, 1/2)");
  out.detail << "double N=1..8 plus synthetic |lambda|<2 cases within 1e-7, unit modulus within 1e-12; "
                "1x1 example gives (2, 1/2)";
  return out;
}

Outcome kodama() {
  Outcome out;
  const std::uint64_t seed = 900;
  require_exact(out, verify(seeded(seed, 2, Mode::Rational), seed, Mode::Rational, {"kodama_recurrence"}), seed, 2);
  out.detail << "10 seeded rational coefficient sets with N<=5, residual polynomials identically zero";
  return out;
}

Outcome determinism() {
  Outcome out;
  for (Mode mode : {Mode::Double, Mode::Rational}) {
    const auto run = [&] { return verify(seeded(42, 4, mode), 42, mode, {}).to_json().dump(2); };
    const std::string first = run();
    out.require(first == run(), std::string(to_string(mode)) + " report bytes differ");
  }
  out.detail << "full reports for seed 42, N=4 identical across two runs in both modes";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pfaffian identity suite", pfaffian_identities},
      {"skew orthogonality", skew_orthogonality},
      {"cross-route LSOP equality", cross_route},
      {"reduction to orthogonal polynomials", op_reduction},
      {"Pfaffian-Hankel determinants", hankel_determinants},
      {"symplectic pencil", pencil},
      {"tridiagonal spectrum", tridiagonal},
      {"butterfly path", butterfly},
      {"butterfly-tridiagonal round trip", butterfly_roundtrip},
      {"two-step SOP recurrence", kodama},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < kTimeLimitSeconds, "took longer than 10 s");
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail.str() << " [" << std::fixed << std::setprecision(2) << secs << " s]"
              << std::defaultfloat << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
