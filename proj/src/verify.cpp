#include "lsopkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "lsopkit/lsolp_basis.hpp"
#include "lsopkit/lsop_engine.hpp"
#include "lsopkit/symplectic_spectra.hpp"

namespace lsopkit {

Tolerances::Tolerances()
    : values_{{"pfaffian_identity", 1e-10},     {"skew_orthogonality", 1e-9},
              {"op_orthogonality", 1e-9},       {"pencil_residual", 1e-10},
              {"symplectic_pencil", 1e-10},     {"symplectic_transfer", 1e-8},
              {"pencil_eigs", 1e-6},            {"tridiagonal_eigs", 1e-8},
              {"butterfly_entries", 1e-9},      {"butterfly_eigs", 1e-7},
              {"gauge_invariance", 1e-8},       {"butterfly_tridiagonal", 1e-7},
              {"unit_modulus", 1e-12},          {"representation", 1e-8}} {}

double Tolerances::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw Error(ErrorKind::Format, "unknown tolerance '" + name + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  if (!values_.count(name)) throw Error(ErrorKind::Format, "unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::Format, "tolerance '" + name + "' must be positive");
  }
  values_[name] = value;
}

void Tolerances::apply(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorKind::Format, "tolerance override must look like name=value");
  }
  const std::string value = assignment.substr(eq + 1);
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Format, "bad tolerance value '" + value + "'");
  }
  set(assignment.substr(0, eq), v);
}

bool VerificationReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimRecord& c) { return c.pass; });
}

const ClaimRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& c : claims)
    if (c.id == id) return &c;
  return nullptr;
}

Json VerificationReport::to_json() const {
  Json j;
  j["kind"] = "verification_report";
  j["environment"] = environment;
  j["claims"] = Json::array();
  int passed = 0;
  for (const auto& c : claims) {
    Json r;
    r["id"] = c.id;
    r["statement"] = c.statement;
    r["convention"] = c.convention;
    r["residual"] = c.residual;
    r["tolerance"] = c.tolerance;
    r["status"] = c.pass ? "pass" : "flag";
    r["detail"] = c.detail;
    j["claims"].push_back(r);
    passed += c.pass ? 1 : 0;
  }
  j["summary"] = {{"claims", claims.size()},
                  {"passed", passed},
                  {"flagged", static_cast<int>(claims.size()) - passed}};
  return j;
}

namespace {

struct ClaimInfo {
  const char* id;
  const char* statement;
};

const std::vector<ClaimInfo>& claim_table() {
  static const std::vector<ClaimInfo> table{
      {"pfaffian_product_identities",
       "four-index product identities for Pfaffians over even and odd base sets"},
      {"pfaffian_square_determinant", "Pf(S)^2 equals det(S) for skew arrays of sizes 2..8"},
      {"pfaffian_elimination_expansion",
       "elimination Pfaffian equals recursive expansion for sizes up to 10"},
      {"moment_shift_invariance", "<z^{i+k}|z^{j+k}> = <z^i|z^j> = mu_{j-i}"},
      {"laurent_reflection_symmetry", "<f(z)|g(z)> = <g(1/z)|f(1/z)>"},
      {"moment_chebyshev_link", "skew moments follow from classical moments via Chebyshev sums"},
      {"lsop_normalization",
       "q_2n monic and self-reciprocal; q_2n+1 monic with vanishing z^2n coefficient"},
      {"lsop_cross_route", "Pfaffian-column LSOPs equal the two-step recurrence LSOPs"},
      {"skew_orthonormality",
       "<q~_2m|q~_2n+1> = delta_mn, even-even and odd-odd pairings vanish"},
      {"even_lsop_op_reduction",
       "q_2n(z) = z^n R_n(z+1/z) with R_n the Hankel-determinant orthogonal polynomial"},
      {"op_orthogonality", "R_n orthogonal under f -> sum f(z+1/z)(z-1/z)w"},
      {"pfaffian_hankel_determinants",
       "tau_n and sigma_n equal Hankel and shifted-Hankel determinants of classical moments"},
      {"lsolp_gram_schmidt",
       "skew Gram-Schmidt in 1, 1/z, z, 1/z^2, ... reproduces the LSOLPs built from LSOPs"},
      {"pencil_recurrence_fidelity",
       "the pencil (U,V) annihilates the orthonormal LSOP vector at every support point"},
      {"pencil_symplecticity", "U J U^T = V J V^T and V^{-1}U is symplectic"},
      {"pencil_spectrum", "generalized eigenvalues of (U,V) are {z_k, 1/z_k}"},
      {"tridiagonal_spectrum", "eig(T) = {z_k + 1/z_k}"},
      {"lsolp_multiplication_diagonal",
       "z Q_2n expands over Q_2n+2, Q_2n+1, Q_2n, Q_2n-2 and z Q_2n+1 = -Q_2n"},
      {"butterfly_entrywise",
       "the butterfly matrix equals the multiplication matrix of the gauged LSOLPs"},
      {"butterfly_spectrum", "butterfly spectrum is {z_k, 1/z_k} for random gauges"},
      {"gauge_invariance", "butterfly and multiplication-matrix spectra do not depend on the gauge"},
      {"butterfly_tridiagonal_roundtrip",
       "butterfly spectrum recovered from the symmetric tridiagonal reduction"},
      {"kodama_recurrence", "SOPs from p_n(z^2) satisfy the coupled two-step recurrence"},
  };
  return table;
}

std::string fmt(double x) { return format_double(x); }

Rational rabs(const Rational& x) { return abs(x); }

/// Max |coefficient difference| between two polynomials.
Rational poly_diff(const LaurentPoly<Rational>& a, const LaurentPoly<Rational>& b) {
  Rational worst = 0;
  for (const auto& [e, c] : (a - b).terms()) worst = std::max(worst, rabs(c));
  return worst;
}

void set_exact(ClaimRecord& r, const Rational& residual) {
  r.residual = format_rational(residual);
  r.tolerance = "exact";
  r.pass = sgn(residual) == 0;
}

void set_numeric(ClaimRecord& r, double residual, double tol) {
  r.residual = std::isfinite(residual) ? Json(residual) : Json(fmt(residual));
  r.tolerance = tol;
  r.pass = std::isfinite(residual) && residual <= tol;
}

Rational random_small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  return make_rational(num(rng), den(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

class Suite {
 public:
  Suite(const DiscreteMeasure<Rational>& m, const VerifyConfig& cfg) : cfg_(cfg), measure_(m) {
    try {
      em_ = build_exact_model(measure_);
      n_ = static_cast<std::size_t>(em_->order);
      rec_d_ = em_->rec.cast<double>();
      for (const auto& z : measure_.nodes) {
        spectrum_.emplace_back(z.get_d());
        spectrum_.emplace_back(Rational(1 / z).get_d());
      }
      std::mt19937_64 rng = rng_for(1000);
      for (int k = 0; k < cfg_.gauges; ++k) {
        GaugeParams<double> g;
        for (std::size_t i = 0; i < n_; ++i) {
          const double mag = uniform(rng, 0.5, 2.0);
          g.r.push_back((rng() & 1u) ? mag : -mag);
          g.lambda.push_back(uniform(rng, -1.0, 1.0));
        }
        gauges_.push_back(std::move(g));
      }
    } catch (const std::exception& e) {
      model_error_ = e.what();
      return;
    }
    try {
      lsops_ = lsop_support_table(*em_);
      lsolps_ = lsolp_support_table(*em_);
      orthonormal_ = true;
    } catch (const std::exception& e) {
      orthonormal_error_ = e.what();
    }
  }

  VerificationReport run() {
    VerificationReport rep;
    rep.environment["seed"] = cfg_.seed;
    rep.environment["order"] = measure_.size();
    rep.environment["mode"] = to_string(cfg_.mode);
    Json tol;
    for (const auto& [k, v] : cfg_.tol.all()) tol[k] = v;
    rep.environment["tolerances"] = tol;
    rep.environment["gauges"] = cfg_.gauges;
    if (!cfg_.only.empty()) rep.environment["claims"] = cfg_.only;

    const std::map<std::string, std::function<void(ClaimRecord&)>> handlers{
        {"pfaffian_product_identities", [this](ClaimRecord& r) { product_identities(r); }},
        {"pfaffian_square_determinant", [this](ClaimRecord& r) { square_determinant(r); }},
        {"pfaffian_elimination_expansion", [this](ClaimRecord& r) { elimination_expansion(r); }},
        {"moment_shift_invariance", [this](ClaimRecord& r) { shift_invariance(r); }},
        {"laurent_reflection_symmetry", [this](ClaimRecord& r) { reflection_symmetry(r); }},
        {"moment_chebyshev_link", [this](ClaimRecord& r) { chebyshev_link(r); }},
        {"lsop_normalization", [this](ClaimRecord& r) { lsop_normalization(r); }},
        {"lsop_cross_route", [this](ClaimRecord& r) { cross_route(r); }},
        {"skew_orthonormality", [this](ClaimRecord& r) { skew_orthonormality(r); }},
        {"even_lsop_op_reduction", [this](ClaimRecord& r) { op_reduction(r); }},
        {"op_orthogonality", [this](ClaimRecord& r) { op_orthogonality(r); }},
        {"pfaffian_hankel_determinants", [this](ClaimRecord& r) { hankel_determinants(r); }},
        {"lsolp_gram_schmidt", [this](ClaimRecord& r) { gram_schmidt(r); }},
        {"pencil_recurrence_fidelity", [this](ClaimRecord& r) { pencil_fidelity(r); }},
        {"pencil_symplecticity", [this](ClaimRecord& r) { pencil_symplecticity(r); }},
        {"pencil_spectrum", [this](ClaimRecord& r) { pencil_spectrum(r); }},
        {"tridiagonal_spectrum", [this](ClaimRecord& r) { tridiagonal_spectrum(r); }},
        {"lsolp_multiplication_diagonal", [this](ClaimRecord& r) { multiplication_diagonal(r); }},
        {"butterfly_entrywise", [this](ClaimRecord& r) { butterfly_entrywise(r); }},
        {"butterfly_spectrum", [this](ClaimRecord& r) { butterfly_spectrum(r); }},
        {"gauge_invariance", [this](ClaimRecord& r) { gauge_invariance(r); }},
        {"butterfly_tridiagonal_roundtrip", [this](ClaimRecord& r) { tridiagonal_roundtrip(r); }},
        {"kodama_recurrence", [this](ClaimRecord& r) { kodama(r); }},
    };
    static const std::vector<std::string> independent{
        "pfaffian_product_identities", "pfaffian_square_determinant",
        "pfaffian_elimination_expansion", "kodama_recurrence"};
    // claims that use orthonormal LSOP/LSOLP values, which need every tau_n > 0
    static const std::vector<std::string> orthonormal_claims{
        "skew_orthonormality",   "pencil_recurrence_fidelity", "pencil_symplecticity",
        "pencil_spectrum",       "lsolp_multiplication_diagonal", "butterfly_entrywise",
        "butterfly_spectrum",    "gauge_invariance",           "butterfly_tridiagonal_roundtrip"};

    for (const auto& id : cfg_.only)
      if (!handlers.count(id)) throw Error(ErrorKind::Format, "unknown claim '" + id + "'");
    for (const auto& info : claim_table()) {
      if (!cfg_.only.empty() && std::find(cfg_.only.begin(), cfg_.only.end(), info.id) == cfg_.only.end())
        continue;
      ClaimRecord r;
      r.id = info.id;
      r.statement = info.statement;
      r.residual = nullptr;
      r.tolerance = nullptr;
      const bool needs_model =
          std::find(independent.begin(), independent.end(), r.id) == independent.end();
      const bool needs_orthonormal =
          std::find(orthonormal_claims.begin(), orthonormal_claims.end(), r.id) != orthonormal_claims.end();
      try {
        if (needs_model && !em_) throw Error(ErrorKind::Admissibility, model_error_);
        if (needs_orthonormal && !orthonormal_) throw Error(ErrorKind::Admissibility, orthonormal_error_);
        handlers.at(r.id)(r);
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
      }
      rep.claims.push_back(std::move(r));
    }
    return rep;
  }

 private:
  std::mt19937_64 rng_for(std::uint64_t salt) const {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
  }

  bool exact() const { return cfg_.mode == Mode::Rational; }
  double tol(const char* name) const { return cfg_.tol.get(name); }

  // ---- Pfaffian identities on seeded random tables ----

  template <class Fn>
  void pfaffian_claim(ClaimRecord& r, std::uint64_t salt, Fn&& fn) {
    std::mt19937_64 rng = rng_for(salt);
    if (exact()) {
      r.convention = "exact rational entries";
      Rational worst = 0;
      fn(rng, [&](std::size_t n) {
        SkewArray<Rational> s(n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, random_small_rational(rng));
        return s;
      }, [&](const Rational& lhs, const Rational& rhs) { worst = std::max(worst, rabs(Rational(lhs - rhs))); });
      set_exact(r, worst);
    } else {
      r.convention = "double entries uniform in [-1,1], residual relative to the largest term";
      double worst = 0.0;
      fn(rng, [&](std::size_t n) {
        SkewArray<double> s(n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, uniform(rng, -1.0, 1.0));
        return s;
      }, [&](double lhs, double rhs) {
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)}));
      });
      set_numeric(r, worst, tol("pfaffian_identity"));
    }
  }

  void product_identities(ClaimRecord& r) {
    pfaffian_claim(r, 1, [](auto& rng, auto make, auto record) {
      for (int t = 0; t < 50; ++t) {
        const int base = t % 5;
        auto s = make(static_cast<std::size_t>(base + 4));
        std::vector<int> idx(static_cast<std::size_t>(base + 4));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::shuffle(idx.begin(), idx.end(), rng);
        IndexList m(idx.begin() + 4, idx.end());
        auto res = base % 2 == 0 ? check_identity_even(s, m, idx[0], idx[1], idx[2], idx[3])
                                 : check_identity_odd(s, m, idx[0], idx[1], idx[2], idx[3]);
        using T = decltype(res.residual);
        const T scale = std::max<T>(res.scale, T(1));
        record(T(res.residual / scale), T(0));
      }
    });
    r.detail = "50 seeded tables, base sets of sizes 0..4";
  }

  void square_determinant(ClaimRecord& r) {
    pfaffian_claim(r, 2, [](auto&, auto make, auto record) {
      for (std::size_t n = 2; n <= 8; n += 2) {
        for (int rep = 0; rep < 5; ++rep) {
          auto s = make(n);
          const auto pf = pf_eliminate(s);
          record(dense_det(s.dense()), decltype(pf)(pf * pf));
        }
      }
    });
    r.detail = "5 seeded tables per even size 2..8";
  }

  void elimination_expansion(ClaimRecord& r) {
    pfaffian_claim(r, 3, [](auto&, auto make, auto record) {
      for (std::size_t n = 0; n <= 10; n += 2) {
        for (int rep = 0; rep < 3; ++rep) {
          auto s = make(n);
          record(pf_eliminate(s), pf_expand(s));
        }
      }
    });
    r.detail = "3 seeded tables per even size 0..10";
  }

  // ---- moments ----

  void shift_invariance(ClaimRecord& r) {
    std::mt19937_64 rng = rng_for(4);
    const int n = static_cast<int>(n_);
    std::uniform_int_distribution<int> d(-n, n);
    Rational worst = 0;
    using P = LaurentPoly<Rational>;
    for (int t = 0; t < 20; ++t) {
      const int i = d(rng), j = d(rng), k = d(rng);
      const Rational a = skew_inner(measure_, P::monomial(i + k), P::monomial(j + k));
      const Rational b = skew_inner(measure_, P::monomial(i), P::monomial(j));
      worst = std::max({worst, rabs(Rational(a - b)), rabs(Rational(b - mu_moment(measure_, j - i)))});
    }
    r.convention = "Pf(i,j) = <z^i|z^j> = mu_{j-i}; exact arithmetic on the stored measure";
    r.detail = "20 seeded (i,j,k) in [-N,N]";
    set_exact(r, worst);
  }

  void reflection_symmetry(ClaimRecord& r) {
    std::mt19937_64 rng = rng_for(5);
    const int n = static_cast<int>(n_);
    Rational worst = 0;
    for (int t = 0; t < 10; ++t) {
      LaurentPoly<Rational> f, g;
      for (int e = -n; e <= n; ++e) {
        f.add_term(e, random_small_rational(rng));
        g.add_term(e, random_small_rational(rng));
      }
      const Rational a = skew_inner(measure_, f, g);
      const Rational b = skew_inner(measure_, g.reciprocal(), f.reciprocal());
      worst = std::max(worst, rabs(Rational(a - b)));
    }
    r.convention = "exact arithmetic on the stored measure";
    r.detail = "10 seeded Laurent polynomials with exponents in [-N,N]";
    set_exact(r, worst);
  }

  void chebyshev_link(ClaimRecord& r) {
    const auto& t = em_->moments;
    const auto mu = mu_from_c(t.c, t.c.size());
    Rational worst = 0;
    for (std::size_t k = 0; k < mu.size(); ++k)
      worst = std::max(worst, rabs(Rational(mu[k] - t.mu(static_cast<int>(k)))));
    r.convention = "mu_n = sum_k (-1)^k C(n-1-k,k) c_{n-1-2k}";
    r.detail = "mu_0..mu_" + std::to_string(mu.size() - 1) + " from c_0..c_" + std::to_string(t.c.size() - 1);
    set_exact(r, worst);
  }

  // ---- LSOPs ----

  void lsop_normalization(ClaimRecord& r) {
    int violations = 0;
    std::string first;
    for (std::size_t k = 0; k < em_->q.size(); ++k) {
      const auto& q = em_->q[k];
      const int deg = static_cast<int>(k);
      bool ok = q.max_exponent() == deg && q.leading_coeff() == 1;
      if (k % 2 == 0) ok = ok && q.min_exponent() == 0 && q.is_self_reciprocal();
      else ok = ok && is_zero(q.coeff(deg - 1));
      if (!ok) {
        ++violations;
        if (first.empty()) first = "q_" + std::to_string(k);
      }
    }
    r.convention = "odd gauge fixed by a zero z^{2n} coefficient";
    r.detail = violations == 0 ? "q_0..q_" + std::to_string(em_->q.size() - 1) + " checked"
                               : "first violation at " + first;
    set_exact(r, Rational(violations));
  }

  void cross_route(ClaimRecord& r) {
    Rational worst = 0;
    for (std::size_t k = 0; k < em_->q.size(); ++k)
      worst = std::max(worst, poly_diff(lsop_via_pfaffian(em_->moments, static_cast<int>(k)), em_->q[k]));
    r.convention = "q_2n = Pf(0..2n, z)/tau_n, q_2n+1 = Pf(0..2n-1, 2n+1, z)/tau_n with Pf(i,z) = z^i";
    r.detail = "coefficientwise, q_0..q_" + std::to_string(em_->q.size() - 1);
    set_exact(r, worst);
  }

  void skew_orthonormality(ClaimRecord& r) {
    const std::size_t members = 2 * n_;
    if (exact()) {
      // exact values of the monic q_n on the support, then scaled pairings
      std::vector<std::vector<Rational>> at_z(members), at_inv(members);
      for (std::size_t i = 0; i < members; ++i) {
        for (const auto& z : measure_.nodes) {
          at_z[i].push_back(em_->q[i](z));
          at_inv[i].push_back(em_->q[i](Rational(1 / z)));
        }
      }
      int failures = 0;
      std::string first;
      for (std::size_t i = 0; i < members; ++i) {
        for (std::size_t j = 0; j < members; ++j) {
          Rational raw = 0;
          for (std::size_t k = 0; k < n_; ++k)
            raw += (at_inv[i][k] * at_z[j][k] - at_z[i][k] * at_inv[j][k]) * measure_.weights[k];
          const SignedSquare v = scaled_pairing(raw, em_->scale_sq[i / 2], em_->scale_sq[j / 2]);
          bool ok;
          if (i % 2 == 0 && j == i + 1) ok = v.is_one();
          else if (j % 2 == 0 && i == j + 1) ok = v.sign < 0 && v.square == 1;
          else ok = v.is_zero();
          if (!ok) {
            ++failures;
            if (first.empty()) first = "<q~_" + std::to_string(i) + "|q~_" + std::to_string(j) + ">";
          }
        }
      }
      r.convention = "exact: pairings carried as sign*sqrt(square)";
      r.detail = failures == 0 ? "all " + std::to_string(members * members) + " pairings exactly 0 or +-1"
                               : std::to_string(failures) + " pairings off, first " + first;
      set_exact(r, Rational(failures));
    } else {
      const SkewGramDefect d = skew_gram_defect(lsops_);
      r.convention = "exact LSOP values on the support, rounded once";
      r.detail = "dual " + fmt(d.dual) + ", even-even " + fmt(d.even) + ", odd-odd " + fmt(d.odd);
      set_numeric(r, d.max(), tol("skew_orthogonality"));
    }
  }

  void op_reduction(ClaimRecord& r) {
    Rational worst = 0;
    std::vector<LaurentPoly<Rational>> ops;
    for (std::size_t k = 0; k <= n_; ++k) {
      ops.push_back(even_to_op(em_->q[2 * k]));
      worst = std::max(worst, poly_diff(ops.back(), op_via_hankel(em_->moments.c, static_cast<int>(k))));
    }
    // three-term recurrence with diagonal alpha_{n+1} - alpha_n
    const auto w = LaurentPoly<Rational>::monomial(1);
    for (std::size_t k = 0; k < n_; ++k) {
      LaurentPoly<Rational> rhs = ops[k + 1] + ops[k] * Rational(em_->rec.alpha[k + 1] - em_->rec.alpha[k]);
      if (k > 0) rhs += ops[k - 1] * em_->rec.beta[k];
      worst = std::max(worst, poly_diff(w * ops[k], rhs));
    }
    r.convention = "w R_n = R_{n+1} + (alpha_{n+1}-alpha_n) R_n + beta_n R_{n-1}";
    r.detail = "R_0..R_" + std::to_string(n_) + " by peeling vs Hankel ratio";
    set_exact(r, worst);
  }

  void op_orthogonality(ClaimRecord& r) {
    std::vector<Rational> x, omega;
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& z = measure_.nodes[k];
      const Rational zi = 1 / z;
      x.push_back(z + zi);
      omega.push_back((z - zi) * measure_.weights[k]);
    }
    std::vector<std::vector<Rational>> vals;
    for (std::size_t n = 0; n < n_; ++n) {
      const auto op = even_to_op(em_->q[2 * n]);
      std::vector<Rational> row;
      for (const auto& xk : x) row.push_back(op(xk));
      vals.push_back(std::move(row));
    }
    r.detail = "pairs n != m, n,m < N";
    if (exact()) {
      Rational worst = 0;
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < a; ++b) {
          Rational s = 0;
          for (std::size_t k = 0; k < n_; ++k) s += vals[a][k] * vals[b][k] * omega[k];
          worst = std::max(worst, rabs(s));
        }
      r.convention = "exact";
      set_exact(r, worst);
    } else {
      auto pair = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) s += vals[a][k].get_d() * vals[b][k].get_d() * omega[k].get_d();
        return s;
      };
      double worst = 0.0;
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < a; ++b)
          worst = std::max(worst, std::fabs(pair(a, b)) / std::sqrt(pair(a, a) * pair(b, b)));
      r.convention = "exact R_n values rounded once; |L[R_n R_m]| / sqrt(L[R_n^2] L[R_m^2])";
      set_numeric(r, worst, tol("op_orthogonality"));
    }
  }

  void hankel_determinants(ClaimRecord& r) {
    const auto& c = em_->moments.c;
    const int order = static_cast<int>(n_);
    const auto linked = MomentTable<Rational>::from_classical(c, order);
    const auto rep = verify_pfaffian_det(linked, c, order);
    Rational worst = 0;
    for (const auto& d : rep.tau_deviation) worst = std::max(worst, rabs(d));
    for (const auto& d : rep.sigma_deviation) worst = std::max(worst, rabs(d));
    // direct moments give the same tau/sigma
    const auto direct = verify_pfaffian_det(em_->moments, c, order);
    for (const auto& d : direct.tau_deviation) worst = std::max(worst, rabs(d));
    for (const auto& d : direct.sigma_deviation) worst = std::max(worst, rabs(d));
    // the transposed sign convention, for the record
    int transposed_mismatch = 0;
    for (int n = 1; n <= order; ++n) {
      const Rational tau_t = pf_eliminate(em_->moments.skew_array(tau_indices(n), MomentSign::Transposed));
      if (tau_t != hankel_det(c, n)) ++transposed_mismatch;
    }
    r.convention = "Pf(i,j) = <z^i|z^j> = mu_{j-i}, mu linked to c by Chebyshev sums";
    r.detail = "n = 0.." + std::to_string(order) + "; with Pf(i,j) = mu_{i-j} instead, tau_n differs by (-1)^n (" +
               std::to_string(transposed_mismatch) + " of " + std::to_string(order) + " tau_n mismatch)";
    set_exact(r, worst);
  }

  void gram_schmidt(ClaimRecord& r) {
    const auto gs = gram_schmidt_lsolp_monic(measure_, 2 * n_);
    const auto monic = lsolp_monic_from_lsop(em_->q, static_cast<int>(n_));
    Rational worst = 0;
    for (std::size_t i = 0; i < monic.size(); ++i) worst = std::max(worst, poly_diff(gs.family[i], monic[i]));
    for (std::size_t k = 0; k < n_; ++k)
      worst = std::max(worst, rabs(Rational(gs.kappa[k] + em_->rec.tau[k + 1] / em_->rec.tau[k])));
    r.convention = "monic: Q_2n = z^-n q_2n, Q_2n+1 = z^-n-1 q_2n, kappa_n = -tau_{n+1}/tau_n";
    r.detail = std::to_string(2 * n_) + " members compared coefficientwise";
    set_exact(r, worst);
  }

  // ---- pencil ----

  const PencilDiagnosis& pencil() {
    if (!pencil_) pencil_ = diagnose_pencil(rec_d_, lsops_, tol("pencil_residual"));
    return *pencil_;
  }

  std::string pencil_layout() {
    return pencil().standard_ok ? "U=[[H,I],[-F^T,O]], V=[[F,O],[G,I]]"
                               : "U=[[I,-H],[O,-F^T]], V=[[O,F],[I,-G]] for v=(odd;even)";
  }

  void pencil_fidelity(ClaimRecord& r) {
    const auto& d = pencil();
    r.convention = pencil_layout();
    r.detail = "standard layout U=[[H,I],[-F^T,O]], V=[[F,O],[G,I]] residual " + fmt(d.standard_residual) +
               "; rearranged residual " + fmt(d.rearranged_residual) + "; entry diff U " +
               fmt(d.u_entry_diff) + ", V " + fmt(d.v_entry_diff);
    set_numeric(r, std::min(d.standard_residual, d.rearranged_residual), tol("pencil_residual"));
  }

  void pencil_symplecticity(ClaimRecord& r) {
    const auto c = symplectic_pencil_check(pencil().validated);
    const auto cp = symplectic_pencil_check(build_pencil(rec_d_));
    const bool ok = c.pencil_relative <= tol("symplectic_pencil") &&
                    c.transfer_relative <= tol("symplectic_transfer");
    r.convention = pencil_layout() + "; residuals relative to max(1,|U||V|) and max(1,|S|^2)";
    r.detail = "||UJU^T-VJV^T|| = " + fmt(c.pencil) + " (rel " + fmt(c.pencil_relative) +
               "), ||S^TJS-J|| = " + fmt(c.transfer) + " (rel " + fmt(c.transfer_relative) +
               "); standard layout rel " + fmt(cp.pencil_relative) + ", " + fmt(cp.transfer_relative);
    r.residual = Json::array({c.pencil_relative, c.transfer_relative});
    r.tolerance = Json::array({tol("symplectic_pencil"), tol("symplectic_transfer")});
    r.pass = ok;
  }

  void pencil_spectrum(ClaimRecord& r) {
    const double dist = canonical_distance(pencil_eigs(pencil().validated), spectrum_);
    std::vector<Complex> negated;
    for (const Complex& z : spectrum_) negated.push_back(-z);
    const double standard_neg = canonical_distance(pencil_eigs(build_pencil(rec_d_)), negated);
    r.convention = pencil_layout() + "; eigenvalues of V^{-1}U folded to |z| >= 1";
    r.detail = "standard layout has spectrum {-z_k, -1/z_k} to " + fmt(standard_neg);
    set_numeric(r, dist, tol("pencil_eigs"));
  }

  void tridiagonal_spectrum(ClaimRecord& r) {
    const auto e = sym_tridiag_eigs(build_tridiagonal_T(rec_d_));
    std::vector<double> expected;
    for (const auto& z : measure_.nodes) expected.push_back(Rational(z + 1 / z).get_d());
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) worst = std::max(worst, std::fabs(e[i] - expected[i]));
    double gap = 1e300;
    for (std::size_t i = 0; i < measure_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        gap = std::min(gap, std::fabs(measure_.nodes[i].get_d() - measure_.nodes[j].get_d()));
    r.convention = "T = tridiag(alpha_{n+1}-alpha_n ; sqrt(beta_n))";
    r.detail = "sorted comparison, min node gap " + (n_ > 1 ? fmt(gap) : std::string("n/a"));
    set_numeric(r, worst, tol("tridiagonal_eigs"));
  }

  // ---- LSOLPs and butterfly ----

  void multiplication_diagonal(ClaimRecord& r) {
    const auto mm = multiplication_matrix(lsolps_, tol("representation"));
    const std::size_t n = n_;
    double diff_alpha = 0.0, diff_difference = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double diag = mm.a(n + k, n + k);
      diff_alpha = std::max(diff_alpha, std::fabs(diag - rec_d_.alpha[k]));
      diff_difference = std::max(diff_difference, std::fabs(diag - (rec_d_.alpha[k + 1] - rec_d_.alpha[k])));
    }
    const bool use_difference = diff_difference <= diff_alpha;
    MatrixD predicted(2 * n, 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      predicted(k, n + k) = -1.0;  // z Q_2k+1 = -Q_2k
      predicted(n + k, k) = 1.0;
      predicted(n + k, n + k) = use_difference ? rec_d_.alpha[k + 1] - rec_d_.alpha[k] : rec_d_.alpha[k];
      if (k + 1 < n) predicted(n + k, n + k + 1) = std::sqrt(rec_d_.beta[k + 1]);
      if (k > 0) predicted(n + k, n + k - 1) = std::sqrt(rec_d_.beta[k]);
    }
    r.convention = use_difference ? "diagonal coefficient alpha_{n+1} - alpha_n"
                                  : "diagonal coefficient alpha_n";
    r.detail = "max |diag - alpha_n| = " + fmt(diff_alpha) + ", max |diag - (alpha_{n+1}-alpha_n)| = " +
               fmt(diff_difference) + "; representation residual " + fmt(mm.residual);
    set_numeric(r, max_abs_diff(mm.a, predicted), tol("butterfly_entries"));
  }

  const std::vector<ConventionTrial>& trials() {
    if (!trials_) trials_ = determine_butterfly_convention(rec_d_, lsolps_, gauges_);
    return *trials_;
  }

  void butterfly_entrywise(ClaimRecord& r) {
    const auto& t = trials();
    r.convention = t.front().convention.name();
    std::ostringstream d;
    d << cfg_.gauges << " seeded gauges; entry diff by convention:";
    for (const auto& trial : t) d << " [" << trial.convention.name() << "] " << fmt(trial.entry_diff);
    r.detail = d.str();
    set_numeric(r, t.front().entry_diff, tol("butterfly_entries"));
  }

  void butterfly_spectrum(ClaimRecord& r) {
    const auto conv = trials().front().convention;
    double worst = 0.0, symmetry = 0.0;
    for (const auto& g : gauges_) {
      const auto e = dense_eigs(build_butterfly(rec_d_, g, conv));
      worst = std::max(worst, canonical_distance(e, spectrum_));
      std::vector<Complex> inv;
      for (const Complex& z : e) inv.push_back(1.0 / z);
      symmetry = std::max(symmetry, matched_distance(e, inv));
    }
    r.convention = conv.name();
    r.detail = std::to_string(gauges_.size()) + " seeded gauges; z -> 1/z pairing defect " + fmt(symmetry);
    set_numeric(r, std::max(worst, symmetry), tol("butterfly_eigs"));
  }

  void gauge_invariance(ClaimRecord& r) {
    const auto conv = trials().front().convention;
    const auto base = dense_eigs(build_butterfly(rec_d_, GaugeParams<double>::trivial(n_), conv));
    const auto base_mm = dense_eigs(multiplication_matrix(lsolps_, tol("representation")).a);
    double worst = 0.0, worst_mm = 0.0;
    for (const auto& g : gauges_) {
      worst = std::max(worst, canonical_distance(dense_eigs(build_butterfly(rec_d_, g, conv)), base));
      const auto mm = multiplication_matrix(gauge_support(lsolps_, g), tol("representation"));
      worst_mm = std::max(worst_mm, canonical_distance(dense_eigs(mm.a), base_mm));
    }
    r.convention = conv.name();
    r.detail = "butterfly " + fmt(worst) + ", multiplication matrix " + fmt(worst_mm) + " over " +
               std::to_string(gauges_.size()) + " gauges";
    set_numeric(r, std::max(worst, worst_mm), tol("gauge_invariance"));
  }

  static double roundtrip_error(const ButterflyParams& bp, double* modulus_defect) {
    const auto dense = dense_eigs(butterfly_from_params(bp));
    std::vector<Complex> via;
    for (auto [z, zi] : eig_correspondence(sym_tridiag_eigs(butterfly_to_tridiagonal(bp)))) {
      via.push_back(z);
      via.push_back(zi);
      if (modulus_defect && std::fabs(z.imag()) > 0.0) {
        *modulus_defect = std::max({*modulus_defect, std::fabs(std::abs(z) - 1.0), std::fabs(std::abs(zi) - 1.0)});
      }
    }
    return matched_distance(via, dense);
  }

  void tridiagonal_roundtrip(ClaimRecord& r) {
    const auto conv = trials().front().convention;
    double worst = 0.0;
    for (const auto& g : gauges_) worst = std::max(worst, roundtrip_error(butterfly_params(rec_d_, g, conv), nullptr));
    // synthetic parameters with every tridiagonal eigenvalue inside (-2, 2)
    std::mt19937_64 rng = rng_for(22);
    ButterflyParams bp;
    for (std::size_t i = 0; i < n_; ++i) {
      bp.a.push_back(uniform(rng, 0.5, 2.0));
      bp.b.push_back(uniform(rng, -0.3, 0.3));
      bp.c.push_back((uniform(rng, -1.0, 1.0) - bp.b.back()) / bp.a.back());
    }
    for (std::size_t k = 0; k + 1 < n_; ++k) bp.d.push_back(uniform(rng, -0.2, 0.2));
    double modulus = 0.0;
    const double synthetic = roundtrip_error(bp, &modulus);
    const auto lam = sym_tridiag_eigs(butterfly_to_tridiagonal(bp));
    const bool inside = std::all_of(lam.begin(), lam.end(), [](double l) { return std::fabs(l) < 2.0; });
    r.convention = conv.name() + "; z = (lambda + sqrt(lambda^2-4))/2";
    r.detail = "measure gauges " + fmt(worst) + "; synthetic |lambda|<2 case " + fmt(synthetic) +
               " with unit-modulus defect " + fmt(modulus) + (inside ? "" : " (synthetic case left (-2,2))");
    set_numeric(r, std::max(worst, synthetic), tol("butterfly_tridiagonal"));
    r.pass = r.pass && inside && modulus <= tol("unit_modulus");
  }

  void kodama(ClaimRecord& r) {
    std::mt19937_64 rng = rng_for(23);
    Rational worst = 0;
    std::ostringstream orders;
    for (int t = 0; t < 10; ++t) {
      const int order = 1 + static_cast<int>(rng() % 5);
      std::vector<Rational> a, b;
      for (int i = 0; i < order; ++i) {
        a.push_back(random_small_rational(rng));
        b.push_back(random_small_rational(rng));
      }
      const auto q = kodama_sops(a, b, order);
      for (const auto& res : kodama_residuals(a, b, q))
        for (const auto& [e, c] : res.terms()) worst = std::max(worst, rabs(c));
      orders << (t ? "," : "") << order;
    }
    r.convention = "q_2n = p_n(z^2), q_2n+1 = z p_n(z^2); exact rational coefficients";
    r.detail = "10 seeded coefficient sets, orders " + orders.str();
    set_exact(r, worst);
  }

  const VerifyConfig& cfg_;
  DiscreteMeasure<Rational> measure_;
  std::optional<ExactModel> em_;
  std::string model_error_;
  bool orthonormal_ = false;
  std::string orthonormal_error_;
  std::size_t n_ = 0;
  RecurrenceData<double> rec_d_;
  SupportTable lsops_, lsolps_;
  std::vector<Complex> spectrum_;
  std::vector<GaugeParams<double>> gauges_;
  std::optional<PencilDiagnosis> pencil_;
  std::optional<std::vector<ConventionTrial>> trials_;
};

}  // namespace

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& s : claim_table()) out.push_back(s.id);
    return out;
  }();
  return ids;
}

VerificationReport run_verification(const DiscreteMeasure<Rational>& measure, const VerifyConfig& cfg) {
  return Suite(measure, cfg).run();
}

}  // namespace lsopkit
