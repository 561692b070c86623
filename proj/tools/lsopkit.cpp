// lsopkit command-line front end.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>

#include "lsopkit/io.hpp"
#include "lsopkit/lsolp_basis.hpp"
#include "lsopkit/lsop_engine.hpp"
#include "lsopkit/model.hpp"
#include "lsopkit/symplectic_spectra.hpp"
#include "lsopkit/verify.hpp"

using namespace lsopkit;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  int order = 4;
  std::string mode = "double";
  std::vector<std::string> tol;
  std::vector<std::string> claims;
  std::string out;
  std::string measure_file;
  double min_gap = 0.1;
  std::uint64_t gauge_seed = 0;
  std::string bp_file;
};

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFlagged = 2;

Mode config_mode(const RunConfig& cfg) { return parse_mode(cfg.mode); }

Json tau_json(const std::vector<Rational>& tau, Mode mode) {
  Json out = Json::array();
  for (const auto& t : tau) out.push_back(scalar_json(t, mode));
  return out;
}

MeasureFile generated(const RunConfig& cfg) {
  GeneratorOptions opt;
  opt.seed = cfg.seed;
  opt.order = cfg.order;
  opt.mode = config_mode(cfg);
  opt.min_gap = cfg.min_gap;
  const GeneratedMeasure g = generate_measure(opt);
  MeasureFile f;
  f.mode = opt.mode;
  f.measure = g.measure;
  f.metadata["seed"] = cfg.seed;
  f.metadata["order"] = cfg.order;
  f.metadata["min_gap"] = cfg.min_gap;
  f.metadata["attempts"] = g.attempts;
  f.metadata["tau"] = tau_json(g.tau, opt.mode);
  return f;
}

/// Measure from --measure, or generated from the seed.
MeasureFile load_measure(const RunConfig& cfg) {
  if (!cfg.measure_file.empty()) return measure_from_json(read_json_file(cfg.measure_file));
  return generated(cfg);
}

template <class T>
Json values_json(const std::vector<T>& v, Mode mode) {
  Json out = Json::array();
  for (const auto& x : v) {
    if constexpr (is_exact_v<T>)
      out.push_back(scalar_json(x, mode));
    else
      out.push_back(scalar_json(x));
  }
  return out;
}

Json spectrum_json(const std::vector<Complex>& zs) {
  Json out = Json::array();
  for (const Complex& z : zs) out.push_back(complex_json(z));
  return out;
}

int cmd_gen_measure(const RunConfig& cfg) {
  write_json(measure_json(generated(cfg)), cfg.out);
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  const MeasureFile f = load_measure(cfg);
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.mode = f.mode;
  for (const auto& t : cfg.tol) vc.tol.apply(t);
  vc.only = cfg.claims;
  const VerificationReport rep = run_verification(f.measure, vc);
  write_json(rep.to_json(), cfg.out);
  return rep.all_pass() ? kExitPass : kExitFlagged;
}

int cmd_lsop(const RunConfig& cfg) {
  const MeasureFile f = load_measure(cfg);
  const ExactModel em = build_exact_model(f.measure);
  Json j;
  j["kind"] = "lsop";
  j["mode"] = to_string(f.mode);
  j["order"] = em.order;
  j["alpha"] = values_json(em.rec.alpha, f.mode);
  j["beta"] = values_json(em.rec.beta, f.mode);
  j["tau"] = values_json(em.rec.tau, f.mode);
  j["sigma"] = values_json(em.rec.sigma, f.mode);
  j["q"] = Json::array();
  for (const auto& q : em.q) j["q"].push_back(poly_json(q, f.mode));
  j["scale_squared"] = values_json(em.scale_sq, f.mode);
  write_json(j, cfg.out);
  return kExitPass;
}

int cmd_pencil(const RunConfig& cfg) {
  Tolerances tol;
  for (const auto& t : cfg.tol) tol.apply(t);
  const MeasureFile f = load_measure(cfg);
  const ExactModel em = build_exact_model(f.measure);
  const auto rec = em.rec.cast<double>();
  const PencilDiagnosis d = diagnose_pencil(rec, lsop_support_table(em), tol.get("pencil_residual"));
  const SymplecticCheck s = symplectic_pencil_check(d.validated);
  Json j;
  j["kind"] = "pencil";
  j["layout"] = d.standard_ok ? "standard" : "rearranged";
  j["u"] = matrix_json(d.validated.u);
  j["v"] = matrix_json(d.validated.v);
  j["residual"] = {{"standard", d.standard_residual}, {"rearranged", d.rearranged_residual}};
  j["symplectic"] = {{"pencil_relative", s.pencil_relative}, {"transfer_relative", s.transfer_relative}};
  j["eigenvalues"] = spectrum_json(pencil_eigs(d.validated));
  write_json(j, cfg.out);
  return kExitPass;
}

int cmd_butterfly(const RunConfig& cfg) {
  const MeasureFile f = load_measure(cfg);
  const ExactModel em = build_exact_model(f.measure);
  const auto rec = em.rec.cast<double>();
  GaugeParams<double> g = GaugeParams<double>::trivial(static_cast<std::size_t>(em.order));
  if (cfg.gauge_seed != 0) {
    std::mt19937_64 rng(cfg.gauge_seed);
    std::uniform_real_distribution<double> mag(0.5, 2.0), shift(-1.0, 1.0);
    for (std::size_t i = 0; i < g.r.size(); ++i) {
      g.r[i] = (rng() & 1u) ? mag(rng) : -mag(rng);
      g.lambda[i] = shift(rng);
    }
  }
  const ButterflyConvention conv{};
  const ButterflyParams bp = butterfly_params(rec, g, conv);
  const MatrixD b = butterfly_from_params(bp);
  const auto mm = multiplication_matrix(gauge_support(lsolp_support_table(em), g), kRepresentationTol);
  Json j;
  j["kind"] = "butterfly";
  j["convention"] = conv.name();
  j["gauge"] = {{"r", values_json(g.r, Mode::Double)}, {"lambda", values_json(g.lambda, Mode::Double)}};
  j["params"] = butterfly_json(bp);
  j["matrix"] = matrix_json(b);
  j["multiplication_matrix_diff"] = max_abs_diff(b, mm.a);
  j["eigenvalues"] = spectrum_json(dense_eigs(b));
  write_json(j, cfg.out);
  return kExitPass;
}

int cmd_solve_butterfly(const RunConfig& cfg) {
  const ButterflyParams bp = butterfly_from_json(read_json_file(cfg.bp_file));
  bp.validate();
  const auto lambdas = sym_tridiag_eigs(butterfly_to_tridiagonal(bp));
  std::vector<Complex> via;
  Json pairs = Json::array();
  double modulus = 0.0;
  for (auto [z, zi] : eig_correspondence(lambdas)) {
    via.push_back(z);
    via.push_back(zi);
    pairs.push_back(Json::array({complex_json(z), complex_json(zi)}));
    if (z.imag() != 0.0) modulus = std::max({modulus, std::fabs(std::abs(z) - 1.0), std::fabs(std::abs(zi) - 1.0)});
  }
  const auto dense = dense_eigs(butterfly_from_params(bp));
  Json j;
  j["kind"] = "butterfly_spectrum";
  j["lambda"] = values_json(lambdas, Mode::Double);
  j["pairs"] = pairs;
  j["dense_eigenvalues"] = spectrum_json(dense);
  j["max_mismatch"] = matched_distance(via, dense);
  j["unit_modulus_defect"] = modulus;
  write_json(j, cfg.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laurent skew orthogonal polynomials: construction, pencils, butterfly spectra"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  if (const char* env = std::getenv("LSOPKIT_MODE")) cfg.mode = env;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
    sub->add_option("--order", cfg.order, "number of nodes N")->check(CLI::Range(1, 64))->capture_default_str();
    sub->add_option("--mode", cfg.mode, "scalar backend (default from LSOPKIT_MODE)")
        ->check(CLI::IsMember({"double", "rational"}))
        ->capture_default_str();
    sub->add_option("--tol", cfg.tol, "tolerance override name=value (repeatable)");
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
    sub->add_option("--min-gap", cfg.min_gap, "smallest node spacing for generated measures")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };
  auto add_measure = [&](CLI::App* sub) {
    sub->add_option("--measure", cfg.measure_file, "measure file (generated from --seed when omitted)")
        ->check(CLI::ExistingFile);
  };

  std::function<int()> action;
  auto* gen = app.add_subcommand("gen-measure", "write a seeded admissible measure");
  add_common(gen);
  gen->callback([&] { action = [&] { return cmd_gen_measure(cfg); }; });

  auto* ver = app.add_subcommand("verify", "run the verification suite and emit a report");
  add_common(ver);
  add_measure(ver);
  ver->add_option("--claim", cfg.claims, "run only this claim (repeatable)");
  ver->callback([&] { action = [&] { return cmd_verify(cfg); }; });

  auto* lsop = app.add_subcommand("lsop", "recurrence coefficients and monic LSOPs");
  add_common(lsop);
  add_measure(lsop);
  lsop->callback([&] { action = [&] { return cmd_lsop(cfg); }; });

  auto* pen = app.add_subcommand("pencil", "symplectic pencil, residuals and eigenvalues");
  add_common(pen);
  add_measure(pen);
  pen->callback([&] { action = [&] { return cmd_pencil(cfg); }; });

  auto* bfly = app.add_subcommand("butterfly", "butterfly parameters, matrix and spectrum");
  add_common(bfly);
  add_measure(bfly);
  bfly->add_option("--gauge-seed", cfg.gauge_seed, "random gauge seed (0 for the trivial gauge)");
  bfly->callback([&] { action = [&] { return cmd_butterfly(cfg); }; });

  auto* solve = app.add_subcommand("solve-butterfly", "butterfly spectrum through the tridiagonal reduction");
  add_common(solve);
  solve->add_option("params", cfg.bp_file, "butterfly parameter file")->required()->check(CLI::ExistingFile);
  solve->callback([&] { action = [&] { return cmd_solve_butterfly(cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    const bool refused = e.kind() == ErrorKind::Hypothesis || e.kind() == ErrorKind::Refused;
    std::cerr << "lsopkit: " << (refused ? "refused: " : "") << e.what() << "\n";
    return e.kind() == ErrorKind::Format || e.kind() == ErrorKind::Dimension ? kExitUsage : kExitFlagged;
  } catch (const std::exception& e) {
    std::cerr << "lsopkit: " << e.what() << "\n";
    return kExitUsage;
  }
}
