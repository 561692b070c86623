#include "lsopkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lsopkit {

const char* to_string(Mode m) { return m == Mode::Double ? "double" : "rational"; }

Mode parse_mode(const std::string& text) {
  if (text == "double") return Mode::Double;
  if (text == "rational") return Mode::Rational;
  throw Error(ErrorKind::Format, "unknown mode '" + text + "' (expected double or rational)");
}

namespace {

// uniform on [0,1) from the top 53 bits; identical on every platform
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string admissibility_problem(const DiscreteMeasure<Rational>& m,
                                  const RecurrenceData<Rational>& rec, double min_gap) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::fabs(to_double(m.nodes[i]) - to_double(m.nodes[j])) < min_gap)
        return "nodes " + std::to_string(j) + "," + std::to_string(i) + " closer than " +
               format_double(min_gap);
  for (std::size_t k = 0; k <= n; ++k)
    if (!(rec.tau[k] > 0)) return "tau_" + std::to_string(k) + " is not positive";
  double w_max = 0.0;
  for (const Rational& z : m.nodes) w_max = std::max(w_max, std::fabs(to_double(Rational(z + 1 / z))));
  for (std::size_t k = 1; k < n; ++k) {
    const double rel = to_double(rec.beta[k]) / (w_max * w_max);
    if (!(rel > kAdmissibilityFloor))
      return "beta_" + std::to_string(k) + "/W^2 = " + format_double(rel) + " below floor";
  }
  return {};
}

GeneratedMeasure generate_measure(const GeneratorOptions& opt) {
  if (opt.order < 1) throw Error(ErrorKind::Dimension, "generator order must be >= 1");
  std::mt19937_64 rng(opt.seed);
  std::string last_reason;
  for (int attempt = 1; attempt <= opt.max_attempts; ++attempt) {
    DiscreteMeasure<Rational> m;
    for (int k = 0; k < opt.order; ++k) {
      const double z = 1.2 + 3.8 * unit(rng);
      const double w = 1.0 - unit(rng);  // (0, 1]
      if (opt.mode == Mode::Rational) {
        m.nodes.push_back(make_rational(std::lround(z * 1000.0), 1000));
        m.weights.push_back(make_rational(std::max(1L, std::lround(w * 1000.0)), 1000));
      } else {
        m.nodes.push_back(exact_rational(z));
        m.weights.push_back(exact_rational(w));
      }
    }
    // sort by node, carrying weights along
    std::vector<std::size_t> perm(m.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&m](std::size_t a, std::size_t b) { return m.nodes[a] < m.nodes[b]; });
    DiscreteMeasure<Rational> sorted;
    for (std::size_t i : perm) {
      sorted.nodes.push_back(m.nodes[i]);
      sorted.weights.push_back(m.weights[i]);
    }
    try {
      sorted.validate_canonical();
      auto rec = recurrence_via_stieltjes(sorted);
      last_reason = admissibility_problem(sorted, rec, opt.min_gap);
      if (last_reason.empty()) {
        GeneratedMeasure out;
        out.measure = std::move(sorted);
        out.tau.assign(rec.tau.begin(), rec.tau.begin() + opt.order + 1);
        out.attempts = attempt;
        return out;
      }
    } catch (const Error& e) {
      last_reason = e.what();
    }
  }
  throw Error(ErrorKind::Admissibility, "no admissible measure after " +
                                            std::to_string(opt.max_attempts) +
                                            " attempts; last rejection: " + last_reason);
}

ExactModel build_exact_model(const DiscreteMeasure<Rational>& m) {
  m.validate_canonical();
  ExactModel out;
  out.order = static_cast<int>(m.size());
  out.measure = m;
  out.moments = make_moment_table(m, out.order);
  out.rec = recurrence_via_stieltjes(m);
  out.q = lsop_via_recurrence(out.rec, out.order);
  // indefinite weights still give an exact algebraic model; orthonormal
  // scaling needs every tau_n > 0
  const bool definite =
      std::all_of(out.rec.tau.begin(), out.rec.tau.begin() + out.order + 1, [](const Rational& t) { return t > 0; });
  if (definite) out.scale_sq = orthonormal_scale_squares(out.rec);
  return out;
}

DiscreteMeasure<Rational> round_to_mode(const DiscreteMeasure<Rational>& m, Mode mode) {
  if (mode == Mode::Rational) return m;
  DiscreteMeasure<Rational> out;
  for (const Rational& z : m.nodes) out.nodes.push_back(exact_rational(z.get_d()));
  for (const Rational& w : m.weights) out.weights.push_back(exact_rational(w.get_d()));
  return out;
}

}  // namespace lsopkit
