#pragma once

// Seeded measure generation and the exact model every pipeline starts from.
// Double-mode nodes are binary fractions, so the model is always exact and
// double-mode results are rounded from it once.

#include <cstdint>
#include <string>
#include <vector>

#include "lsopkit/lsop_engine.hpp"
#include "lsopkit/moments.hpp"

namespace lsopkit {

enum class Mode { Double, Rational };

const char* to_string(Mode m);
Mode parse_mode(const std::string& text);

struct GeneratorOptions {
  std::uint64_t seed = 1;
  int order = 4;
  Mode mode = Mode::Double;
  double min_gap = 0.0;  ///< smallest allowed distance between nodes
  int max_attempts = 100;
};

struct GeneratedMeasure {
  DiscreteMeasure<Rational> measure;
  std::vector<Rational> tau;  ///< tau_0..tau_N
  int attempts = 0;
};

/// Rejects when beta_n/W^2 <= 1e-8 for some n < N, W = max |z + 1/z|.
inline constexpr double kAdmissibilityFloor = 1e-8;

/// Empty string when admissible, otherwise the reason.
std::string admissibility_problem(const DiscreteMeasure<Rational>& m,
                                  const RecurrenceData<Rational>& rec, double min_gap);

GeneratedMeasure generate_measure(const GeneratorOptions& opt);

struct ExactModel {
  int order = 0;
  DiscreteMeasure<Rational> measure;
  MomentTable<Rational> moments;
  RecurrenceData<Rational> rec;
  std::vector<LaurentPoly<Rational>> q;  ///< monic q_0..q_{2N}
  std::vector<Rational> scale_sq;        ///< tau_n/tau_{n+1}, n < N; empty unless all tau_n > 0
};

/// Order is the number of nodes.
ExactModel build_exact_model(const DiscreteMeasure<Rational>& m);

/// Measure rounded to the given mode: double mode rounds every value to the
/// nearest double, rational mode keeps it.
DiscreteMeasure<Rational> round_to_mode(const DiscreteMeasure<Rational>& m, Mode mode);

}  // namespace lsopkit
