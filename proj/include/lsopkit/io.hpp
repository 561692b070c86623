#pragma once

// Structured-text (JSON) files: measures, matrices, butterfly parameters,
// polynomials.

#include <string>

#include "json.hpp"
#include "lsopkit/laurent_poly.hpp"
#include "lsopkit/model.hpp"
#include "lsopkit/numerics.hpp"
#include "lsopkit/symplectic_spectra.hpp"

namespace lsopkit {

using Json = nlohmann::ordered_json;

/// Doubles as JSON numbers (shortest round trip), rationals as "p/q" text.
Json scalar_json(double x);
Json scalar_json(const Rational& x);
Json scalar_json(const Rational& x, Mode mode);

/// Accepts a JSON number (taken exactly) or a decimal/"p/q" string.
Rational rational_from_json(const Json& j);
double double_from_json(const Json& j);

struct MeasureFile {
  Mode mode = Mode::Double;
  DiscreteMeasure<Rational> measure;
  Json metadata = Json::object();
};

Json measure_json(const MeasureFile& f);
MeasureFile measure_from_json(const Json& j);

Json matrix_json(const MatrixD& m);
MatrixD matrix_from_json(const Json& j);

Json butterfly_json(const ButterflyParams& bp);
ButterflyParams butterfly_from_json(const Json& j);

template <class T>
Json poly_json(const LaurentPoly<T>& p, Mode mode) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    if constexpr (is_exact_v<T>)
      out.push_back(Json::array({e, scalar_json(c, mode)}));
    else
      out.push_back(Json::array({e, scalar_json(c)}));
  }
  return out;
}

Json complex_json(const Complex& z);

Json read_json_file(const std::string& path);
/// Writes `j` (2-space indent, trailing newline) to `path`, or stdout for "" / "-".
void write_json(const Json& j, const std::string& path);

}  // namespace lsopkit
