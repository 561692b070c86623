#include "lsopkit/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace lsopkit {

Json scalar_json(double x) { return Json(x); }
Json scalar_json(const Rational& x) { return Json(format_rational(x)); }
Json scalar_json(const Rational& x, Mode mode) {
  return mode == Mode::Double ? scalar_json(x.get_d()) : scalar_json(x);
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return exact_rational(j.get<double>());
  throw Error(ErrorKind::Format, "expected a number, got " + j.dump());
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  return rational_from_json(j).get_d();
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Format, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::vector<double> double_list(const Json& j, const char* key) {
  const Json& arr = field(j, key);
  if (!arr.is_array()) throw Error(ErrorKind::Format, std::string("'") + key + "' must be a list");
  std::vector<double> out;
  for (const auto& x : arr) out.push_back(double_from_json(x));
  return out;
}

}  // namespace

Json measure_json(const MeasureFile& f) {
  Json j;
  j["kind"] = "measure";
  j["mode"] = to_string(f.mode);
  j["nodes"] = Json::array();
  j["weights"] = Json::array();
  for (const auto& z : f.measure.nodes) j["nodes"].push_back(scalar_json(z, f.mode));
  for (const auto& w : f.measure.weights) j["weights"].push_back(scalar_json(w, f.mode));
  if (!f.metadata.empty()) j["metadata"] = f.metadata;
  return j;
}

MeasureFile measure_from_json(const Json& j) {
  MeasureFile f;
  if (j.contains("mode")) f.mode = parse_mode(j.at("mode").get<std::string>());
  const Json& nodes = field(j, "nodes");
  const Json& weights = field(j, "weights");
  if (!nodes.is_array() || !weights.is_array()) {
    throw Error(ErrorKind::Format, "measure nodes and weights must be lists");
  }
  for (const auto& x : nodes) f.measure.nodes.push_back(rational_from_json(x));
  for (const auto& x : weights) f.measure.weights.push_back(rational_from_json(x));
  if (f.measure.nodes.size() != f.measure.weights.size()) {
    throw Error(ErrorKind::Format, "measure nodes and weights differ in length");
  }
  if (f.measure.nodes.empty()) throw Error(ErrorKind::Format, "measure has no nodes");
  f.measure = round_to_mode(f.measure, f.mode);
  if (j.contains("metadata")) f.metadata = j.at("metadata");
  return f;
}

Json matrix_json(const MatrixD& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) j["data"].push_back(m(i, k));
  return j;
}

MatrixD matrix_from_json(const Json& j) {
  const auto rows = field(j, "rows").get<std::size_t>();
  const auto cols = field(j, "cols").get<std::size_t>();
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw Error(ErrorKind::Format, "matrix data length does not match rows*cols");
  }
  MatrixD m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = double_from_json(data[i * cols + k]);
  return m;
}

Json butterfly_json(const ButterflyParams& bp) {
  Json j;
  j["a"] = bp.a;
  j["b"] = bp.b;
  j["c"] = bp.c;
  j["d"] = bp.d;
  return j;
}

ButterflyParams butterfly_from_json(const Json& j) {
  ButterflyParams bp{double_list(j, "a"), double_list(j, "b"), double_list(j, "c"),
                     double_list(j, "d")};
  bp.validate();
  return bp;
}

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Format, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, "'" + path + "': " + e.what());
  }
}

void write_json(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Format, "cannot write '" + path + "'");
  out << text;
}

}  // namespace lsopkit
