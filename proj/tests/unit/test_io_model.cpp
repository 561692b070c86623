#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lsopkit/io.hpp"
#include "lsopkit/model.hpp"

using namespace lsopkit;

TEST_CASE("generator: seed 1, N=1 gives one node in [1.2,5] and one weight in (0,1]") {
  GeneratorOptions opt;
  opt.seed = 1;
  opt.order = 1;
  const auto g = generate_measure(opt);
  REQUIRE(g.measure.size() == 1);
  const double z = g.measure.nodes[0].get_d(), w = g.measure.weights[0].get_d();
  CHECK(z >= 1.2);
  CHECK(z <= 5.0);
  CHECK(w > 0.0);
  CHECK(w <= 1.0);
}

TEST_CASE("generator: same seed gives byte-identical measure files") {
  for (Mode mode : {Mode::Double, Mode::Rational}) {
    GeneratorOptions opt;
    opt.seed = 9;
    opt.order = 5;
    opt.mode = mode;
    opt.min_gap = 0.1;
    const auto a = generate_measure(opt), b = generate_measure(opt);
    MeasureFile fa{mode, a.measure, {}}, fb{mode, b.measure, {}};
    CHECK(measure_json(fa).dump(2) == measure_json(fb).dump(2));
  }
}

TEST_CASE("generator: rational N=8 has tau_1..tau_8 positive and respects the gap") {
  GeneratorOptions opt;
  opt.seed = 4;
  opt.order = 8;
  opt.mode = Mode::Rational;
  opt.min_gap = 0.1;
  const auto g = generate_measure(opt);
  REQUIRE(g.tau.size() == 9);
  for (std::size_t n = 1; n <= 8; ++n) CHECK(g.tau[n] > 0);
  for (std::size_t i = 1; i < g.measure.size(); ++i)
    CHECK(Rational(g.measure.nodes[i] - g.measure.nodes[i - 1]).get_d() >= 0.1);
  for (const auto& z : g.measure.nodes) CHECK(Rational(z * 1000).get_den() == 1);
}

TEST_CASE("generator: impossible gap fails after the attempt budget") {
  GeneratorOptions opt;
  opt.order = 8;
  opt.min_gap = 1.0;  // eight nodes in [1.2, 5] cannot be 1 apart
  opt.max_attempts = 5;
  CHECK_THROWS_AS(generate_measure(opt), Error);
}

TEST_CASE("model: round_to_mode keeps rationals and rounds doubles") {
  DiscreteMeasure<Rational> m{{make_rational(17, 10)}, {make_rational(1, 3)}};
  CHECK(round_to_mode(m, Mode::Rational).weights[0] == make_rational(1, 3));
  CHECK(round_to_mode(m, Mode::Double).weights[0] == exact_rational(1.0 / 3.0));
}

TEST_CASE("model: indefinite weights keep the algebra but have no orthonormal scale") {
  DiscreteMeasure<Rational> m{{make_rational(3, 2), make_rational(5, 2)}, {1, -1}};
  const ExactModel em = build_exact_model(m);
  CHECK(em.q.size() == 5);
  CHECK(em.scale_sq.empty());
}

TEST_CASE("io: measure files round-trip in both modes") {
  DiscreteMeasure<Rational> m{{make_rational(3, 2), make_rational(11, 4)}, {make_rational(1, 3), 1}};
  MeasureFile rf{Mode::Rational, m, {{"seed", 3}}};
  const Json rj = measure_json(rf);
  CHECK(rj["nodes"][0] == "3/2");
  const MeasureFile rback = measure_from_json(rj);
  CHECK(rback.mode == Mode::Rational);
  CHECK(rback.measure.weights[0] == make_rational(1, 3));

  MeasureFile df{Mode::Double, round_to_mode(m, Mode::Double), {}};
  const Json dj = measure_json(df);
  CHECK(dj["weights"][0].is_number());
  const MeasureFile dback = measure_from_json(Json::parse(dj.dump()));
  CHECK(dback.measure.weights[0] == df.measure.weights[0]);
}

TEST_CASE("io: bad measure files are rejected") {
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"nodes":[2],"weights":[]})")), Error);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"nodes":["x"],"weights":[1]})")), Error);
}

TEST_CASE("io: scalars accept numbers, decimals and fractions") {
  CHECK(rational_from_json(Json("5/2")) == make_rational(5, 2));
  CHECK(rational_from_json(Json("0.25")) == make_rational(1, 4));
  CHECK(rational_from_json(Json(0.5)) == make_rational(1, 2));
  CHECK(double_from_json(Json("1/4")) == 0.25);
}

TEST_CASE("io: butterfly and matrix files round-trip") {
  const auto bp = butterfly_from_json(Json::parse(R"({"a":[1],"b":[0],"c":["5/2"],"d":[]})"));
  CHECK(bp.c[0] == 2.5);
  const auto back = butterfly_from_json(butterfly_json(bp));
  CHECK(back.a == bp.a);
  MatrixD m(2, 3);
  m(1, 2) = -0.75;
  CHECK(max_abs_diff(matrix_from_json(matrix_json(m)), m) == 0.0);
}

TEST_CASE("io: write_json ends with a newline") {
  const std::string path = "lsopkit_io_test.json";
  write_json(Json{{"k", 1}}, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "{\n  \"k\": 1\n}\n");
  std::remove(path.c_str());
}
