#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <functional>
#include <optional>
#include <fstream>
#include <sstream>

#include "gqm/error.hpp"
#include "gqm/io.hpp"
#include "gqm/reports.hpp"

using namespace gqm;
using io::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return std::string(GQM_GOLDEN_DIR) + "/" + name; }

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("groupoid JSON round-trip") {
  for (const auto& g : {pair_groupoid(3), cyclic_group(4), direct_product(pair_groupoid(2), cyclic_group(2))}) {
    const json j = io::groupoid_to_json(g);
    const auto back = io::groupoid_from_json(io::parse(j.dump(), "mem"), "mem");
    CHECK(back.tables().compose == g.tables().compose);
    CHECK(back.tables().inverse == g.tables().inverse);
    CHECK(io::groupoid_to_json(back) == j);
  }
}

TEST_CASE("groupoid JSON errors") {
  json j = io::groupoid_to_json(pair_groupoid(2));
  CHECK(code_of([] { io::parse("{", "x"); }) == ErrorCode::Schema);
  json broken = j;
  broken.erase("compose");
  CHECK(code_of([&] { io::groupoid_from_json(broken, "x"); }) == ErrorCode::Schema);
  json wrong = j;
  wrong["compose"][0][2] = 3;
  CHECK(code_of([&] { io::groupoid_from_json(wrong, "x"); }) == ErrorCode::Schema);
  CHECK_FALSE(validate(io::groupoid_tables_from_json(wrong, "x")).ok());
  json dup = j;
  dup["compose"].push_back(dup["compose"][0]);
  CHECK(code_of([&] { io::groupoid_from_json(dup, "x"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::read_file("/nonexistent/file.json"); }) == ErrorCode::Io);
}

TEST_CASE("measures from JSON") {
  const auto g = pair_groupoid(2);
  const json j = io::parse(R"({"morphism_weights": [1, "1/2", 2, 1], "object_weights": [1, 2]})", "m");
  const auto exact = io::exact_measure_from_json(g, j, "m");
  CHECK(exact.weight(MorphismId(1)) == Rational(1, 2));
  CHECK(exact.object_weight(ObjectId(1)) == Rational(2));

  const json plain = io::parse(R"({"morphism_weights": [1, 0.25, 4, 1]})", "m");
  const auto m = io::measure_from_json(g, plain, "m");
  CHECK(m.object_weight(ObjectId(1)) == 1.0);
  CHECK(io::exact_measure_from_json(g, plain, "m").weight(MorphismId(1)) == Rational(1, 4));
  CHECK(io::measure_from_json(g, j, "m").weight(MorphismId(1)) == doctest::Approx(exact.weight(MorphismId(1)).convert_to<double>()));

  CHECK(code_of([&] { io::measure_from_json(g, io::parse(R"({"morphism_weights": [1, 2]})", "m"), "m"); }) ==
        ErrorCode::Schema);
  CHECK(code_of([&] { io::measure_from_json(g, io::parse(R"({"morphism_weights": [1, 0, 1, 1]})", "m"), "m"); }) ==
        ErrorCode::Schema);
  CHECK(code_of([&] { io::exact_measure_from_json(g, io::parse(R"({"morphism_weights": [1, "x", 1, 1]})", "m"), "m"); }) ==
        ErrorCode::Schema);
}

TEST_CASE("functions, Kraus families and channels round-trip") {
  AlgebraElement f(4);
  f.values = {{1.0, 0.0}, {0.0, -0.5}, {0.125, 3.0}, {-2.0, 0.0}};
  CHECK(io::function_from_json(io::function_to_json(f), "f") == f);
  CHECK(io::function_from_json(io::parse(R"({"values": [1, [0, 1]]})", "f"), "f").values[1] == Complex(0.0, 1.0));
  CHECK(code_of([] { io::function_from_json(io::parse(R"({"values": [[1]]})", "f"), "f"); }) == ErrorCode::Schema);

  const auto ks = fourier_family(3);
  const auto back = io::kraus_from_json(io::parse(io::kraus_to_json(ks).dump(), "k"), "k");
  CHECK(back.n == 3);
  REQUIRE(back.members.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.members[i] == ks.members[i]);
  CHECK(code_of([] { io::kraus_from_json(io::parse(R"({"n": 2, "members": [{"values": [1]}]})", "k"), "k"); }) ==
        ErrorCode::Schema);

  const auto ch = from_kraus(ks);
  CHECK(io::channel_from_json(io::parse(io::channel_to_json(ch).dump(), "c"), "c").kernel == ch.kernel);
  CHECK(code_of([] { io::channel_from_json(io::parse(R"({"n": 2, "values": [1, 2]})", "c"), "c"); }) == ErrorCode::Schema);
}

TEST_CASE("state shorthand") {
  CHECK(io::parse_state(3, "units") == unit_element(pair_groupoid(3)));
  CHECK(io::parse_state(3, "delta:1,2") == delta(pair_groupoid(3), pair_morphism(3, 1, 2)));
  CHECK(code_of([] { io::parse_state(3, "delta:1"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::parse_state(3, "delta:3,0"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::parse_state(3, "delta:1,2x"); }) == ErrorCode::Schema);

  const auto path = (std::filesystem::temp_directory_path() / "gqm_state_test.json").string();
  io::write_file(path, R"({"values": [1, 0, 0, 0]})");
  CHECK(io::parse_state(2, path) == delta(pair_groupoid(2), pair_morphism(2, 0, 0)));
  CHECK(code_of([&] { io::parse_state(3, path); }) == ErrorCode::DimensionMismatch);
  std::filesystem::remove(path);
}

TEST_CASE("matrix exports") {
  CMatrix m(1, 3);
  m(0, 0) = {1.5, -2.0};
  m(0, 1) = {-0.0, -0.0};
  m(0, 2) = {0.0, 0.25};
  CHECK(io::matrix_to_csv(m) == "1.5-2.0j,0.0+0.0j,0.0+0.25j\n");
  const json j = io::matrix_to_json(m);
  CHECK(j["rows"] == 1);
  CHECK(j["cols"] == 3);
  CHECK(j["entries"][0][0] == json::array({1.5, -2.0}));
}

TEST_CASE("golden: canonical quotient order") {
  QuotientSymmetroid q(2);
  json listed = json::array();
  for (const auto& c : q.enumerate()) listed.push_back(io::quotient_to_json(c));
  CHECK(listed == io::read_file(golden("quotient_n2.json")));
  CHECK(reports::enumerate_report(2)["classes"] == listed);
}

TEST_CASE("golden: matrix exports") {
  CHECK(io::matrix_to_csv(to_choi(transpose_channel(2))) == slurp(golden("transpose_choi_n2.csv")));
  QuotientSymmetroid q(2);
  const auto swap = from_flat_bisection(q, flat_bisection(q, {1, 0}));
  CHECK(io::matrix_to_json(to_a_matrix(swap)) == io::read_file(golden("swap_bisection_a_n2.json")));
}
