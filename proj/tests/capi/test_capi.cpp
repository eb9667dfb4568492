// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gqm/gqm.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gqm_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(gqm_version()).size() > 0);
  CHECK(std::string(gqm_status_name(GQM_OK)) == "ok");
  CHECK(std::string(gqm_status_name(GQM_ERR_NOT_HAAR)) == "not-haar");
  gqm_string_free(nullptr);
}

TEST_CASE("pair groupoid handle") {
  gqm_groupoid* g = nullptr;
  REQUIRE(gqm_groupoid_pair(3, &g) == GQM_OK);
  CHECK(gqm_groupoid_n_objects(g) == 3);
  CHECK(gqm_groupoid_n_morphisms(g) == 9);
  int ok = 0;
  char* report = nullptr;
  REQUIRE(gqm_groupoid_validate(g, &ok, &report) == GQM_OK);
  CHECK(ok == 1);
  CHECK(json::parse(take(report))["connected"] == true);

  char* text = nullptr;
  REQUIRE(gqm_groupoid_to_json(g, &text) == GQM_OK);
  const std::string t = take(text);
  gqm_groupoid* h = nullptr;
  REQUIRE(gqm_groupoid_from_json(t.c_str(), "roundtrip", 1, &h) == GQM_OK);
  CHECK(gqm_groupoid_n_morphisms(h) == 9);
  gqm_groupoid_free(h);
  gqm_groupoid_free(g);
  gqm_groupoid_free(nullptr);
}

TEST_CASE("errors are reported, not thrown") {
  gqm_groupoid* g = nullptr;
  CHECK(gqm_groupoid_pair(0, &g) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(g == nullptr);
  CHECK(std::string(gqm_last_error()).size() > 0);
  CHECK(gqm_groupoid_pair(2, nullptr) == GQM_ERR_NULL_ARGUMENT);
  CHECK(gqm_groupoid_from_json("{not json", "inline", 1, &g) == GQM_ERR_SCHEMA);
  CHECK(gqm_groupoid_load("/nonexistent/file.json", 1, &g) == GQM_ERR_IO);

  const std::uint32_t bad[] = {0, 0};
  gqm_channel* c = nullptr;
  CHECK(gqm_channel_from_permutation(bad, 2, &c) == GQM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("convolution through JSON") {
  gqm_groupoid* g = nullptr;
  REQUIRE(gqm_groupoid_pair(2, &g) == GQM_OK);
  // delta_(0,1) * delta_(1,0) = delta_(0,0)
  const char* f = R"({"values": [0, 1, 0, 0]})";
  const char* h = R"({"values": [0, 0, 1, 0]})";
  char* out = nullptr;
  REQUIRE(gqm_algebra_convolve(g, f, h, nullptr, &out) == GQM_OK);
  const json r = json::parse(take(out));
  CHECK(r["values"][0][0] == 1.0);
  CHECK(r["values"][3][0] == 0.0);

  CHECK(gqm_algebra_convolve(g, f, R"({"values": [1]})", nullptr, &out) == GQM_ERR_DIMENSION_MISMATCH);

  int ok = 0;
  char* report = nullptr;
  REQUIRE(gqm_measure_check(g, R"({"morphism_weights": ["1", "2", "1/2", "1"], "object_weights": ["1", "1/2"]})",
                            "inline", 1, &ok, &report) == GQM_OK);
  CHECK(ok == 1);
  take(report);
  // inverse relation broken: a failing report, not an error
  REQUIRE(gqm_measure_check(g, R"({"morphism_weights": ["1", "3", "1/2", "1"]})", "inline", 1, &ok, &report) == GQM_OK);
  CHECK(ok == 0);
  CHECK(json::parse(take(report))["verdict"] == "fail");
  CHECK(gqm_measure_check(g, R"({"morphism_weights": [1, 2]})", "inline", 1, &ok, &report) == GQM_ERR_SCHEMA);
  gqm_groupoid_free(g);
}

TEST_CASE("transpose is positive but not CP") {
  gqm_channel* t = nullptr;
  REQUIRE(gqm_channel_transpose(2, &t) == GQM_OK);
  CHECK(gqm_channel_dimension(t) == 2);
  int cp = -1;
  double min_eig = 0.0;
  REQUIRE(gqm_channel_is_cp(t, -1.0, &cp, &min_eig) == GQM_OK);
  CHECK(cp == 0);
  CHECK(min_eig == doctest::Approx(-1.0).epsilon(1e-10));

  gqm_check_options opts{};
  opts.falsify_trials = 20;
  opts.seed = 11;
  opts.ancilla = 2;
  opts.tol = -1.0;
  int ok = 1;
  char* report = nullptr;
  REQUIRE(gqm_channel_check(t, &opts, &ok, &report) == GQM_OK);
  CHECK(ok == 0);
  CHECK(json::parse(take(report))["positivity_falsifier"]["result"] == "witness");
  gqm_channel_free(t);
}

TEST_CASE("apply a permutation channel to raw buffers") {
  const std::uint32_t sigma[] = {1, 2, 0};
  gqm_channel* c = nullptr;
  REQUIRE(gqm_channel_from_permutation(sigma, 3, &c) == GQM_OK);
  std::vector<double> in(18, 0.0), out(18, -1.0);
  in[2 * (0 * 3 + 1)] = 1.0;  // delta_(0,1)
  REQUIRE(gqm_channel_apply_values(c, in.data(), in.size(), out.data(), out.size()) == GQM_OK);
  double total = 0.0;
  for (double x : out) total += std::abs(x);
  CHECK(total == doctest::Approx(1.0));
  CHECK(out[2 * (sigma[0] * 3 + sigma[1])] == doctest::Approx(1.0));
  CHECK(gqm_channel_apply_values(c, in.data(), 8, out.data(), out.size()) == GQM_ERR_DIMENSION_MISMATCH);

  char* csv = nullptr;
  REQUIRE(gqm_channel_export(c, GQM_MATRIX_CHOI, GQM_FORMAT_CSV, &csv) == GQM_OK);
  const std::string s = take(csv);
  CHECK(std::count(s.begin(), s.end(), '\n') == 9);
  gqm_channel_free(c);
}

TEST_CASE("fourier example through the library") {
  int ok = 0;
  char* report = nullptr;
  REQUIRE(gqm_example_fourier(3, "delta:0,0", &ok, &report) == GQM_OK);
  CHECK(ok == 1);
  const json r = json::parse(take(report));
  for (int i = 0; i < 9; ++i) {
    const double want = (i % 4 == 0) ? 1.0 / 3.0 : 0.0;
    CHECK(r["output"]["values"][i][0].get<double>() == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(gqm_example_fourier(3, "delta:3,0", &ok, &report) == GQM_ERR_SCHEMA);
}
