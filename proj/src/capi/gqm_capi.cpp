#include "gqm/gqm.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "gqm/error.hpp"
#include "gqm/io.hpp"
#include "gqm/reports.hpp"

struct gqm_groupoid {
  gqm::FiniteGroupoid g;
};

struct gqm_channel {
  gqm::Channel ch;
};

namespace {

using gqm::io::json;

thread_local std::string last_error;

gqm_status status_of(gqm::ErrorCode code) {
  switch (code) {
    case gqm::ErrorCode::InvalidArgument: return GQM_ERR_INVALID_ARGUMENT;
    case gqm::ErrorCode::Schema: return GQM_ERR_SCHEMA;
    case gqm::ErrorCode::NotHaar: return GQM_ERR_NOT_HAAR;
    case gqm::ErrorCode::NotComposable: return GQM_ERR_NOT_COMPOSABLE;
    case gqm::ErrorCode::NotPullback: return GQM_ERR_NOT_PULLBACK;
    case gqm::ErrorCode::TooManyKraus: return GQM_ERR_TOO_MANY_KRAUS;
    case gqm::ErrorCode::DimensionMismatch: return GQM_ERR_DIMENSION_MISMATCH;
    case gqm::ErrorCode::Normalization: return GQM_ERR_NORMALIZATION;
    case gqm::ErrorCode::Io: return GQM_ERR_IO;
  }
  return GQM_ERR_INTERNAL;
}

struct NullArgument {
  const char* name;
};

template <class T>
T* need(T* p, const char* name) {
  if (!p) throw NullArgument{name};
  return p;
}

template <class F>
gqm_status guarded(F&& body) {
  try {
    body();
    return GQM_OK;
  } catch (const gqm::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const NullArgument& e) {
    last_error = std::string(e.name) + " must not be NULL";
    return GQM_ERR_NULL_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GQM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GQM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GQM_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out) *out = dup(j.dump(2));
}

void emit_report(const json& report, int* ok, char** out) {
  if (ok) *ok = report.value("verdict", "fail") == "pass";
  emit(out, report);
}

std::string origin_or(const char* origin, const char* fallback) { return origin ? origin : fallback; }

gqm::AlgebraElement function_arg(const gqm::FiniteGroupoid& g, const char* text, const char* name) {
  const auto f = gqm::io::function_from_json(gqm::io::parse(need(text, name), name), name);
  if (f.size() != g.n_morphisms())
    throw gqm::Error(gqm::ErrorCode::DimensionMismatch, std::string(name) + " has " + std::to_string(f.size()) +
                                                            " values, expected " + std::to_string(g.n_morphisms()));
  return f;
}

gqm::GroupoidMeasure measure_arg(const gqm::FiniteGroupoid& g, const char* text) {
  if (!text) return gqm::counting_measure(g);
  return gqm::io::measure_from_json(g, gqm::io::parse(text, "measure"), "measure");
}

gqm_channel* wrap(gqm::Channel ch) { return new gqm_channel{std::move(ch)}; }

}  // namespace

extern "C" {

const char* gqm_version(void) { return "0.1.0"; }

const char* gqm_status_name(gqm_status status) {
  switch (status) {
    case GQM_OK: return "ok";
    case GQM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case GQM_ERR_SCHEMA: return "schema";
    case GQM_ERR_NOT_HAAR: return "not-haar";
    case GQM_ERR_NOT_COMPOSABLE: return "not-composable";
    case GQM_ERR_NOT_PULLBACK: return "not-pullback";
    case GQM_ERR_TOO_MANY_KRAUS: return "too-many-kraus";
    case GQM_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case GQM_ERR_NORMALIZATION: return "normalization";
    case GQM_ERR_IO: return "io";
    case GQM_ERR_NULL_ARGUMENT: return "null-argument";
    case GQM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* gqm_last_error(void) { return last_error.c_str(); }

void gqm_string_free(char* s) { std::free(s); }

gqm_status gqm_groupoid_pair(uint32_t n, gqm_groupoid** out) {
  return guarded([&] { *need(out, "out") = new gqm_groupoid{gqm::pair_groupoid(n)}; });
}

gqm_status gqm_groupoid_from_json(const char* text, const char* origin, int validate, gqm_groupoid** out) {
  return guarded([&] {
    need(out, "out");
    const std::string where = origin_or(origin, "groupoid");
    const json j = gqm::io::parse(need(text, "text"), where);
    *out = new gqm_groupoid{validate ? gqm::io::groupoid_from_json(j, where) : gqm::io::groupoid_tables_from_json(j, where)};
  });
}

gqm_status gqm_groupoid_load(const char* path, int validate, gqm_groupoid** out) {
  return guarded([&] {
    need(out, "out");
    const json j = gqm::io::read_file(need(path, "path"));
    *out = new gqm_groupoid{validate ? gqm::io::groupoid_from_json(j, path) : gqm::io::groupoid_tables_from_json(j, path)};
  });
}

void gqm_groupoid_free(gqm_groupoid* g) { delete g; }

uint32_t gqm_groupoid_n_objects(const gqm_groupoid* g) { return g ? g->g.n_objects() : 0; }

uint32_t gqm_groupoid_n_morphisms(const gqm_groupoid* g) { return g ? g->g.n_morphisms() : 0; }

gqm_status gqm_groupoid_to_json(const gqm_groupoid* g, char** out) {
  return guarded([&] { emit(need(out, "out"), gqm::io::groupoid_to_json(need(g, "g")->g)); });
}

gqm_status gqm_groupoid_validate(const gqm_groupoid* g, int* ok, char** report) {
  return guarded([&] {
    const auto rep = gqm::validate(need(g, "g")->g);
    json j = gqm::io::validation_to_json(rep);
    j["n_objects"] = g->g.n_objects();
    j["n_morphisms"] = g->g.n_morphisms();
    j["connected"] = gqm::is_connected(g->g);
    emit_report(j, ok, report);
  });
}

gqm_status gqm_measure_check(const gqm_groupoid* g, const char* measure_json, const char* origin, int exact, int* ok,
                             char** report) {
  return guarded([&] {
    const std::string where = origin_or(origin, "measure");
    const json m = gqm::io::parse(need(measure_json, "measure_json"), where);
    emit_report(gqm::reports::measure_report(need(g, "g")->g, m, exact != 0, where), ok, report);
  });
}

gqm_status gqm_algebra_convolve(const gqm_groupoid* g, const char* f_json, const char* h_json, const char* measure_json,
                                char** out) {
  return guarded([&] {
    need(out, "out");
    const auto& gg = need(g, "g")->g;
    const auto f = function_arg(gg, f_json, "f");
    const auto h = function_arg(gg, h_json, "h");
    emit(out, gqm::io::function_to_json(gqm::convolve(gg, f, h, measure_arg(gg, measure_json))));
  });
}

gqm_status gqm_algebra_involute(const gqm_groupoid* g, const char* f_json, const char* measure_json, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto& gg = need(g, "g")->g;
    emit(out, gqm::io::function_to_json(gqm::involute(gg, function_arg(gg, f_json, "f"), measure_arg(gg, measure_json))));
  });
}

gqm_status gqm_algebra_check_positive(const gqm_groupoid* g, const char* phi_json, double tol, int* ok, char** report) {
  return guarded([&] {
    const auto& gg = need(g, "g")->g;
    emit_report(gqm::reports::positive_type_report(gg, function_arg(gg, phi_json, "phi"), tol < 0 ? gqm::kPsdTol : tol), ok,
                report);
  });
}

gqm_status gqm_symmetroid_enumerate(uint32_t n, char** report) {
  return guarded([&] { emit(need(report, "report"), gqm::reports::enumerate_report(n)); });
}

gqm_status gqm_symmetroid_check_exchange(uint32_t n, size_t samples, uint64_t seed, int* ok, char** report) {
  return guarded([&] { emit_report(gqm::reports::exchange_report(n, samples, seed), ok, report); });
}

gqm_status gqm_symmetroid_flat_bisections(uint32_t n, int exhaustive, int* ok, char** report) {
  return guarded([&] { emit_report(gqm::reports::flat_bisections_report(n, exhaustive != 0), ok, report); });
}

gqm_status gqm_channel_from_json(const char* text, const char* origin, gqm_channel** out) {
  return guarded([&] {
    need(out, "out");
    const std::string where = origin_or(origin, "channel");
    *out = wrap(gqm::io::channel_from_json(gqm::io::parse(need(text, "text"), where), where));
  });
}

gqm_status gqm_channel_load(const char* path, gqm_channel** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(gqm::io::channel_from_json(gqm::io::read_file(need(path, "path")), path));
  });
}

gqm_status gqm_channel_from_kraus_json(const char* text, const char* origin, gqm_channel** out) {
  return guarded([&] {
    need(out, "out");
    const std::string where = origin_or(origin, "kraus");
    *out = wrap(gqm::from_kraus(gqm::io::kraus_from_json(gqm::io::parse(need(text, "text"), where), where)));
  });
}

gqm_status gqm_channel_load_kraus(const char* path, gqm_channel** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(gqm::from_kraus(gqm::io::kraus_from_json(gqm::io::read_file(need(path, "path")), path)));
  });
}

gqm_status gqm_channel_from_permutation(const uint32_t* sigma, uint32_t n, gqm_channel** out) {
  return guarded([&] {
    need(out, "out");
    need(sigma, "sigma");
    const gqm::QuotientSymmetroid s(n);
    *out = wrap(gqm::from_flat_bisection(s, gqm::flat_bisection(s, std::vector<std::uint32_t>(sigma, sigma + n))));
  });
}

gqm_status gqm_channel_identity(uint32_t n, gqm_channel** out) {
  return guarded([&] { *need(out, "out") = wrap(gqm::identity_channel(n)); });
}

gqm_status gqm_channel_transpose(uint32_t n, gqm_channel** out) {
  return guarded([&] { *need(out, "out") = wrap(gqm::transpose_channel(n)); });
}

void gqm_channel_free(gqm_channel* ch) { delete ch; }

uint32_t gqm_channel_dimension(const gqm_channel* ch) { return ch ? ch->ch.n : 0; }

gqm_status gqm_channel_to_json(const gqm_channel* ch, char** out) {
  return guarded([&] { emit(need(out, "out"), gqm::io::channel_to_json(need(ch, "ch")->ch)); });
}

gqm_status gqm_channel_apply_values(const gqm_channel* ch, const double* input, size_t input_len, double* output,
                                    size_t output_len) {
  return guarded([&] {
    const auto& c = need(ch, "ch")->ch;
    need(input, "input");
    need(output, "output");
    const std::size_t size = static_cast<std::size_t>(c.n) * c.n;
    if (input_len != 2 * size || output_len != 2 * size)
      throw gqm::Error(gqm::ErrorCode::DimensionMismatch, "buffers must hold 2 n^2 = " + std::to_string(2 * size) + " doubles");
    gqm::AlgebraElement psi(size);
    for (std::size_t i = 0; i < size; ++i) psi.values[i] = {input[2 * i], input[2 * i + 1]};
    const auto res = gqm::apply_channel(c, psi);
    for (std::size_t i = 0; i < size; ++i) {
      output[2 * i] = res.values[i].real();
      output[2 * i + 1] = res.values[i].imag();
    }
  });
}

gqm_status gqm_channel_apply(const gqm_channel* ch, const char* state, uint32_t pad_to, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto& c = need(ch, "ch")->ch;
    auto psi = gqm::io::parse_state(c.n, need(state, "state"));
    json j{{"n", c.n}, {"input", gqm::io::function_to_json(psi)}};
    if (pad_to > 0) {
      const auto padded = gqm::pad_channel(c, pad_to);
      psi = gqm::pad_state(c.n, psi, pad_to);
      j["padded_to"] = pad_to;
      j["output"] = gqm::io::function_to_json(gqm::apply_channel(padded, psi));
    } else {
      j["output"] = gqm::io::function_to_json(gqm::apply_channel(c, psi));
    }
    emit(out, j);
  });
}

gqm_status gqm_channel_check(const gqm_channel* ch, const gqm_check_options* options, int* ok, char** report) {
  return guarded([&] {
    const auto& o = *need(options, "options");
    gqm::reports::ChannelChecks checks;
    checks.cp = o.cp != 0;
    checks.flat_psd = o.flat_psd != 0;
    checks.unital = o.unital != 0;
    checks.falsify_trials = o.falsify_trials;
    checks.seed = o.seed;
    checks.ancilla = o.ancilla == 0 ? 1 : o.ancilla;
    checks.tol = o.tol < 0 ? gqm::kPsdTol : o.tol;
    emit_report(gqm::reports::channel_check_report(need(ch, "ch")->ch, checks), ok, report);
  });
}

gqm_status gqm_channel_is_cp(const gqm_channel* ch, double tol, int* cp, double* min_eigenvalue) {
  return guarded([&] {
    const auto v = gqm::is_cp(need(ch, "ch")->ch, tol < 0 ? gqm::kPsdTol : tol);
    if (cp) *cp = v.cp;
    if (min_eigenvalue) *min_eigenvalue = v.min_eigenvalue;
  });
}

gqm_status gqm_channel_export(const gqm_channel* ch, gqm_matrix_kind kind, gqm_format format, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto& c = need(ch, "ch")->ch;
    gqm::CMatrix m;
    switch (kind) {
      case GQM_MATRIX_CHOI: m = gqm::to_choi(c); break;
      case GQM_MATRIX_A: m = gqm::to_a_matrix(c); break;
      case GQM_MATRIX_B: m = gqm::to_b_matrix(c); break;
      default: throw gqm::Error(gqm::ErrorCode::InvalidArgument, "unknown matrix kind");
    }
    switch (format) {
      case GQM_FORMAT_CSV: *out = dup(gqm::io::matrix_to_csv(m)); break;
      case GQM_FORMAT_JSON: emit(out, gqm::io::matrix_to_json(m)); break;
      default: throw gqm::Error(gqm::ErrorCode::InvalidArgument, "unknown export format");
    }
  });
}

gqm_status gqm_example_fourier(uint32_t n, const char* state, int* ok, char** report) {
  return guarded([&] {
    emit_report(gqm::reports::fourier_example(n, gqm::io::parse_state(n, need(state, "state"))), ok, report);
  });
}

gqm_status gqm_example_shift(uint32_t n, const char* state, int* ok, char** report) {
  return guarded([&] {
    emit_report(gqm::reports::shift_example(n, gqm::io::parse_state(n, need(state, "state"))), ok, report);
  });
}

gqm_status gqm_reproduce(const char* out_dir, int* ok, char** summary) {
  return guarded([&] { emit_report(gqm::reports::reproduce(need(out_dir, "out_dir")), ok, summary); });
}

}  // extern "C"
