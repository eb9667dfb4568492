#include "gqm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gqm/error.hpp"

namespace gqm::io {

namespace {

[[noreturn]] void schema(const std::string& origin, const std::string& what) {
  throw Error(ErrorCode::Schema, origin + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& origin) {
  if (!j.is_object()) schema(origin, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) schema(origin, std::string("missing field \"") + name + "\"");
  return *it;
}

std::uint32_t as_index(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(origin, where + " must be a non-negative integer");
  return j.get<std::uint32_t>();
}

std::int32_t as_entry(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_number_integer()) schema(origin, where + " must be an integer");
  return j.get<std::int32_t>();
}

template <class R>
std::vector<R> weights_from(const json& j, const char* name, std::size_t expected, const std::string& origin, bool required) {
  auto it = j.find(name);
  if (it == j.end()) {
    if (required) schema(origin, std::string("missing field \"") + name + "\"");
    return std::vector<R>(expected, R(1));
  }
  if (!it->is_array()) schema(origin, std::string("\"") + name + "\" must be an array");
  if (it->size() != expected)
    schema(origin, std::string("\"") + name + "\" must have " + std::to_string(expected) + " entries, got " +
                       std::to_string(it->size()));
  std::vector<R> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& v = (*it)[i];
    const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<R, double>) {
      if (v.is_string()) {
        try {
          out.push_back(parse_rational(v.get<std::string>()).convert_to<double>());
        } catch (const Error& e) {
          schema(origin, where + ": " + e.what());
        }
      } else {
        if (!v.is_number()) schema(origin, where + " must be a number or a rational string");
        out.push_back(v.get<double>());
      }
    } else {
      if (v.is_string()) {
        try {
          out.push_back(parse_rational(v.get<std::string>()));
        } catch (const Error& e) {
          schema(origin, where + ": " + e.what());
        }
      } else if (v.is_number_integer()) {
        out.push_back(Rational(v.get<long long>()));
      } else if (v.is_number()) {
        // Shortest round-trip decimal, read exactly.
        out.push_back(parse_rational(json(v.get<double>()).dump()));
      } else {
        schema(origin, where + " must be a number or a rational string");
      }
    }
  }
  return out;
}

std::string format_double(double x) {
  // json's serialiser prints the shortest round-trip form.
  return json(x).dump();
}

}  // namespace

json parse(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    schema(origin, std::string("invalid JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

FiniteGroupoid groupoid_tables_from_json(const json& j, const std::string& origin) {
  GroupoidTables t;
  t.n_objects = as_index(field(j, "n_objects", origin), origin, "n_objects");
  const json& morphisms = field(j, "morphisms", origin);
  if (!morphisms.is_array()) schema(origin, "\"morphisms\" must be an array");
  const std::size_t m = morphisms.size();
  t.source.assign(m, 0);
  t.target.assign(m, 0);
  std::vector<bool> seen(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string where = "morphisms[" + std::to_string(i) + "]";
    const json& entry = morphisms[i];
    const auto id = as_index(field(entry, "id", origin), origin, where + ".id");
    if (id >= m || seen[id]) schema(origin, where + ".id must be a distinct id in 0.." + std::to_string(m - 1));
    seen[id] = true;
    t.source[id] = as_index(field(entry, "src", origin), origin, where + ".src");
    t.target[id] = as_index(field(entry, "tgt", origin), origin, where + ".tgt");
    if (t.source[id] >= t.n_objects || t.target[id] >= t.n_objects) schema(origin, where + " has an endpoint out of range");
  }
  t.compose.assign(m * m, kUndefined);
  const json& compose = field(j, "compose", origin);
  if (!compose.is_array()) schema(origin, "\"compose\" must be an array");
  for (std::size_t i = 0; i < compose.size(); ++i) {
    const std::string where = "compose[" + std::to_string(i) + "]";
    const json& e = compose[i];
    if (!e.is_array() || e.size() != 3) schema(origin, where + " must be [b_id, a_id, result_id]");
    const auto b = as_index(e[0], origin, where + "[0]");
    const auto a = as_index(e[1], origin, where + "[1]");
    const auto r = as_index(e[2], origin, where + "[2]");
    if (b >= m || a >= m || r >= m) schema(origin, where + " refers to an unknown morphism");
    if (t.compose[b * m + a] != kUndefined) schema(origin, where + " repeats the pair (" + std::to_string(b) + ", " + std::to_string(a) + ")");
    t.compose[b * m + a] = static_cast<std::int32_t>(r);
  }
  const json& inverse = field(j, "inverse", origin);
  if (!inverse.is_array() || inverse.size() != m) schema(origin, "\"inverse\" must have one entry per morphism");
  for (std::size_t i = 0; i < m; ++i) {
    const auto v = as_entry(inverse[i], origin, "inverse[" + std::to_string(i) + "]");
    if (v < kUndefined || v >= static_cast<std::int32_t>(m)) schema(origin, "inverse[" + std::to_string(i) + "] out of range");
    t.inverse.push_back(v);
  }
  const json& units = field(j, "units", origin);
  if (!units.is_array() || units.size() != t.n_objects) schema(origin, "\"units\" must have one entry per object");
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto v = as_entry(units[i], origin, "units[" + std::to_string(i) + "]");
    if (v < kUndefined || v >= static_cast<std::int32_t>(m)) schema(origin, "units[" + std::to_string(i) + "] out of range");
    t.unit_of.push_back(v);
  }
  try {
    return FiniteGroupoid(std::move(t));
  } catch (const Error& e) {
    schema(origin, e.what());
  }
}

FiniteGroupoid groupoid_from_json(const json& j, const std::string& origin) {
  FiniteGroupoid g = groupoid_tables_from_json(j, origin);
  const ValidationReport rep = validate(g);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    schema(origin, "not a groupoid (" + std::to_string(rep.violations.size()) + " violations; first: " +
                       to_string(v.kind) + ", " + v.detail + ")");
  }
  return g;
}

json groupoid_to_json(const FiniteGroupoid& g) {
  const auto& t = g.tables();
  json morphisms = json::array();
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a)
    morphisms.push_back({{"id", a}, {"src", t.source[a]}, {"tgt", t.target[a]}});
  json compose = json::array();
  for (std::uint32_t b = 0; b < g.n_morphisms(); ++b)
    for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
      const auto r = t.compose[static_cast<std::size_t>(b) * g.n_morphisms() + a];
      if (r != kUndefined) compose.push_back({b, a, r});
    }
  return {{"n_objects", g.n_objects()}, {"morphisms", morphisms}, {"compose", compose},
          {"inverse", t.inverse},       {"units", t.unit_of}};
}

json validation_to_json(const ValidationReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"kind", to_string(x.kind)}, {"morphisms", x.morphisms}, {"detail", x.detail}});
  return {{"verdict", rep.ok() ? "pass" : "fail"}, {"violations", v}};
}

GroupoidMeasure measure_from_json(const FiniteGroupoid& g, const json& j, const std::string& origin) {
  if (!j.is_object()) schema(origin, "expected a JSON object");
  auto w = weights_from<double>(j, "morphism_weights", g.n_morphisms(), origin, true);
  auto o = weights_from<double>(j, "object_weights", g.n_objects(), origin, false);
  try {
    return GroupoidMeasure(g, std::move(w), std::move(o));
  } catch (const Error& e) {
    schema(origin, e.what());
  }
}

ExactMeasure exact_measure_from_json(const FiniteGroupoid& g, const json& j, const std::string& origin) {
  if (!j.is_object()) schema(origin, "expected a JSON object");
  auto w = weights_from<Rational>(j, "morphism_weights", g.n_morphisms(), origin, true);
  auto o = weights_from<Rational>(j, "object_weights", g.n_objects(), origin, false);
  try {
    return ExactMeasure(g, std::move(w), std::move(o));
  } catch (const Error& e) {
    schema(origin, e.what());
  }
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::Schema, where + " must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

AlgebraElement function_from_json(const json& j, const std::string& origin) {
  const json& values = field(j, "values", origin);
  if (!values.is_array()) schema(origin, "\"values\" must be an array");
  AlgebraElement f(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    f.values[i] = complex_from_json(values[i], origin + ": values[" + std::to_string(i) + "]");
  return f;
}

json function_to_json(const AlgebraElement& f) {
  json values = json::array();
  for (const auto& z : f.values) values.push_back(complex_to_json(z));
  return {{"values", values}};
}

KrausFamily kraus_from_json(const json& j, const std::string& origin) {
  KrausFamily ks;
  ks.n = as_index(field(j, "n", origin), origin, "n");
  if (ks.n == 0) schema(origin, "n must be at least 1");
  const json& members = field(j, "members", origin);
  if (!members.is_array()) schema(origin, "\"members\" must be an array");
  for (std::size_t i = 0; i < members.size(); ++i) {
    AlgebraElement v = function_from_json(members[i], origin + ": members[" + std::to_string(i) + "]");
    if (v.size() != static_cast<std::size_t>(ks.n) * ks.n)
      schema(origin, "members[" + std::to_string(i) + "] must have n^2 = " + std::to_string(ks.n * ks.n) + " values");
    ks.members.push_back(std::move(v));
  }
  return ks;
}

json kraus_to_json(const KrausFamily& ks) {
  json members = json::array();
  for (const auto& v : ks.members) members.push_back(function_to_json(v));
  return {{"n", ks.n}, {"members", members}};
}

Channel channel_from_json(const json& j, const std::string& origin) {
  const auto n = as_index(field(j, "n", origin), origin, "n");
  if (n == 0) schema(origin, "n must be at least 1");
  AlgebraElement kernel = function_from_json(j, origin);
  const std::size_t expected = static_cast<std::size_t>(n) * n * n * n;
  if (kernel.size() != expected)
    schema(origin, "\"values\" must have n^4 = " + std::to_string(expected) + " entries, got " + std::to_string(kernel.size()));
  return make_channel(n, std::move(kernel));
}

json channel_to_json(const Channel& ch) {
  json j = function_to_json(ch.kernel);
  j["n"] = ch.n;
  return j;
}

AlgebraElement parse_state(std::uint32_t n, const std::string& spec) {
  const FiniteGroupoid g = pair_groupoid(n);
  if (spec == "units") return unit_element(g);
  if (spec.rfind("delta:", 0) == 0) {
    unsigned j = 0;
    unsigned k = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str() + 6, "%u,%u%c", &j, &k, &tail) != 2)
      throw Error(ErrorCode::Schema, "state \"" + spec + "\" must look like delta:j,k");
    if (j >= n || k >= n) throw Error(ErrorCode::Schema, "state \"" + spec + "\" has an index outside 0.." + std::to_string(n - 1));
    return delta(g, pair_morphism(n, j, k));
  }
  AlgebraElement f = function_from_json(read_file(spec), spec);
  if (f.size() != g.n_morphisms())
    throw Error(ErrorCode::DimensionMismatch, spec + ": state has " + std::to_string(f.size()) + " values, expected " +
                                                  std::to_string(g.n_morphisms()));
  return f;
}

json quotient_to_json(const QuotientTransformation& q) { return json::array({q.z, q.y, q.x, q.w}); }

json violations_to_json(const ViolationReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"check", x.check}, {"ids", x.ids}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  return {{"verdict", rep.ok() ? "pass" : "fail"}, {"checked", rep.checked}, {"violations", v}};
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

std::string matrix_to_csv(const CMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      const Complex z = m(r, c);
      const double im = z.imag() == 0.0 ? 0.0 : z.imag();  // no "-0j"
      os << format_double(z.real() == 0.0 ? 0.0 : z.real()) << (std::signbit(im) ? "" : "+") << format_double(im) << 'j';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gqm::io
