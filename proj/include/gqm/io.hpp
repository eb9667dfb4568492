#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "gqm/algebra.hpp"
#include "gqm/channels.hpp"
#include "gqm/groupoid.hpp"
#include "gqm/measure.hpp"
#include "gqm/symmetroid.hpp"

namespace gqm::io {

using nlohmann::json;

// Parses text as JSON; syntax errors become Schema errors naming `origin`.
json parse(std::string_view text, const std::string& origin);
json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// {"n_objects", "morphisms": [{"id","src","tgt"}], "compose": [[b,a,b∘a]], "inverse", "units"}.
// Rejects tables that fail `validate`.
FiniteGroupoid groupoid_from_json(const json& j, const std::string& origin);
// Same parsing without the axiom check, for reporting.
FiniteGroupoid groupoid_tables_from_json(const json& j, const std::string& origin);
json groupoid_to_json(const FiniteGroupoid& g);
json validation_to_json(const ValidationReport& rep);

// {"morphism_weights": [...], "object_weights": [...]}; object_weights default to 1.
// Weights are numbers, or (exact mode) strings such as "3/4".
GroupoidMeasure measure_from_json(const FiniteGroupoid& g, const json& j, const std::string& origin);
ExactMeasure exact_measure_from_json(const FiniteGroupoid& g, const json& j, const std::string& origin);

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j, const std::string& where);

// {"values": [[re, im], ...]} by morphism id.
AlgebraElement function_from_json(const json& j, const std::string& origin);
json function_to_json(const AlgebraElement& f);

// {"n": int, "members": [function, ...]}.
KrausFamily kraus_from_json(const json& j, const std::string& origin);
json kraus_to_json(const KrausFamily& ks);

// {"n": int, "values": [[re, im], ...]} by class id ((l*n+j)*n+k)*n+m.
Channel channel_from_json(const json& j, const std::string& origin);
json channel_to_json(const Channel& ch);

// "delta:j,k", "units", or a function object.
AlgebraElement parse_state(std::uint32_t n, const std::string& spec);

json quotient_to_json(const QuotientTransformation& q);
json violations_to_json(const ViolationReport& rep);

// Row-major; JSON entries [re, im], CSV entries in numpy's "a+bj" form.
json matrix_to_json(const CMatrix& m);
std::string matrix_to_csv(const CMatrix& m);

}  // namespace gqm::io
