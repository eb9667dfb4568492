#include "gqm/scalar.hpp"

#include <cctype>

#include "gqm/error.hpp"

namespace gqm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::NotHaar: return "NotHaar";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotPullback: return "NotPullback";
    case ErrorCode::TooManyKraus: return "TooManyKraus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Normalization: return "Normalization";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

Rational parse_decimal(const std::string& s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  boost::multiprecision::cpp_int num = 0;
  boost::multiprecision::cpp_int den = 1;
  bool digits = false;
  bool point = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      num = num * 10 + (ch - '0');
      if (point) den *= 10;
      digits = true;
    } else if (ch == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!digits) throw Error(ErrorCode::Schema, "not a number: '" + s + "'");
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(i + 1), &used);
      i += 1 + used;
    } catch (const std::exception&) {
      throw Error(ErrorCode::Schema, "bad exponent in '" + s + "'");
    }
  }
  if (i != s.size()) throw Error(ErrorCode::Schema, "trailing characters in number '" + s + "'");
  Rational r(num, den);
  boost::multiprecision::cpp_int ten = 10;
  for (long e = 0; e < std::abs(exponent); ++e) r = exponent > 0 ? r * Rational(ten) : r / Rational(ten);
  return negative ? -r : r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Schema, "zero denominator in '" + text + "'");
  return num / den;
}

std::string to_string(const Rational& r) {
  std::string num = boost::multiprecision::numerator(r).str();
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num;
  return num + "/" + den.str();
}

}  // namespace gqm
