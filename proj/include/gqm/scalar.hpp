#pragma once

// Scalar fields used throughout the library.  Double precision complex
// numbers are the default; ExactComplex (pairs of arbitrary precision
// rationals) backs the exact-arithmetic mode.

#include <cmath>
#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gqm {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

// Absolute tolerance for real-valued measure and algebra identities.
inline constexpr double kIdentityTol = 1e-12;
// Minimum-eigenvalue tolerance for positive semidefiniteness.
inline constexpr double kPsdTol = 1e-10;

struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design of the field embedding
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r) {}  // NOLINT

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o) {
    Rational den = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline ExactComplex conj(const ExactComplex& z) { return {z.re, -z.im}; }

// Per-field operations that differ between the floating and exact modes.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr bool exact = false;
  static Complex conj(const Complex& z) { return std::conj(z); }
  static Complex from_real(double r) { return {r, 0.0}; }
  static bool near(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - b) <= tol;
  }
  static double magnitude(const Complex& z) { return std::abs(z); }
};

template <>
struct ScalarTraits<ExactComplex> {
  using Real = Rational;
  static constexpr bool exact = true;
  static ExactComplex conj(const ExactComplex& z) { return gqm::conj(z); }
  static ExactComplex from_real(const Rational& r) { return {r, Rational(0)}; }
  static bool near(const ExactComplex& a, const ExactComplex& b, double) { return a == b; }
  static double magnitude(const ExactComplex& z) {
    double r = static_cast<double>(z.re);
    double i = static_cast<double>(z.im);
    return std::hypot(r, i);
  }
};

template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
  using Scalar = Complex;
  static bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
  static double to_double(double r) { return r; }
};

template <>
struct RealTraits<Rational> {
  using Scalar = ExactComplex;
  static bool near(const Rational& a, const Rational& b, double) { return a == b; }
  static double to_double(const Rational& r) { return static_cast<double>(r); }
};

// Parses "3", "-0.25" or "p/q".  Decimal strings are converted exactly
// (0.1 becomes 1/10, not the nearest binary fraction).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace gqm
