#pragma once

#include <span>
#include <vector>

#include "gqm/eigen.hpp"
#include "gqm/groupoid.hpp"
#include "gqm/matrix.hpp"
#include "gqm/measure.hpp"

namespace gqm {

// A function on the morphisms of a groupoid, indexed by morphism id.
template <class S>
struct BasicElement {
  std::vector<S> values;

  BasicElement() = default;
  explicit BasicElement(std::size_t size) : values(size) {}
  explicit BasicElement(std::vector<S> v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  S& operator[](MorphismId a) { return values.at(a.index); }
  const S& operator[](MorphismId a) const { return values.at(a.index); }

  BasicElement& operator+=(const BasicElement& o) {
    if (o.size() != size()) throw Error(ErrorCode::DimensionMismatch, "element sizes differ");
    for (std::size_t i = 0; i < size(); ++i) values[i] += o.values[i];
    return *this;
  }
  friend BasicElement operator+(BasicElement a, const BasicElement& b) { return a += b; }
  friend BasicElement operator*(const S& c, BasicElement a) {
    for (auto& v : a.values) v = c * v;
    return a;
  }
  friend bool operator==(const BasicElement&, const BasicElement&) = default;
};

using AlgebraElement = BasicElement<Complex>;
using ExactElement = BasicElement<ExactComplex>;

namespace detail {
inline void require_size(const FiniteGroupoid& g, std::size_t size) {
  if (size != g.n_morphisms()) throw Error(ErrorCode::DimensionMismatch, "function is not defined on this groupoid");
}
}  // namespace detail

template <class S = Complex>
BasicElement<S> delta(const FiniteGroupoid& g, MorphismId a) {
  BasicElement<S> e(g.n_morphisms());
  e[a] = S(1);
  return e;
}

// Indicator of the unit morphisms: the unit of the convolution algebra.
template <class S = Complex>
BasicElement<S> unit_element(const FiniteGroupoid& g) {
  BasicElement<S> e(g.n_morphisms());
  for (std::uint32_t x = 0; x < g.n_objects(); ++x) e[g.unit_or_throw(ObjectId(x))] = S(1);
  return e;
}

// (f⋆h)(alpha) = sum_{beta in G^{t(alpha)}} f(beta) h(beta^{-1}∘alpha) nu^{t(alpha)}(beta)
template <class S, class R = typename ScalarTraits<S>::Real>
BasicElement<S> convolve(const FiniteGroupoid& g, const BasicElement<S>& f, const BasicElement<S>& h,
                         const BasicMeasure<R>& m) {
  detail::require_size(g, f.size());
  detail::require_size(g, h.size());
  const std::uint32_t size = g.n_morphisms();
  BasicElement<S> out(size);
  for (std::uint32_t b = 0; b < size; ++b) {
    const MorphismId beta(b);
    if (f[beta] == S(0)) continue;
    const MorphismId beta_inv = g.inverse_or_throw(beta);
    const S weight = f[beta] * ScalarTraits<S>::from_real(m.nu_target(g, beta));
    for (std::uint32_t a = 0; a < size; ++a) {
      const MorphismId alpha(a);
      if (g.target(alpha) != g.target(beta)) continue;
      out[alpha] += weight * h[g.compose_or_throw(beta_inv, alpha)];
    }
  }
  return out;
}

// f*(alpha) = delta^{-1}(alpha) conj(f(alpha^{-1}))
template <class S, class R = typename ScalarTraits<S>::Real>
BasicElement<S> involute(const FiniteGroupoid& g, const BasicElement<S>& f, const BasicMeasure<R>& m) {
  detail::require_size(g, f.size());
  BasicElement<S> out(f.size());
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
    const MorphismId alpha(a);
    const MorphismId inv = g.inverse_or_throw(alpha);
    const R inv_delta = m.weight(inv) / m.weight(alpha);
    out[alpha] = ScalarTraits<S>::from_real(inv_delta) * ScalarTraits<S>::conj(f[inv]);
  }
  return out;
}

// Matrix of psi -> f⋆psi in the delta_alpha basis of L^2(G, mu).
template <class S, class R = typename ScalarTraits<S>::Real>
Matrix<S> left_regular_matrix(const FiniteGroupoid& g, const BasicElement<S>& f, const BasicMeasure<R>& m) {
  const std::uint32_t size = g.n_morphisms();
  Matrix<S> out(size, size);
  for (std::uint32_t c = 0; c < size; ++c) {
    BasicElement<S> col = convolve(g, f, delta<S>(g, MorphismId(c)), m);
    for (std::uint32_t r = 0; r < size; ++r) out(r, c) = col.values[r];
  }
  return out;
}

// <psi, chi> = sum_alpha conj(psi(alpha)) chi(alpha) mu(alpha)
template <class S, class R = typename ScalarTraits<S>::Real>
S inner_product(const BasicElement<S>& psi, const BasicElement<S>& chi, const BasicMeasure<R>& m) {
  if (psi.size() != chi.size() || psi.size() != m.weights().size())
    throw Error(ErrorCode::DimensionMismatch, "inner product operands differ in size");
  S acc(0);
  for (std::size_t a = 0; a < psi.size(); ++a)
    acc += ScalarTraits<S>::conj(psi.values[a]) * chi.values[a] * ScalarTraits<S>::from_real(m.weights()[a]);
  return acc;
}

struct PositiveTypeVerdict {
  bool positive = true;
  std::uint32_t object = 0;         // source object of the failing block
  double min_eigenvalue = 0.0;      // over all blocks when positive, else of the failing block
  std::vector<Complex> witness;     // eigenvector of the failing block
  std::vector<std::uint32_t> block; // morphism ids alpha_j spanning the failing block
};

// For each object x: M^x_{jk} = phi(alpha_j∘alpha_k^{-1}) over alpha_j, alpha_k in G_x
// must be Hermitian and have min eigenvalue >= -tol.
PositiveTypeVerdict is_positive_type(const FiniteGroupoid& g, const AlgebraElement& phi, double tol = kPsdTol);

// omega(f) = sum_n <xi_n, f⋆xi_n>, requiring sum_n ||xi_n||^2 = 1 within 1e-12.
Complex evaluate_state(const FiniteGroupoid& g, const GroupoidMeasure& m, std::span<const AlgebraElement> xi,
                       const AlgebraElement& f);

// phi(alpha) := omega_xi(delta_alpha).
AlgebraElement state_function(const FiniteGroupoid& g, const GroupoidMeasure& m, std::span<const AlgebraElement> xi);

// sum_x phi(1_x) mu_Omega(x); states are normalised so that this is 1.
Complex state_trace(const FiniteGroupoid& g, const GroupoidMeasure& m, const AlgebraElement& phi);

// Pair-groupoid helpers: entry (j,k) of the matrix is the value on (j,k).
template <class S>
Matrix<S> as_matrix(std::uint32_t n, const BasicElement<S>& f) {
  if (f.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorCode::DimensionMismatch, "function is not defined on pair_groupoid(n)");
  Matrix<S> m(n, n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) m(j, k) = f.values[j * n + k];
  return m;
}

template <class S>
BasicElement<S> from_matrix(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "pair-groupoid functions are square matrices");
  BasicElement<S> f(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t k = 0; k < m.cols(); ++k) f.values[j * m.cols() + k] = m(j, k);
  return f;
}

std::uint32_t pair_dimension(std::size_t n_morphisms);

}  // namespace gqm
