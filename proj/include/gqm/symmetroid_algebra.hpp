#pragma once

#include <vector>

#include "gqm/algebra.hpp"
#include "gqm/measure.hpp"
#include "gqm/symmetroid.hpp"

namespace gqm {

// Haar data induced on a symmetroid from a left Haar system on its base.
// Indices follow the transformation (or class) ids of the symmetroid.
template <class R>
struct BasicSymmetroidMeasure {
  std::vector<R> weights;        // mu2(Gamma) = nu2(Gamma) mu(t1(Gamma))
  std::vector<R> fiber_weights;  // nu2(Gamma) = nu^{t(alpha)}(alpha) nu^{t(gamma)}(gamma) on t1^{-1}(t1(Gamma))
  std::vector<R> modular;        // Delta2(Gamma) = delta(alpha) delta(gamma)
  BasicMeasure<R> vertical;      // mu2 on the vertical groupoid, object weights mu
};

using SymmetroidMeasure = BasicSymmetroidMeasure<double>;
using ExactSymmetroidMeasure = BasicSymmetroidMeasure<Rational>;

template <class R>
BasicSymmetroidMeasure<R> induce_measure(const CanonicalSymmetroid& s, const BasicMeasure<R>& m,
                                         double tol = kIdentityTol) {
  const FiniteGroupoid& g = s.base();
  ViolationReport left = verify_left_invariance(g, m, tol);
  if (!left.ok()) {
    const auto& v = left.violations.front();
    throw Error(ErrorCode::NotHaar, "measure is not left-invariant at (gamma, beta) = (" + std::to_string(v.ids[0]) +
                                        ", " + std::to_string(v.ids[1]) + ")");
  }
  const BasicModular<R> delta = modular(g, m, tol);
  BasicSymmetroidMeasure<R> out;
  for (const Transformation& t : s.transformations()) {
    const R fiber = m.nu_target(g, t.alpha) * m.nu_target(g, t.gamma);
    out.fiber_weights.push_back(fiber);
    out.weights.push_back(fiber * m.weight(s.t1(t)));
    out.modular.push_back(delta(t.alpha) * delta(t.gamma));
  }
  out.vertical = BasicMeasure<R>(s.vertical(), out.weights, m.weights());
  return out;
}

// The same measure indexed by quotient class ids; over a pair groupoid every
// class has exactly one representative.
template <class R>
BasicSymmetroidMeasure<R> induce_measure(const QuotientSymmetroid& q, const BasicMeasure<R>& m,
                                         double tol = kIdentityTol) {
  const CanonicalSymmetroid s(q.base());
  const BasicSymmetroidMeasure<R> full = induce_measure(s, m, tol);
  BasicSymmetroidMeasure<R> out;
  out.weights.resize(q.size());
  out.fiber_weights.resize(q.size());
  out.modular.resize(q.size());
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    const std::uint32_t c = q.index(s.project(s.at(i)));
    out.weights[c] = full.weights[i];
    out.fiber_weights[c] = full.fiber_weights[i];
    out.modular[c] = full.modular[i];
  }
  out.vertical = BasicMeasure<R>(q.vertical(), out.weights, m.weights());
  return out;
}

// (L_Gamma)_* nu2^{s1(Gamma)} = nu2^{t1(Gamma)}: for every Gamma and every Xi with
// t1(Xi) = t1(Gamma), nu2(Xi) = nu2(Gamma^{-1} ∘_V Xi).  Ids: (Gamma, Xi).
template <class R>
ViolationReport verify_induced_equivariance(const FiniteGroupoid& vertical, const BasicSymmetroidMeasure<R>& m2,
                                            double tol = kIdentityTol) {
  ViolationReport rep;
  const std::uint32_t size = vertical.n_morphisms();
  for (std::uint32_t c = 0; c < size; ++c) {
    const MorphismId gamma(c);
    const MorphismId inv = vertical.inverse_or_throw(gamma);
    for (std::uint32_t x = 0; x < size; ++x) {
      const MorphismId xi(x);
      if (vertical.target(xi) != vertical.target(gamma)) continue;
      const MorphismId moved = vertical.compose_or_throw(inv, xi);
      const R& lhs = m2.fiber_weights.at(x);
      const R& rhs = m2.fiber_weights.at(moved.index);
      ++rep.checked;
      if (!RealTraits<R>::near(lhs, rhs, tol))
        rep.violations.push_back({"equivariance", {c, x}, RealTraits<R>::to_double(lhs), RealTraits<R>::to_double(rhs)});
    }
  }
  return rep;
}

// mu2(Gamma^{-1}) = mu2(Gamma) / Delta2(Gamma) for every Gamma (check "modular-atom",
// ids (Gamma)), which is the indicator-basis form of
//   sum mu2(Gamma) f(Gamma^{-1}) = sum mu2(Gamma) Delta2(Gamma)^{-1} f(Gamma),
// and Delta2(Gamma2 ∘_V Gamma1) = Delta2(Gamma2) Delta2(Gamma1) ("modular-homomorphism",
// ids (Gamma2, Gamma1)).
template <class R>
ViolationReport verify_modular_formula(const FiniteGroupoid& vertical, const BasicSymmetroidMeasure<R>& m2,
                                       double tol = kIdentityTol) {
  ViolationReport rep;
  const std::uint32_t size = vertical.n_morphisms();
  for (std::uint32_t c = 0; c < size; ++c) {
    const std::uint32_t inv = vertical.inverse_or_throw(MorphismId(c)).index;
    const R lhs = m2.weights.at(inv);
    const R rhs = m2.weights.at(c) / m2.modular.at(c);
    ++rep.checked;
    if (!RealTraits<R>::near(lhs, rhs, tol))
      rep.violations.push_back({"modular-atom", {c}, RealTraits<R>::to_double(lhs), RealTraits<R>::to_double(rhs)});
  }
  for (std::uint32_t b = 0; b < size; ++b)
    for (std::uint32_t a = 0; a < size; ++a) {
      auto ba = vertical.compose(MorphismId(b), MorphismId(a));
      if (!ba) continue;
      const R lhs = m2.modular.at(ba->index);
      const R rhs = m2.modular.at(b) * m2.modular.at(a);
      ++rep.checked;
      if (!RealTraits<R>::near(lhs, rhs, tol))
        rep.violations.push_back({"modular-homomorphism", {b, a}, RealTraits<R>::to_double(lhs), RealTraits<R>::to_double(rhs)});
    }
  return rep;
}

// mu2(Gamma) / mu2(Gamma^{-1}): the modular function the measure actually has.
template <class R>
std::vector<R> empirical_modular(const FiniteGroupoid& vertical, const BasicSymmetroidMeasure<R>& m2) {
  std::vector<R> out(vertical.n_morphisms());
  for (std::uint32_t c = 0; c < vertical.n_morphisms(); ++c)
    out[c] = m2.weights.at(c) / m2.weights.at(vertical.inverse_or_throw(MorphismId(c)).index);
  return out;
}

// Convolution algebra of the vertical groupoid.
template <class S, class R = typename ScalarTraits<S>::Real>
BasicElement<S> convolve_S(const FiniteGroupoid& vertical, const BasicElement<S>& f, const BasicElement<S>& h,
                           const BasicSymmetroidMeasure<R>& m2) {
  return convolve(vertical, f, h, m2.vertical);
}

// f*(Gamma) = Delta2(Gamma)^{-1} conj(f(Gamma^{-1})).
template <class S, class R = typename ScalarTraits<S>::Real>
BasicElement<S> involute_S(const FiniteGroupoid& vertical, const BasicElement<S>& f,
                           const BasicSymmetroidMeasure<R>& m2) {
  detail::require_size(vertical, f.size());
  BasicElement<S> out(f.size());
  for (std::uint32_t c = 0; c < vertical.n_morphisms(); ++c) {
    const MorphismId inv = vertical.inverse_or_throw(MorphismId(c));
    out.values[c] = ScalarTraits<S>::from_real(R(1) / m2.modular.at(c)) * ScalarTraits<S>::conj(f[inv]);
  }
  return out;
}

// A_f: psi -> f ⋆_S psi in the delta_Gamma basis.
template <class S, class R = typename ScalarTraits<S>::Real>
Matrix<S> rep_operator(const FiniteGroupoid& vertical, const BasicElement<S>& f, const BasicSymmetroidMeasure<R>& m2) {
  return left_regular_matrix(vertical, f, m2.vertical);
}

// (J psi)(Gamma) = conj(psi(Gamma^{-1})).
template <class S>
BasicElement<S> modular_involution(const FiniteGroupoid& vertical, const BasicElement<S>& psi) {
  detail::require_size(vertical, psi.size());
  BasicElement<S> out(psi.size());
  for (std::uint32_t c = 0; c < vertical.n_morphisms(); ++c)
    out.values[c] = ScalarTraits<S>::conj(psi[vertical.inverse_or_throw(MorphismId(c))]);
  return out;
}

// Counting-measure fast path on the quotient over pair_groupoid(n), indexed by
// class id ((l*n+j)*n+k)*n+m:
//   (f ⋆ g)((l,j),(k,m)) = sum_{r,s} f((l,r),(s,m)) g((r,j),(k,s))
//   f*((l,j),(k,m))      = conj f((j,l),(m,k))
template <class S>
BasicElement<S> convolve_pair(std::uint32_t n, const BasicElement<S>& f, const BasicElement<S>& g) {
  const std::size_t size = static_cast<std::size_t>(n) * n * n * n;
  if (f.size() != size || g.size() != size) throw Error(ErrorCode::DimensionMismatch, "functions must have n^4 values");
  auto id = [n](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return ((a * n + b) * n + c) * n + d;
  };
  BasicElement<S> out(size);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t m = 0; m < n; ++m) {
          S acc(0);
          for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t s = 0; s < n; ++s) acc += f.values[id(l, r, s, m)] * g.values[id(r, j, k, s)];
          out.values[id(l, j, k, m)] = acc;
        }
  return out;
}

template <class S>
BasicElement<S> involute_pair(std::uint32_t n, const BasicElement<S>& f) {
  const std::size_t size = static_cast<std::size_t>(n) * n * n * n;
  if (f.size() != size) throw Error(ErrorCode::DimensionMismatch, "functions must have n^4 values");
  BasicElement<S> out(size);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t m = 0; m < n; ++m)
          out.values[((l * n + j) * n + k) * n + m] = ScalarTraits<S>::conj(f.values[((j * n + l) * n + m) * n + k]);
  return out;
}

// The isomorphism onto M_n ⊗ M_n: delta_((a,b),(c,d)) -> e_ab ⊗ e_dc, so
// T[a*n+d][b*n+c] = f((a,b),(c,d)).
template <class S>
Matrix<S> to_tensor(std::uint32_t n, const BasicElement<S>& f) {
  const std::size_t size = static_cast<std::size_t>(n) * n * n * n;
  if (f.size() != size) throw Error(ErrorCode::DimensionMismatch, "functions must have n^4 values");
  Matrix<S> t(n * n, n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) t(a * n + d, b * n + c) = f.values[((a * n + b) * n + c) * n + d];
  return t;
}

template <class S>
BasicElement<S> from_tensor(std::uint32_t n, const Matrix<S>& t) {
  if (t.rows() != n * n || t.cols() != n * n) throw Error(ErrorCode::DimensionMismatch, "tensor must be n^2 x n^2");
  BasicElement<S> f(static_cast<std::size_t>(n) * n * n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) f.values[((a * n + b) * n + c) * n + d] = t(a * n + d, b * n + c);
  return f;
}

// Pullback t1^* psi: every class takes the value of psi at its 2-target.
template <class S>
BasicElement<S> pullback_embed(const QuotientSymmetroid& q, const BasicElement<S>& psi) {
  detail::require_size(q.base(), psi.size());
  BasicElement<S> out(q.size());
  for (std::uint32_t c = 0; c < q.size(); ++c) out.values[c] = psi[q.t1(q.at(c))];
  return out;
}

// Whether f is constant along every 2-target fibre (to tol).
template <class S>
bool is_pullback(const QuotientSymmetroid& q, const BasicElement<S>& f, double tol = kIdentityTol) {
  detail::require_size(q.vertical(), f.size());
  std::vector<int> first(q.base().n_morphisms(), -1);
  for (std::uint32_t c = 0; c < q.size(); ++c) {
    const auto t = q.t1(q.at(c)).index;
    if (first[t] < 0) {
      first[t] = static_cast<int>(c);
      continue;
    }
    if (!ScalarTraits<S>::near(f.values[c], f.values[first[t]], tol)) return false;
  }
  return true;
}

// psi with t1^* psi = f; throws NotPullback when f is not fibre-constant.
template <class S>
BasicElement<S> pullback_base(const QuotientSymmetroid& q, const BasicElement<S>& f, double tol = kIdentityTol) {
  if (!is_pullback(q, f, tol)) throw Error(ErrorCode::NotPullback, "function is not constant along the 2-target fibres");
  BasicElement<S> psi(q.base().n_morphisms());
  for (std::uint32_t b = 0; b < psi.size(); ++b) psi.values[b] = f.values[q.index(q.between(MorphismId(b), MorphismId(b)))];
  return psi;
}

// (t1^* psi1) ⋆_H (t1^* psi2) = t1^*(psi1 ⋆ psi2) with the base convolution.
template <class S, class R = typename ScalarTraits<S>::Real>
BasicElement<S> horizontal_convolve(const QuotientSymmetroid& q, const BasicElement<S>& f1, const BasicElement<S>& f2,
                                    const BasicMeasure<R>& base_measure, double tol = kIdentityTol) {
  const auto psi1 = pullback_base(q, f1, tol);
  const auto psi2 = pullback_base(q, f2, tol);
  return pullback_embed(q, convolve(q.base(), psi1, psi2, base_measure));
}

// Operator of A_f restricted to the pullback subspace, in the delta_{(l,m)}
// basis of G(Omega): R[(l,m)][(r,s)] = (f ⋆ t1^* delta_(r,s)) at any class over (l,m).
CMatrix restricted_operator(const QuotientSymmetroid& q, const AlgebraElement& f);
// Dimension of {X : X R_Gamma = R_Gamma X for every basis class Gamma}, by exact rank.
std::size_t pullback_commutant_dimension(const QuotientSymmetroid& q);

}  // namespace gqm
