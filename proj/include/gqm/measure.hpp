#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "gqm/error.hpp"
#include "gqm/groupoid.hpp"
#include "gqm/scalar.hpp"

namespace gqm {

enum class ObjectWeightConvention {
  Unit,               // mu_Omega == 1
  TargetPushforward,  // mu_Omega = t_* mu
};

// Strictly positive atoms mu(alpha) together with the object measure
// mu_Omega.  The fibre measures are derived:
//   nu^x(alpha) = mu(alpha) / mu_Omega(t(alpha))   on G^x
//   nu_x(alpha) = mu(alpha) / mu_Omega(s(alpha))   on G_x
template <class R>
class BasicMeasure {
 public:
  BasicMeasure() = default;

  // Rejects non-positive weights and size mismatches.
  BasicMeasure(const FiniteGroupoid& g, std::vector<R> weights, std::vector<R> object_weights)
      : weights_(std::move(weights)), object_weights_(std::move(object_weights)) {
    if (weights_.size() != g.n_morphisms())
      throw Error(ErrorCode::Schema, "morphism_weights must have one entry per morphism");
    if (object_weights_.size() != g.n_objects())
      throw Error(ErrorCode::Schema, "object_weights must have one entry per object");
    for (std::size_t a = 0; a < weights_.size(); ++a)
      if (!(weights_[a] > R(0)))
        throw Error(ErrorCode::Schema, "morphism_weights[" + std::to_string(a) + "] must be strictly positive");
    for (std::size_t x = 0; x < object_weights_.size(); ++x)
      if (!(object_weights_[x] > R(0)))
        throw Error(ErrorCode::Schema, "object_weights[" + std::to_string(x) + "] must be strictly positive");
  }

  static BasicMeasure with_convention(const FiniteGroupoid& g, std::vector<R> weights,
                                      ObjectWeightConvention convention) {
    std::vector<R> obj(g.n_objects(), R(1));
    if (convention == ObjectWeightConvention::TargetPushforward) {
      if (weights.size() != g.n_morphisms())
        throw Error(ErrorCode::Schema, "morphism_weights must have one entry per morphism");
      for (auto& w : obj) w = R(0);
      for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) obj[g.target(MorphismId(a)).index] += weights[a];
    }
    return BasicMeasure(g, std::move(weights), std::move(obj));
  }

  const R& weight(MorphismId a) const { return weights_.at(a.index); }
  const R& object_weight(ObjectId x) const { return object_weights_.at(x.index); }
  const std::vector<R>& weights() const noexcept { return weights_; }
  const std::vector<R>& object_weights() const noexcept { return object_weights_; }

  R nu_target(const FiniteGroupoid& g, MorphismId a) const { return weight(a) / object_weight(g.target(a)); }
  R nu_source(const FiniteGroupoid& g, MorphismId a) const { return weight(a) / object_weight(g.source(a)); }

 private:
  std::vector<R> weights_;
  std::vector<R> object_weights_;
};

using GroupoidMeasure = BasicMeasure<double>;
using ExactMeasure = BasicMeasure<Rational>;

template <class R = double>
BasicMeasure<R> counting_measure(const FiniteGroupoid& g) {
  return BasicMeasure<R>(g, std::vector<R>(g.n_morphisms(), R(1)), std::vector<R>(g.n_objects(), R(1)));
}

// mu(j,k) = w_j / w_k on pair_groupoid(w.size()), with mu_Omega = w, the
// object weights that make the target fibres left-invariant.
template <class R = double>
BasicMeasure<R> weighted_pair_measure(const FiniteGroupoid& pair, const std::vector<R>& w) {
  const std::uint32_t n = pair.n_objects();
  if (w.size() != n || pair.n_morphisms() != n * n)
    throw Error(ErrorCode::InvalidArgument, "weighted pair measure needs one weight per object of a pair groupoid");
  std::vector<R> weights(pair.n_morphisms());
  for (std::uint32_t a = 0; a < pair.n_morphisms(); ++a) {
    weights[a] = w[pair.target(MorphismId(a)).index] / w[pair.source(MorphismId(a)).index];
  }
  return BasicMeasure<R>(pair, std::move(weights), w);
}

template <class R>
struct BasicModular {
  std::vector<R> values;
  const R& operator()(MorphismId a) const { return values.at(a.index); }
};

using ModularFunction = BasicModular<double>;

// delta(alpha) = mu(alpha) / mu(alpha^{-1}); throws NotHaar naming the first
// composable pair on which delta fails to be multiplicative (or a unit where
// delta != 1).
template <class R>
BasicModular<R> modular(const FiniteGroupoid& g, const BasicMeasure<R>& m, double tol = kIdentityTol) {
  BasicModular<R> d;
  d.values.resize(g.n_morphisms());
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a)
    d.values[a] = m.weight(MorphismId(a)) / m.weight(g.inverse_or_throw(MorphismId(a)));
  for (std::uint32_t b = 0; b < g.n_morphisms(); ++b)
    for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
      auto ba = g.compose(MorphismId(b), MorphismId(a));
      if (!ba) continue;
      if (!RealTraits<R>::near(d.values[ba->index], d.values[b] * d.values[a], tol)) {
        std::ostringstream os;
        os << "modular function is not multiplicative on the composable pair (" << b << ", " << a << ")";
        throw Error(ErrorCode::NotHaar, os.str());
      }
    }
  return d;
}

struct MeasureViolation {
  std::string check;
  std::vector<std::uint32_t> ids;  // meaning depends on the check, see each verifier
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ViolationReport {
  std::vector<MeasureViolation> violations;
  std::size_t checked = 0;
  bool ok() const noexcept { return violations.empty(); }
};

// (L_gamma)_* nu^x = nu^y for gamma: x -> y, i.e. nu^y(beta) = nu^x(gamma^{-1}∘beta)
// for every beta in G^y.  Violation ids: (gamma, beta).
template <class R>
ViolationReport verify_left_invariance(const FiniteGroupoid& g, const BasicMeasure<R>& m,
                                       double tol = kIdentityTol) {
  ViolationReport rep;
  for (std::uint32_t c = 0; c < g.n_morphisms(); ++c) {
    const MorphismId gamma(c);
    const MorphismId gamma_inv = g.inverse_or_throw(gamma);
    for (std::uint32_t b = 0; b < g.n_morphisms(); ++b) {
      const MorphismId beta(b);
      if (g.target(beta) != g.target(gamma)) continue;
      const MorphismId moved = g.compose_or_throw(gamma_inv, beta);
      const R lhs = m.nu_target(g, beta);
      const R rhs = m.nu_target(g, moved);
      ++rep.checked;
      if (!RealTraits<R>::near(lhs, rhs, tol))
        rep.violations.push_back({"left-invariance", {c, b}, RealTraits<R>::to_double(lhs), RealTraits<R>::to_double(rhs)});
    }
  }
  return rep;
}

// nu^x(alpha^{-1}) = delta^{-1}(alpha) nu_x(alpha) for alpha in G_x.  Ids: (alpha).
template <class R>
ViolationReport verify_inverse_relation(const FiniteGroupoid& g, const BasicMeasure<R>& m,
                                        double tol = kIdentityTol) {
  ViolationReport rep;
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
    const MorphismId alpha(a);
    const MorphismId inv = g.inverse_or_throw(alpha);
    const R delta = m.weight(alpha) / m.weight(inv);
    const R lhs = m.nu_target(g, inv);
    const R rhs = m.nu_source(g, alpha) / delta;
    ++rep.checked;
    if (!RealTraits<R>::near(lhs, rhs, tol))
      rep.violations.push_back({"inverse-relation", {a}, RealTraits<R>::to_double(lhs), RealTraits<R>::to_double(rhs)});
  }
  return rep;
}

// (R_gamma)_* nu_y = nu_x for gamma: x -> y: nu_y(alpha) = nu_x(alpha∘gamma)
// for alpha in G_y.  Ids: (gamma, alpha).
template <class R>
ViolationReport verify_right_invariance(const FiniteGroupoid& g, const BasicMeasure<R>& m,
                                        double tol = kIdentityTol) {
  ViolationReport rep;
  for (std::uint32_t c = 0; c < g.n_morphisms(); ++c) {
    const MorphismId gamma(c);
    for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
      const MorphismId alpha(a);
      if (g.source(alpha) != g.target(gamma)) continue;
      const R lhs = m.nu_source(g, alpha);
      const R rhs = m.nu_source(g, g.compose_or_throw(alpha, gamma));
      ++rep.checked;
      if (!RealTraits<R>::near(lhs, rhs, tol))
        rep.violations.push_back({"right-invariance", {c, a}, RealTraits<R>::to_double(lhs), RealTraits<R>::to_double(rhs)});
    }
  }
  return rep;
}

// sum_x nu^x(E ∩ G^x) mu_Omega(x) = mu(E) for the given set E.
template <class R>
bool disintegration_holds(const FiniteGroupoid& g, const BasicMeasure<R>& m, const std::vector<MorphismId>& set,
                          double tol = kIdentityTol) {
  R lhs(0);
  R rhs(0);
  for (std::uint32_t x = 0; x < g.n_objects(); ++x)
    for (MorphismId a : set)
      if (g.target(a) == ObjectId(x)) lhs += m.nu_target(g, a) * m.object_weight(ObjectId(x));
  for (MorphismId a : set) rhs += m.weight(a);
  return RealTraits<R>::near(lhs, rhs, tol);
}

// The disintegration identity on every singleton and on the whole groupoid
// (which by additivity covers every subset).  Ids: (alpha) or empty for G.
template <class R>
ViolationReport verify_disintegration(const FiniteGroupoid& g, const BasicMeasure<R>& m, double tol = kIdentityTol) {
  ViolationReport rep;
  std::vector<MorphismId> all;
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
    all.emplace_back(a);
    ++rep.checked;
    if (!disintegration_holds(g, m, {MorphismId(a)}, tol)) rep.violations.push_back({"disintegration", {a}, 0.0, 0.0});
  }
  ++rep.checked;
  if (!disintegration_holds(g, m, all, tol)) rep.violations.push_back({"disintegration", {}, 0.0, 0.0});
  return rep;
}

template <class R>
BasicMeasure<double> to_double(const FiniteGroupoid& g, const BasicMeasure<R>& m) {
  std::vector<double> w;
  std::vector<double> o;
  for (const auto& x : m.weights()) w.push_back(RealTraits<R>::to_double(x));
  for (const auto& x : m.object_weights()) o.push_back(RealTraits<R>::to_double(x));
  return BasicMeasure<double>(g, std::move(w), std::move(o));
}

}  // namespace gqm
