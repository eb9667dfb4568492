#include "gqm/algebra.hpp"

#include <cmath>

namespace gqm {

PositiveTypeVerdict is_positive_type(const FiniteGroupoid& g, const AlgebraElement& phi, double tol) {
  detail::require_size(g, phi.size());
  PositiveTypeVerdict verdict;
  bool first = true;
  for (std::uint32_t x = 0; x < g.n_objects(); ++x) {
    const auto block = fibers(g, ObjectId(x)).source_fiber;
    CMatrix mx(block.size(), block.size());
    for (std::size_t j = 0; j < block.size(); ++j)
      for (std::size_t k = 0; k < block.size(); ++k)
        mx(j, k) = phi[g.compose_or_throw(block[j], g.inverse_or_throw(block[k]))];
    PsdVerdict v = check_psd(mx, tol, tol);
    if (first || v.min_eigenvalue < verdict.min_eigenvalue) {
      verdict.min_eigenvalue = v.min_eigenvalue;
      first = false;
    }
    if (!v.psd) {
      verdict.positive = false;
      verdict.object = x;
      verdict.min_eigenvalue = v.min_eigenvalue;
      verdict.witness = std::move(v.witness);
      verdict.block.clear();
      for (auto a : block) verdict.block.push_back(a.index);
      return verdict;
    }
  }
  return verdict;
}

Complex evaluate_state(const FiniteGroupoid& g, const GroupoidMeasure& m, std::span<const AlgebraElement> xi,
                       const AlgebraElement& f) {
  double norm = 0.0;
  for (const auto& v : xi) norm += inner_product(v, v, m).real();
  if (std::abs(norm - 1.0) > kIdentityTol)
    throw Error(ErrorCode::Normalization, "state vectors must satisfy sum ||xi_n||^2 = 1 (got " + std::to_string(norm) + ")");
  Complex acc = 0.0;
  for (const auto& v : xi) acc += inner_product(v, convolve(g, f, v, m), m);
  return acc;
}

AlgebraElement state_function(const FiniteGroupoid& g, const GroupoidMeasure& m, std::span<const AlgebraElement> xi) {
  AlgebraElement phi(g.n_morphisms());
  for (std::uint32_t a = 0; a < g.n_morphisms(); ++a)
    phi.values[a] = evaluate_state(g, m, xi, delta(g, MorphismId(a)));
  return phi;
}

Complex state_trace(const FiniteGroupoid& g, const GroupoidMeasure& m, const AlgebraElement& phi) {
  detail::require_size(g, phi.size());
  Complex acc = 0.0;
  for (std::uint32_t x = 0; x < g.n_objects(); ++x)
    acc += phi[g.unit_or_throw(ObjectId(x))] * m.object_weight(ObjectId(x));
  return acc;
}

std::uint32_t pair_dimension(std::size_t n_morphisms) {
  auto n = static_cast<std::uint32_t>(std::llround(std::sqrt(static_cast<double>(n_morphisms))));
  if (static_cast<std::size_t>(n) * n != n_morphisms || n == 0)
    throw Error(ErrorCode::DimensionMismatch, std::to_string(n_morphisms) + " values is not n^2 for any n");
  return n;
}

}  // namespace gqm
