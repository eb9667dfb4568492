#include "gqm/symmetroid_algebra.hpp"

namespace gqm {

CMatrix restricted_operator(const QuotientSymmetroid& q, const AlgebraElement& f) {
  const auto counting = counting_measure(q.vertical());
  const std::uint32_t m = q.base().n_morphisms();
  CMatrix out(m, m);
  for (std::uint32_t col = 0; col < m; ++col) {
    const auto image = convolve(q.vertical(), f, pullback_embed(q, delta(q.base(), MorphismId(col))), counting);
    const auto psi = pullback_base(q, image);
    for (std::uint32_t row = 0; row < m; ++row) out(row, col) = psi.values[row];
  }
  return out;
}

namespace {

ExactComplex exact(const Complex& z) {
  // Restricted operators of basis classes have entries in {0, 1}.
  return {Rational(static_cast<long long>(std::llround(z.real()))), Rational(static_cast<long long>(std::llround(z.imag())))};
}

}  // namespace

std::size_t pullback_commutant_dimension(const QuotientSymmetroid& q) {
  const std::uint32_t m = q.base().n_morphisms();
  const std::uint32_t unknowns = m * m;
  // Unknown X(a,b) has column a*m+b; one equation per entry (i,j) per class.
  EMatrix system(static_cast<std::size_t>(q.size()) * unknowns, unknowns);
  std::size_t row = 0;
  for (std::uint32_t c = 0; c < q.size(); ++c) {
    const CMatrix r = restricted_operator(q, delta(q.vertical(), MorphismId(c)));
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j, ++row) {
        // (X R - R X)(i,j) = sum_k X(i,k) R(k,j) - R(i,k) X(k,j)
        for (std::uint32_t k = 0; k < m; ++k) {
          system(row, i * m + k) += exact(r(k, j));
          system(row, k * m + j) -= exact(r(i, k));
        }
      }
  }
  return unknowns - exact_rank(std::move(system));
}

}  // namespace gqm
