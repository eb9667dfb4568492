#include "gqm/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gqm {

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "hermiticity check needs a square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

HermitianEigen hermitian_eigen(const CMatrix& input) {
  if (input.rows() != input.cols()) throw Error(ErrorCode::DimensionMismatch, "eigensolver needs a square matrix");
  const std::size_t n = input.rows();
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
  CMatrix v = CMatrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += std::norm(a(p, p));
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (off <= 1e-32 * diag || off < 1e-300) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        // Phase the (p,q) entry real, then apply a real plane rotation.
        const Complex phase = a(p, q) / r;  // e^{i phi}
        const Complex back = std::conj(phase);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- A U with U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p,q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * back * akq;
          a(k, q) = s * akp + c * back * akq;
        }
        // A <- U^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * back * vkq;
          v(k, q) = s * vkp + c * back * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return a(l, l).real() < a(r, r).real(); });
  HermitianEigen out;
  out.values.reserve(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

PsdVerdict check_psd(const CMatrix& a, double psd_tol, double herm_tol) {
  PsdVerdict verdict;
  verdict.hermitian = hermiticity_defect(a) <= herm_tol;
  if (a.rows() == 0) {
    verdict.psd = verdict.hermitian;
    return verdict;
  }
  HermitianEigen e = hermitian_eigen(a);
  verdict.min_eigenvalue = e.values.front();
  verdict.witness.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) verdict.witness[i] = e.vectors(i, 0);
  verdict.psd = verdict.hermitian && verdict.min_eigenvalue >= -psd_tol;
  return verdict;
}

std::size_t exact_rank(EMatrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!(m(r, c) == ExactComplex(0))) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
    const ExactComplex inv = ExactComplex(1) / m(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m(r, c) == ExactComplex(0)) continue;
      const ExactComplex factor = m(r, c) * inv;
      for (std::size_t k = c; k < cols; ++k)
        if (!(m(rank, k) == ExactComplex(0))) m(r, k) -= factor * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

}  // namespace gqm
