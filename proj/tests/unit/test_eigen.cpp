#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "gqm/eigen.hpp"

using namespace gqm;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      a(i, j) = i == j ? Complex(d(rng), 0.0) : Complex(d(rng), d(rng));
      a(j, i) = std::conj(a(i, j));
    }
  return a;
}

Eigen::MatrixXcd to_eigen(const CMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

TEST_CASE("Jacobi eigenvalues agree with Eigen's solver") {
  std::mt19937_64 rng(12345);
  for (std::size_t n : {1, 2, 3, 4, 6, 9, 16}) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix a = random_hermitian(n, rng);
      const auto mine = hermitian_eigen(a);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(a));
      for (std::size_t k = 0; k < n; ++k) CHECK(mine.values[k] == doctest::Approx(oracle.eigenvalues()(k)).epsilon(1e-10));
      // A v = lambda v and orthonormal columns.
      for (std::size_t k = 0; k < n; ++k) {
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          Complex acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * mine.vectors(j, k);
          resid = std::max(resid, std::abs(acc - mine.values[k] * mine.vectors(i, k)));
        }
        CHECK(resid < 1e-10);
      }
      const CMatrix gram = mine.vectors.adjoint() * mine.vectors;
      CHECK(max_abs_diff(gram, CMatrix::identity(n)) < 1e-12);
    }
  }
}

TEST_CASE("degenerate spectra keep an orthonormal eigenbasis") {
  // SWAP on C^2 ⊗ C^2: eigenvalues -1, 1, 1, 1.
  CMatrix swap(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
  const auto e = hermitian_eigen(swap);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  for (std::size_t k = 1; k < 4; ++k) CHECK(e.values[k] == doctest::Approx(1.0));
  CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(4)) < 1e-12);

  const auto ones = hermitian_eigen(CMatrix::identity(5));
  for (double v : ones.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("check_psd verdicts") {
  CMatrix all_ones(3, 3);
  for (auto& z : all_ones.data()) z = 1.0;
  auto v = check_psd(all_ones);
  CHECK(v.psd);
  CHECK(v.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));

  CMatrix m(2, 2);
  m(0, 0) = -1.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = -1.0;
  v = check_psd(m);
  CHECK_FALSE(v.psd);
  CHECK(v.min_eigenvalue == doctest::Approx(-2.0));
  // The witness attains the minimum.
  Complex q = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) q += std::conj(v.witness[i]) * m(i, j) * v.witness[j];
  CHECK(q.real() == doctest::Approx(-2.0));

  CMatrix skew(2, 2);
  skew(0, 1) = 1.0;
  v = check_psd(skew);
  CHECK_FALSE(v.hermitian);
  CHECK_FALSE(v.psd);
}

TEST_CASE("exact rank") {
  EMatrix m(3, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(2, 2) = ExactComplex(Rational(1, 3), Rational(1));
  CHECK(exact_rank(m) == 2);
  CHECK(exact_rank(EMatrix(4, 2)) == 0);
  CHECK(exact_rank(EMatrix::identity(5)) == 5);
}
