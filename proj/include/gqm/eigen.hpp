#pragma once

#include <vector>

#include "gqm/matrix.hpp"

namespace gqm {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k is the unit eigenvector of values[k]
};

// Cyclic complex Jacobi rotations.
// Only the Hermitian part of `a` is used.
HermitianEigen hermitian_eigen(const CMatrix& a);

struct PsdVerdict {
  bool psd = false;
  bool hermitian = false;
  double min_eigenvalue = 0.0;
  std::vector<Complex> witness;  // eigenvector of min_eigenvalue
};

// Hermitian to `herm_tol` and min eigenvalue >= -psd_tol.
PsdVerdict check_psd(const CMatrix& a, double psd_tol = kPsdTol, double herm_tol = kPsdTol);

}  // namespace gqm
