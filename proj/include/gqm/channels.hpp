#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gqm/algebra.hpp"
#include "gqm/eigen.hpp"
#include "gqm/random.hpp"
#include "gqm/symmetroid.hpp"

namespace gqm {

// A dynamical map on the algebra of pair_groupoid(n), given by its kernel
// f on the quotient symmetroid (class ids ((l*n+j)*n+k)*n+m).
struct Channel {
  std::uint32_t n = 0;
  AlgebraElement kernel;
};

struct KrausFamily {
  std::uint32_t n = 0;
  std::vector<AlgebraElement> members;  // functions on pair_groupoid(n)
};

// Throws DimensionMismatch unless kernel has n^4 values.
Channel make_channel(std::uint32_t n, AlgebraElement kernel);

// out(l,m) = sum_{r,s} f((l,r),(s,m)) psi(r,s).
AlgebraElement apply_channel(const Channel& ch, const AlgebraElement& psi);
// Channel applied to the second factor of pair_groupoid(ancilla) x pair_groupoid(n),
// identity on the first; functions indexed as in direct_product.
AlgebraElement apply_extended(const Channel& ch, std::uint32_t ancilla, const AlgebraElement& psi);
// ch2 after ch1.
Channel compose(const Channel& ch2, const Channel& ch1);

// f((l,j),(k,m)) = sum_p V_p(l,j) conj(V_p(m,k)); at most n^2 members (TooManyKraus).
Channel from_kraus(const KrausFamily& ks);
// Indicator of the bisection: conjugation by the permutation matrix of sigma.
Channel from_flat_bisection(const QuotientSymmetroid& s, const FlatBisection& b);
Channel identity_channel(std::uint32_t n);
// f((l,j),(k,m)) = [j=m][k=l]: psi -> psi^T.
Channel transpose_channel(std::uint32_t n);

// A[(l,m)][(r,s)] = f((l,r),(s,m)): apply_channel as a matrix on vec(psi), vec index l*n+m.
CMatrix to_a_matrix(const Channel& ch);
// B[(l,r)][(m,s)] = A[(l,m)][(r,s)].
CMatrix to_b_matrix(const Channel& ch);
// Choi[(l,j)][(m,k)] = f((l,j),(k,m)).
CMatrix to_choi(const Channel& ch);
Channel from_a_matrix(std::uint32_t n, const CMatrix& a);
Channel from_b_matrix(std::uint32_t n, const CMatrix& b);
Channel from_choi(std::uint32_t n, const CMatrix& choi);

// Kraus family of a CP channel from the eigendecomposition of its Choi matrix;
// eigenvalues below tol are dropped.  Throws InvalidArgument if not CP.
KrausFamily kraus_from_choi(const Channel& ch, double tol = kPsdTol);

struct CpVerdict {
  bool cp = false;
  bool hermitian = false;
  double min_eigenvalue = 0.0;
  std::vector<Complex> witness;
};

// Choi Hermitian and PSD to tol.
CpVerdict is_cp(const Channel& ch, double tol = kPsdTol);

struct FlatPsdVerdict {
  bool flat_psd = true;
  double min_eigenvalue = 0.0;
  std::vector<std::uint32_t> block;  // class ids Gamma_j of the failing (or last) block
  std::vector<Complex> witness;
};

// Classes of S~ grouped so that Gamma_j ∘_H Gamma_k^{-H} is defined within a
// group; each group's Gram matrix G[k][j] = f(Gamma_j ∘_H Gamma_k^{-H}) must be PSD.
std::vector<std::vector<std::uint32_t>> horizontal_blocks(const QuotientSymmetroid& s);
FlatPsdVerdict is_flat_psd(const Channel& ch, double tol = kPsdTol);

// sum_p V_p ⋆ V_p* = chi_Omega (counting measure).
bool is_unital(const KrausFamily& ks, double tol = kIdentityTol);
// apply_channel(ch, chi_Omega) = chi_Omega.
bool is_unital(const Channel& ch, double tol = kIdentityTol);

// V ⋆ V = V and V* = V on pair_groupoid(n), counting measure.
bool dsf_check(std::uint32_t n, const AlgebraElement& v, double tol = kIdentityTol);

// V_l(j,k) = (1/n) exp(i 2 pi l (j-k) / n), l = 0..n-1.
KrausFamily fourier_family(std::uint32_t n);
// <psi>_l = sum_{r,s} (1/n) exp(-i 2 pi l r / n) psi(r,s) exp(i 2 pi l s / n).
std::vector<Complex> tomogram(std::uint32_t n, const AlgebraElement& psi);

// (phi^* psi)(beta) = psi(phi(beta)).
AlgebraElement pullback(const std::vector<std::uint32_t>& phi, const AlgebraElement& psi);

// Zero extension from pair_groupoid(n) to pair_groupoid(to); to >= n.
AlgebraElement pad_state(std::uint32_t n, const AlgebraElement& psi, std::uint32_t to);
Channel pad_channel(const Channel& ch, std::uint32_t to);

// States of the given rank built by the Gram construction, unit trace.
AlgebraElement random_positive_type(std::uint32_t n, std::uint32_t rank, Rng& rng);
KrausFamily random_kraus_family(std::uint32_t n, std::uint32_t members, Rng& rng);
// Kernel with Hermitian Choi matrix; spectrum drawn so that about half are CP.
Channel random_hermitian_kernel(std::uint32_t n, Rng& rng);

struct PositivityWitness {
  std::size_t trial = 0;
  std::uint32_t ancilla = 0;
  AlgebraElement input;   // positive type on pair(ancilla) x pair(n)
  AlgebraElement output;  // fails is_positive_type
  double min_eigenvalue = 0.0;
};

// Samples random positive-type inputs on pair(ancilla) x pair(n) and looks for
// one whose image under ch ⊗ id is not of positive type.  A sampler only.
std::optional<PositivityWitness> positivity_falsifier(const Channel& ch, std::size_t trials, std::uint64_t seed,
                                                      std::uint32_t ancilla = 1);

}  // namespace gqm
