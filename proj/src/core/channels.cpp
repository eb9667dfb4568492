#include "gqm/channels.hpp"

#include <cmath>
#include <numbers>

#include "gqm/error.hpp"

namespace gqm {

namespace {

std::size_t quad(std::uint32_t n, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
}

void require_pair_function(std::uint32_t n, const AlgebraElement& psi) {
  if (psi.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorCode::DimensionMismatch, "expected a function on pair_groupoid(" + std::to_string(n) + ") with " +
                                                  std::to_string(n * n) + " values, got " + std::to_string(psi.size()));
}

void require_square(std::uint32_t n, const CMatrix& m) {
  if (m.rows() != static_cast<std::size_t>(n) * n || m.cols() != m.rows())
    throw Error(ErrorCode::DimensionMismatch, "expected an n^2 x n^2 matrix");
}

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

// Columns of a Haar-ish random unitary by Gram-Schmidt on Gaussian vectors.
CMatrix random_unitary(std::size_t dim, Rng& rng) {
  CMatrix u(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (;;) {
      std::vector<Complex> v(dim);
      for (auto& z : v) z = gaussian(rng);
      for (std::size_t p = 0; p < c; ++p) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) dot += std::conj(u(r, p)) * v[r];
        for (std::size_t r = 0; r < dim; ++r) v[r] -= dot * u(r, p);
      }
      double norm = 0.0;
      for (const auto& z : v) norm += std::norm(z);
      norm = std::sqrt(norm);
      if (norm < 1e-8) continue;
      for (std::size_t r = 0; r < dim; ++r) u(r, c) = v[r] / norm;
      break;
    }
  }
  return u;
}

// Random unit-trace PSD matrix of the given rank.
CMatrix random_density(std::size_t dim, std::uint32_t rank, Rng& rng) {
  CMatrix x(dim, dim);
  for (std::uint32_t p = 0; p < rank; ++p) {
    std::vector<Complex> v(dim);
    for (auto& z : v) z = gaussian(rng);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) x(i, j) += v[i] * std::conj(v[j]);
  }
  Complex trace = 0.0;
  for (std::size_t i = 0; i < dim; ++i) trace += x(i, i);
  for (auto& z : x.data()) z /= trace.real();
  return x;
}

}  // namespace

Channel make_channel(std::uint32_t n, AlgebraElement kernel) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "channel dimension must be at least 1");
  const std::size_t expected = static_cast<std::size_t>(n) * n * n * n;
  if (kernel.size() != expected)
    throw Error(ErrorCode::DimensionMismatch, "kernel for n=" + std::to_string(n) + " needs " + std::to_string(expected) +
                                                  " values, got " + std::to_string(kernel.size()));
  return {n, std::move(kernel)};
}

AlgebraElement apply_channel(const Channel& ch, const AlgebraElement& psi) {
  const std::uint32_t n = ch.n;
  require_pair_function(n, psi);
  AlgebraElement out(static_cast<std::size_t>(n) * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t m = 0; m < n; ++m) {
      Complex acc = 0.0;
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t s = 0; s < n; ++s) acc += ch.kernel.values[quad(n, l, r, s, m)] * psi.values[r * n + s];
      out.values[l * n + m] = acc;
    }
  return out;
}

AlgebraElement apply_extended(const Channel& ch, std::uint32_t ancilla, const AlgebraElement& psi) {
  const std::uint32_t n = ch.n;
  const std::size_t inner = static_cast<std::size_t>(n) * n;
  if (ancilla == 0 || psi.size() != static_cast<std::size_t>(ancilla) * ancilla * inner)
    throw Error(ErrorCode::DimensionMismatch, "state is not a function on pair(M) x pair(n)");
  AlgebraElement out(psi.size());
  for (std::size_t a = 0; a < static_cast<std::size_t>(ancilla) * ancilla; ++a) {
    AlgebraElement slice(inner);
    for (std::size_t i = 0; i < inner; ++i) slice.values[i] = psi.values[a * inner + i];
    const auto image = apply_channel(ch, slice);
    for (std::size_t i = 0; i < inner; ++i) out.values[a * inner + i] = image.values[i];
  }
  return out;
}

Channel compose(const Channel& ch2, const Channel& ch1) {
  if (ch1.n != ch2.n) throw Error(ErrorCode::DimensionMismatch, "channels act on different dimensions");
  const std::uint32_t n = ch1.n;
  AlgebraElement k(ch1.kernel.size());
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t kk = 0; kk < n; ++kk)
        for (std::uint32_t m = 0; m < n; ++m) {
          Complex acc = 0.0;
          for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t s = 0; s < n; ++s)
              acc += ch2.kernel.values[quad(n, l, r, s, m)] * ch1.kernel.values[quad(n, r, j, kk, s)];
          k.values[quad(n, l, j, kk, m)] = acc;
        }
  return {n, std::move(k)};
}

Channel from_kraus(const KrausFamily& ks) {
  const std::uint32_t n = ks.n;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Kraus family dimension must be at least 1");
  if (ks.members.size() > static_cast<std::size_t>(n) * n)
    throw Error(ErrorCode::TooManyKraus, std::to_string(ks.members.size()) + " members exceed the bound n^2 = " +
                                             std::to_string(n * n));
  for (const auto& v : ks.members) require_pair_function(n, v);
  AlgebraElement k(static_cast<std::size_t>(n) * n * n * n);
  for (const auto& v : ks.members)
    for (std::uint32_t l = 0; l < n; ++l)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t kk = 0; kk < n; ++kk)
          for (std::uint32_t m = 0; m < n; ++m)
            k.values[quad(n, l, j, kk, m)] += v.values[l * n + j] * std::conj(v.values[m * n + kk]);
  return {n, std::move(k)};
}

Channel from_flat_bisection(const QuotientSymmetroid& s, const FlatBisection& b) {
  if (!is_flat(s, b.base)) throw Error(ErrorCode::InvalidArgument, "bisection is not flat");
  AlgebraElement k(s.size());
  for (auto id : b.base.section) k.values[id] = 1.0;
  return {s.n(), std::move(k)};
}

Channel identity_channel(std::uint32_t n) {
  KrausFamily ks{n, {unit_element(pair_groupoid(n))}};
  return from_kraus(ks);
}

Channel transpose_channel(std::uint32_t n) {
  AlgebraElement k(static_cast<std::size_t>(n) * n * n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j) k.values[quad(n, l, j, l, j)] = 1.0;
  return {n, std::move(k)};
}

CMatrix to_a_matrix(const Channel& ch) {
  const std::uint32_t n = ch.n;
  CMatrix a(n * n, n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t m = 0; m < n; ++m) a(l * n + m, r * n + s) = ch.kernel.values[quad(n, l, r, s, m)];
  return a;
}

CMatrix to_b_matrix(const Channel& ch) {
  const std::uint32_t n = ch.n;
  const CMatrix a = to_a_matrix(ch);
  CMatrix b(n * n, n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t m = 0; m < n; ++m)
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t s = 0; s < n; ++s) b(l * n + r, m * n + s) = a(l * n + m, r * n + s);
  return b;
}

CMatrix to_choi(const Channel& ch) {
  const std::uint32_t n = ch.n;
  CMatrix c(n * n, n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t m = 0; m < n; ++m) c(l * n + j, m * n + k) = ch.kernel.values[quad(n, l, j, k, m)];
  return c;
}

Channel from_a_matrix(std::uint32_t n, const CMatrix& a) {
  require_square(n, a);
  AlgebraElement k(static_cast<std::size_t>(n) * n * n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t m = 0; m < n; ++m) k.values[quad(n, l, r, s, m)] = a(l * n + m, r * n + s);
  return {n, std::move(k)};
}

Channel from_b_matrix(std::uint32_t n, const CMatrix& b) {
  require_square(n, b);
  CMatrix a(n * n, n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t m = 0; m < n; ++m)
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t s = 0; s < n; ++s) a(l * n + m, r * n + s) = b(l * n + r, m * n + s);
  return from_a_matrix(n, a);
}

Channel from_choi(std::uint32_t n, const CMatrix& choi) {
  require_square(n, choi);
  AlgebraElement k(static_cast<std::size_t>(n) * n * n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t kk = 0; kk < n; ++kk)
        for (std::uint32_t m = 0; m < n; ++m) k.values[quad(n, l, j, kk, m)] = choi(l * n + j, m * n + kk);
  return {n, std::move(k)};
}

KrausFamily kraus_from_choi(const Channel& ch, double tol) {
  const CpVerdict v = is_cp(ch, tol);
  if (!v.cp) throw Error(ErrorCode::InvalidArgument, "channel is not completely positive; no Kraus family exists");
  const std::uint32_t n = ch.n;
  const HermitianEigen e = hermitian_eigen(to_choi(ch));
  KrausFamily ks{n, {}};
  for (std::size_t p = 0; p < e.values.size(); ++p) {
    if (e.values[p] <= tol) continue;
    const double scale = std::sqrt(e.values[p]);
    AlgebraElement vp(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < vp.size(); ++i) vp.values[i] = scale * e.vectors(i, p);
    ks.members.push_back(std::move(vp));
  }
  return ks;
}

CpVerdict is_cp(const Channel& ch, double tol) {
  const PsdVerdict v = check_psd(to_choi(ch), tol, tol);
  return {v.psd, v.hermitian, v.min_eigenvalue, v.witness};
}

std::vector<std::vector<std::uint32_t>> horizontal_blocks(const QuotientSymmetroid& s) {
  const auto all = s.enumerate();
  std::vector<int> assigned(all.size(), -1);
  std::vector<std::vector<std::uint32_t>> blocks;
  for (std::uint32_t a = 0; a < all.size(); ++a) {
    if (assigned[a] >= 0) continue;
    std::vector<std::uint32_t> block;
    for (std::uint32_t b = 0; b < all.size(); ++b) {
      const bool ab = QuotientSymmetroid::horizontal_compose(all[a], QuotientSymmetroid::horizontal_inverse(all[b])).has_value();
      const bool ba = QuotientSymmetroid::horizontal_compose(all[b], QuotientSymmetroid::horizontal_inverse(all[a])).has_value();
      if (ab && ba) block.push_back(b);
    }
    for (auto j : block)
      for (auto k : block)
        if (!QuotientSymmetroid::horizontal_compose(all[j], QuotientSymmetroid::horizontal_inverse(all[k])))
          throw Error(ErrorCode::InvalidArgument, "horizontal composability is not an equivalence on the classes");
    for (auto j : block) assigned[j] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

FlatPsdVerdict is_flat_psd(const Channel& ch, double tol) {
  const QuotientSymmetroid s(ch.n);
  FlatPsdVerdict verdict;
  bool first = true;
  for (const auto& block : horizontal_blocks(s)) {
    CMatrix gram(block.size(), block.size());
    for (std::size_t k = 0; k < block.size(); ++k)
      for (std::size_t j = 0; j < block.size(); ++j) {
        const auto h = *QuotientSymmetroid::horizontal_compose(s.at(block[j]),
                                                                QuotientSymmetroid::horizontal_inverse(s.at(block[k])));
        gram(k, j) = ch.kernel.values[s.index(h)];
      }
    PsdVerdict v = check_psd(gram, tol, tol);
    if (first || v.min_eigenvalue < verdict.min_eigenvalue) {
      verdict.min_eigenvalue = v.min_eigenvalue;
      verdict.block = block;
      verdict.witness = v.witness;
      first = false;
    }
    if (!v.psd) {
      verdict.flat_psd = false;
      verdict.min_eigenvalue = v.min_eigenvalue;
      verdict.block = block;
      verdict.witness = std::move(v.witness);
      return verdict;
    }
  }
  return verdict;
}

bool is_unital(const KrausFamily& ks, double tol) {
  const FiniteGroupoid g = pair_groupoid(ks.n);
  const auto m = counting_measure(g);
  AlgebraElement sum(g.n_morphisms());
  for (const auto& v : ks.members) sum += convolve(g, v, involute(g, v, m), m);
  const auto unit = unit_element(g);
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (std::abs(sum.values[i] - unit.values[i]) > tol) return false;
  return true;
}

bool is_unital(const Channel& ch, double tol) {
  const auto unit = unit_element(pair_groupoid(ch.n));
  const auto image = apply_channel(ch, unit);
  for (std::size_t i = 0; i < unit.size(); ++i)
    if (std::abs(image.values[i] - unit.values[i]) > tol) return false;
  return true;
}

bool dsf_check(std::uint32_t n, const AlgebraElement& v, double tol) {
  require_pair_function(n, v);
  const FiniteGroupoid g = pair_groupoid(n);
  const auto m = counting_measure(g);
  const auto square = convolve(g, v, v, m);
  const auto star = involute(g, v, m);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(square.values[i] - v.values[i]) > tol) return false;
    if (std::abs(star.values[i] - v.values[i]) > tol) return false;
  }
  return true;
}

KrausFamily fourier_family(std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "fourier_family needs n >= 1");
  KrausFamily ks{n, {}};
  for (std::uint32_t l = 0; l < n; ++l) {
    AlgebraElement v(static_cast<std::size_t>(n) * n);
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) {
        const double phase = 2.0 * std::numbers::pi * l * (static_cast<double>(j) - static_cast<double>(k)) / n;
        v.values[j * n + k] = std::polar(1.0 / n, phase);
      }
    ks.members.push_back(std::move(v));
  }
  return ks;
}

std::vector<Complex> tomogram(std::uint32_t n, const AlgebraElement& psi) {
  require_pair_function(n, psi);
  std::vector<Complex> out(n);
  for (std::uint32_t l = 0; l < n; ++l) {
    Complex acc = 0.0;
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t s = 0; s < n; ++s) {
        const double phase = 2.0 * std::numbers::pi * l * (static_cast<double>(s) - static_cast<double>(r)) / n;
        acc += std::polar(1.0 / n, phase) * psi.values[r * n + s];
      }
    out[l] = acc;
  }
  return out;
}

AlgebraElement pullback(const std::vector<std::uint32_t>& phi, const AlgebraElement& psi) {
  if (phi.size() != psi.size()) throw Error(ErrorCode::DimensionMismatch, "map and function sizes differ");
  AlgebraElement out(psi.size());
  for (std::size_t b = 0; b < phi.size(); ++b) out.values[b] = psi.values.at(phi[b]);
  return out;
}

AlgebraElement pad_state(std::uint32_t n, const AlgebraElement& psi, std::uint32_t to) {
  require_pair_function(n, psi);
  if (to < n) throw Error(ErrorCode::DimensionMismatch, "cannot pad to a smaller dimension");
  AlgebraElement out(static_cast<std::size_t>(to) * to);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) out.values[j * to + k] = psi.values[j * n + k];
  return out;
}

Channel pad_channel(const Channel& ch, std::uint32_t to) {
  const std::uint32_t n = ch.n;
  if (to < n) throw Error(ErrorCode::DimensionMismatch, "cannot pad to a smaller dimension");
  AlgebraElement k(static_cast<std::size_t>(to) * to * to * to);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t kk = 0; kk < n; ++kk)
        for (std::uint32_t m = 0; m < n; ++m) k.values[quad(to, l, j, kk, m)] = ch.kernel.values[quad(n, l, j, kk, m)];
  return {to, std::move(k)};
}

AlgebraElement random_positive_type(std::uint32_t n, std::uint32_t rank, Rng& rng) {
  return from_matrix(random_density(n, rank, rng));
}

KrausFamily random_kraus_family(std::uint32_t n, std::uint32_t members, Rng& rng) {
  if (members > n * n) throw Error(ErrorCode::TooManyKraus, "at most n^2 Kraus members");
  KrausFamily ks{n, {}};
  for (std::uint32_t p = 0; p < members; ++p) {
    AlgebraElement v(static_cast<std::size_t>(n) * n);
    for (auto& z : v.values) z = gaussian(rng);
    ks.members.push_back(std::move(v));
  }
  return ks;
}

Channel random_hermitian_kernel(std::uint32_t n, Rng& rng) {
  const std::size_t dim = static_cast<std::size_t>(n) * n;
  const CMatrix u = random_unitary(dim, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> spectrum(dim);
  for (auto& d : spectrum) d = unit(rng) < 0.25 ? 0.0 : unit(rng);
  if (unit(rng) < 0.5) spectrum[std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng)] = -(1e-3 + unit(rng));
  CMatrix choi(dim, dim);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) choi(i, j) += spectrum[p] * u(i, p) * std::conj(u(j, p));
  // Exact Hermitian symmetry of the kernel.
  for (std::size_t i = 0; i < dim; ++i) {
    choi(i, i) = choi(i, i).real();
    for (std::size_t j = i + 1; j < dim; ++j) choi(j, i) = std::conj(choi(i, j));
  }
  return from_choi(n, choi);
}

std::optional<PositivityWitness> positivity_falsifier(const Channel& ch, std::size_t trials, std::uint64_t seed,
                                                      std::uint32_t ancilla) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "positivity_falsifier needs at least one trial");
  if (ancilla == 0) throw Error(ErrorCode::InvalidArgument, "ancilla dimension must be at least 1");
  const std::uint32_t n = ch.n;
  const std::uint32_t dim = ancilla * n;
  const FiniteGroupoid g = direct_product(pair_groupoid(ancilla), pair_groupoid(n));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = stream_rng(seed, t);
    const auto rank = std::uniform_int_distribution<std::uint32_t>(1, dim)(rng);
    const CMatrix rho = random_density(dim, rank, rng);
    // Object (a, j) of the product is row a*n + j of rho.
    AlgebraElement input(g.n_morphisms());
    for (std::uint32_t a = 0; a < ancilla; ++a)
      for (std::uint32_t b = 0; b < ancilla; ++b)
        for (std::uint32_t j = 0; j < n; ++j)
          for (std::uint32_t k = 0; k < n; ++k)
            input.values[(a * ancilla + b) * n * n + j * n + k] = rho(a * n + j, b * n + k);
    AlgebraElement output = apply_extended(ch, ancilla, input);
    const PositiveTypeVerdict v = is_positive_type(g, output);
    if (!v.positive) return PositivityWitness{t, ancilla, std::move(input), std::move(output), v.min_eigenvalue};
  }
  return std::nullopt;
}

}  // namespace gqm
