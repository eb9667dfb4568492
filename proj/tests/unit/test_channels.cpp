#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <numbers>
#include <random>

#include "gqm/channels.hpp"
#include "gqm/error.hpp"

using namespace gqm;

namespace {

constexpr double kPi = std::numbers::pi;

std::uint32_t cls(std::uint32_t n, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return ((a * n + b) * n + c) * n + d;
}

AlgebraElement basis(std::uint32_t n, std::uint32_t j, std::uint32_t k) {
  AlgebraElement f(n * n);
  f.values[j * n + k] = 1.0;
  return f;
}

AlgebraElement units(std::uint32_t n) { return unit_element(pair_groupoid(n)); }

double max_diff(const AlgebraElement& a, const AlgebraElement& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

Eigen::MatrixXcd to_eigen(const CMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

Eigen::MatrixXcd as_eigen(std::uint32_t n, const AlgebraElement& f) {
  Eigen::MatrixXcd m(n, n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) m(j, k) = f.values[j * n + k];
  return m;
}

AlgebraElement from_eigen(const Eigen::MatrixXcd& m) {
  const auto n = static_cast<std::uint32_t>(m.rows());
  AlgebraElement f(n * n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) f.values[j * n + k] = m(j, k);
  return f;
}

// Kraus action as matrices: sum_p V_p psi V_p^dagger.
AlgebraElement kraus_oracle(const KrausFamily& ks, const AlgebraElement& psi) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ks.n, ks.n);
  for (const auto& v : ks.members) out += as_eigen(ks.n, v) * as_eigen(ks.n, psi) * as_eigen(ks.n, v).adjoint();
  return from_eigen(out);
}

double oracle_min_choi(const Channel& ch) {
  // Choi = sum_{jk} e_jk ⊗ K(e_jk), rows (l,j)... rebuilt from apply_channel.
  const std::uint32_t n = ch.n;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k) {
      const auto out = apply_channel(ch, basis(n, j, k));
      for (std::uint32_t l = 0; l < n; ++l)
        for (std::uint32_t m = 0; m < n; ++m) c(l * n + j, m * n + k) = out.values[l * n + m];
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
  return es.eigenvalues().minCoeff();
}

AlgebraElement random_element(std::size_t size, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  AlgebraElement f(size);
  for (auto& z : f.values) z = {d(rng), d(rng)};
  return f;
}

}  // namespace

TEST_CASE("apply examples") {
  const std::uint32_t n = 3;
  const auto id = from_kraus({n, {units(n)}});
  std::mt19937_64 rng(1);
  const auto psi = random_element(9, rng);
  CHECK(max_diff(apply_channel(id, psi), psi) == 0.0);
  CHECK(id.kernel == identity_channel(n).kernel);

  AlgebraElement k(81);
  k.values[cls(n, 2, 0, 1, 1)] = 1.0;
  const auto basis_channel = make_channel(n, k);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t s = 0; s < n; ++s)
      CHECK(apply_channel(basis_channel, basis(n, r, s)) == (r == 0 && s == 1 ? basis(n, 2, 1) : AlgebraElement(9)));

  const auto fourier = from_kraus(fourier_family(n));
  const auto out = apply_channel(fourier, basis(n, 0, 0));
  CHECK(max_diff(out, (1.0 / 3.0) * units(n)) < 1e-15);

  CHECK_THROWS_AS(make_channel(2, AlgebraElement(15)), Error);
  CHECK_THROWS_AS(apply_channel(id, AlgebraElement(4)), Error);
}

TEST_CASE("from_kraus matches the Kraus sum on random inputs") {
  Rng rng(5);
  std::mt19937_64 prng(5);
  for (std::uint32_t n : {2U, 3U}) {
    for (std::uint32_t members = 1; members <= n * n; ++members) {
      const auto ks = random_kraus_family(n, members, rng);
      const auto ch = from_kraus(ks);
      for (int trial = 0; trial < 5; ++trial) {
        const auto psi = random_element(n * n, prng);
        CHECK(max_diff(apply_channel(ch, psi), kraus_oracle(ks, psi)) < 1e-12);
      }
      CHECK(is_cp(ch).cp);
      CHECK(is_flat_psd(ch).flat_psd);
    }
  }
  KrausFamily too_many{2, std::vector<AlgebraElement>(5, units(2))};
  try {
    from_kraus(too_many);
    FAIL("expected TooManyKraus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyKraus);
  }
}

TEST_CASE("representations and round-trips") {
  const auto id = identity_channel(2);
  const auto choi = to_choi(id);
  for (std::uint32_t r = 0; r < 4; ++r)
    for (std::uint32_t c = 0; c < 4; ++c) {
      const bool on = r / 2 == r % 2 && c / 2 == c % 2;
      CHECK(choi(r, c) == Complex(on ? 1.0 : 0.0));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(choi));
  CHECK(es.eigenvalues()(3) == doctest::Approx(2.0));
  CHECK(std::abs(es.eigenvalues()(2)) < 1e-14);

  const auto t = transpose_channel(2);
  const auto swap = to_choi(t);
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b)
      for (std::uint32_t c = 0; c < 2; ++c)
        for (std::uint32_t d = 0; d < 2; ++d)
          CHECK(swap(a * 2 + b, c * 2 + d) == Complex(a == d && b == c ? 1.0 : 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ss(to_eigen(swap));
  CHECK(ss.eigenvalues()(0) == doctest::Approx(-1.0));
  for (int k = 1; k < 4; ++k) CHECK(ss.eigenvalues()(k) == doctest::Approx(1.0));

  std::mt19937_64 rng(7);
  for (std::uint32_t n : {2U, 3U}) {
    const auto ch = make_channel(n, random_element(n * n * n * n, rng));
    CHECK(from_a_matrix(n, to_a_matrix(ch)).kernel == ch.kernel);
    CHECK(from_b_matrix(n, to_b_matrix(ch)).kernel == ch.kernel);
    CHECK(from_choi(n, to_choi(ch)).kernel == ch.kernel);
    CHECK(to_b_matrix(ch) == to_choi(ch));
    const auto a = to_a_matrix(ch);
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t s = 0; s < n; ++s) {
        const auto out = apply_channel(ch, basis(n, r, s));
        for (std::uint32_t i = 0; i < n * n; ++i) CHECK(out.values[i] == a(i, r * n + s));
      }
  }
  CHECK_THROWS_AS(from_choi(2, CMatrix(3, 3)), Error);
}

TEST_CASE("composition") {
  Rng rng(9);
  std::mt19937_64 prng(9);
  const auto a = from_kraus(random_kraus_family(3, 2, rng));
  const auto b = from_kraus(random_kraus_family(3, 3, rng));
  const auto ab = compose(a, b);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = random_element(9, prng);
    CHECK(max_diff(apply_channel(ab, psi), apply_channel(a, apply_channel(b, psi))) < 1e-12);
  }
  CHECK(max_abs_diff(to_a_matrix(ab), to_a_matrix(a) * to_a_matrix(b)) < 1e-12);
  CHECK_THROWS_AS(compose(a, identity_channel(2)), Error);
}

TEST_CASE("CP verdicts") {
  const auto t = transpose_channel(2);
  const auto v = is_cp(t);
  CHECK_FALSE(v.cp);
  CHECK(v.hermitian);
  CHECK(v.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(v.witness.size() == 4);
  CHECK_FALSE(is_flat_psd(t).flat_psd);

  QuotientSymmetroid q(3);
  for (const auto& b : flat_bisections(q)) {
    const auto ch = from_flat_bisection(q, b);
    CHECK(is_cp(ch).cp);
    CHECK(is_flat_psd(ch).flat_psd);
    CHECK(is_unital(ch));
  }
  const Channel skew = make_channel(2, [] {
    AlgebraElement k(16);
    k.values[cls(2, 0, 0, 1, 1)] = Complex(0.0, 1.0);
    return k;
  }());
  CHECK_FALSE(is_cp(skew).hermitian);
  CHECK_FALSE(is_cp(skew).cp);
}

TEST_CASE("horizontal blocks partition the quotient") {
  for (std::uint32_t n : {2U, 3U}) {
    QuotientSymmetroid q(n);
    const auto blocks = horizontal_blocks(q);
    CHECK(blocks.size() == n * n);
    std::vector<int> seen(q.size(), 0);
    for (const auto& block : blocks) {
      CHECK(block.size() == n * n);
      for (auto j : block) {
        ++seen[j];
        for (auto k : block)
          CHECK(QuotientSymmetroid::horizontal_compose(q.at(j), QuotientSymmetroid::horizontal_inverse(q.at(k))).has_value());
      }
    }
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("flat PSD agrees with CP on random Hermitian kernels") {
  for (std::uint32_t n : {2U, 3U}) {
    Rng rng = stream_rng(2024, n);
    int cp_count = 0, disagreements = 0, oracle_disagreements = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto ch = random_hermitian_kernel(n, rng);
      const auto cp = is_cp(ch);
      CHECK(cp.hermitian);
      const bool flat = is_flat_psd(ch).flat_psd;
      cp_count += cp.cp;
      disagreements += flat != cp.cp;
      oracle_disagreements += (oracle_min_choi(ch) >= -kPsdTol) != cp.cp;
    }
    CHECK(disagreements == 0);
    CHECK(oracle_disagreements == 0);
    CHECK(cp_count > 20);
    CHECK(cp_count < 180);
  }
}

TEST_CASE("Kraus family recovered from the Choi matrix") {
  Rng rng(13);
  for (std::uint32_t n : {2U, 3U}) {
    const auto ch = from_kraus(random_kraus_family(n, 2, rng));
    const auto ks = kraus_from_choi(ch);
    CHECK(ks.members.size() == 2);
    const auto back = from_kraus(ks);
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t s = 0; s < n; ++s)
        CHECK(max_diff(apply_channel(back, basis(n, r, s)), apply_channel(ch, basis(n, r, s))) < 1e-10);
  }
  CHECK_THROWS_AS(kraus_from_choi(transpose_channel(2)), Error);
}

TEST_CASE("shift bisection channel") {
  const std::uint32_t n = 3;
  QuotientSymmetroid q(n);
  const auto shift = from_flat_bisection(q, shift_bisection(q));
  CHECK(apply_channel(shift, basis(n, 0, 1)) == basis(n, 1, 2));

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (std::uint32_t j = 0; j < n; ++j) u((j + 1) % n, j) = 1.0;
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t s = 0; s < n; ++s) {
      const Eigen::MatrixXcd e = as_eigen(n, basis(n, r, s));
      CHECK(apply_channel(shift, basis(n, r, s)) == from_eigen(u * e * u.adjoint()));
    }
  CHECK(apply_channel(shift, units(n)) == units(n));
  CHECK(is_unital(KrausFamily{n, {from_eigen(u)}}));

  // Pullback along the functor agrees with the channel.
  const auto phi = flat_bisection_functor(q, shift_bisection(q));
  std::mt19937_64 rng(3);
  const auto psi = random_element(9, rng);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t k = 0; k < n; ++k)
      CHECK(pullback(phi, psi).values[j * n + k] == psi.values[((j + 1) % n) * n + (k + 1) % n]);
}

TEST_CASE("flat bisection channels compose like bisections") {
  QuotientSymmetroid q(3);
  const auto flats = flat_bisections(q);
  int pairs = 0;
  for (const auto& a : flats)
    for (const auto& b : flats) {
      const auto prod = as_flat(q, bisection_product(q, a.base, b.base));
      REQUIRE(prod.has_value());
      const auto lhs = compose(from_flat_bisection(q, a), from_flat_bisection(q, b));
      const auto rhs = from_flat_bisection(q, *prod);
      for (std::uint32_t r = 0; r < 3; ++r)
        for (std::uint32_t s = 0; s < 3; ++s) CHECK(apply_channel(lhs, basis(3, r, s)) == apply_channel(rhs, basis(3, r, s)));
      ++pairs;
    }
  CHECK(pairs == 36);
}

TEST_CASE("flat bisection channels are *-automorphisms and preserve positive type") {
  QuotientSymmetroid q(3);
  const auto g = pair_groupoid(3);
  const auto m = counting_measure(g);
  std::mt19937_64 prng(17);
  Rng rng(17);
  for (const auto& b : flat_bisections(q)) {
    const auto ch = from_flat_bisection(q, b);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_element(9, prng);
      const auto h = random_element(9, prng);
      CHECK(max_diff(apply_channel(ch, convolve(g, f, h, m)), convolve(g, apply_channel(ch, f), apply_channel(ch, h), m)) <
            1e-12);
      CHECK(max_diff(apply_channel(ch, involute(g, f, m)), involute(g, apply_channel(ch, f), m)) < 1e-15);
      const auto rho = random_positive_type(3, 1 + trial % 3, rng);
      REQUIRE(is_positive_type(g, rho).positive);
      CHECK(is_positive_type(g, apply_channel(ch, rho)).positive);
      CHECK(is_positive_type(g, pullback(flat_bisection_functor(q, b), rho)).positive);
    }
  }
}

TEST_CASE("unitality") {
  CHECK(is_unital(fourier_family(3)));
  CHECK(is_unital(fourier_family(4)));
  CHECK_FALSE(is_unital(KrausFamily{3, {0.5 * units(3)}}));
  CHECK(is_unital(identity_channel(3)));
  CHECK_FALSE(is_unital(make_channel(2, AlgebraElement(16))));
}

TEST_CASE("DSF functions") {
  for (std::uint32_t n : {2U, 3U, 4U})
    for (const auto& v : fourier_family(n).members) CHECK(dsf_check(n, v));
  CHECK(dsf_check(3, units(3)));
  CHECK_FALSE(dsf_check(3, basis(3, 0, 1)));
}

TEST_CASE("Fourier decoherence") {
  for (std::uint32_t n : {3U, 4U}) {
    const auto ks = fourier_family(n);
    CHECK(ks.members.size() == n);
    for (std::uint32_t l = 0; l < n; ++l)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k)
          CHECK(std::abs(ks.members[l].values[j * n + k] - std::polar(1.0 / n, 2.0 * kPi * l * (double(j) - double(k)) / n)) <
                1e-15);

    const auto g = pair_groupoid(n);
    const auto m = counting_measure(g);
    AlgebraElement sum(n * n), sum_sq(n * n), sum_adj(n * n);
    for (const auto& v : ks.members) {
      sum += v;
      sum_sq += convolve(g, v, v, m);
      sum_adj += convolve(g, v, involute(g, v, m), m);
    }
    CHECK(max_diff(sum, units(n)) < 1e-12);
    CHECK(max_diff(sum_sq, units(n)) < 1e-12);
    CHECK(max_diff(sum_adj, units(n)) < 1e-12);

    const auto ch = from_kraus(ks);
    for (std::uint32_t r0 = 0; r0 < n; ++r0)
      for (std::uint32_t s0 = 0; s0 < n; ++s0) {
        const auto out = apply_channel(ch, basis(n, r0, s0));
        for (std::uint32_t p = 0; p < n; ++p)
          for (std::uint32_t q = 0; q < n; ++q) {
            const double expected = (p + n - q) % n == (r0 + n - s0) % n ? 1.0 / n : 0.0;
            CHECK(std::abs(out.values[p * n + q] - expected) < 1e-12);
          }
        CHECK(max_diff(apply_channel(ch, out), out) < 1e-12);
      }
    CHECK(is_cp(ch).cp);
    CHECK(is_flat_psd(ch).flat_psd);

    // The kernel is of positive type on the vertical groupoid of the quotient.
    QuotientSymmetroid qs(n);
    CHECK(is_positive_type(qs.vertical(), ch.kernel).positive);
  }
}

TEST_CASE("tomograms") {
  const auto t = tomogram(3, basis(3, 0, 0));
  for (const auto& v : t) CHECK(std::abs(v - 1.0 / 3.0) < 1e-15);
  const auto u = tomogram(3, (1.0 / 3.0) * units(3));
  Complex total = 0.0;
  for (const auto& v : u) total += v;
  CHECK(std::abs(total - 1.0) < 1e-15);

  // Channel output reassembled from the tomogram.
  std::mt19937_64 rng(19);
  const std::uint32_t n = 4;
  const auto psi = random_element(n * n, rng);
  const auto tom = tomogram(n, psi);
  const auto out = apply_channel(from_kraus(fourier_family(n)), psi);
  for (std::uint32_t p = 0; p < n; ++p)
    for (std::uint32_t m = 0; m < n; ++m) {
      Complex expected = 0.0;
      for (std::uint32_t l = 0; l < n; ++l) expected += tom[l] * std::polar(1.0 / n, 2.0 * kPi * l * (double(p) - double(m)) / n);
      CHECK(std::abs(out.values[p * n + m] - expected) < 1e-12);
    }
}

TEST_CASE("CP channels preserve positive type") {
  const auto g = pair_groupoid(3);
  for (std::size_t trial = 0; trial < 100; ++trial) {
    Rng rng = stream_rng(77, trial);
    const auto ch = from_kraus(random_kraus_family(3, 1 + trial % 9, rng));
    const auto rho = random_positive_type(3, 1 + trial % 3, rng);
    CHECK(is_positive_type(g, apply_channel(ch, rho)).positive);
  }
}

TEST_CASE("positivity falsifier") {
  Rng rng(23);
  const auto cp = from_kraus(random_kraus_family(2, 3, rng));
  CHECK_FALSE(positivity_falsifier(cp, 100, 1, 2).has_value());
  CHECK_FALSE(positivity_falsifier(transpose_channel(2), 100, 1, 1).has_value());
  const auto w = positivity_falsifier(transpose_channel(2), 100, 1, 2);
  REQUIRE(w.has_value());
  CHECK(w->min_eigenvalue < -1e-10);
  const auto g = direct_product(pair_groupoid(2), pair_groupoid(2));
  CHECK(is_positive_type(g, w->input).positive);
  CHECK_FALSE(is_positive_type(g, w->output).positive);
  CHECK(positivity_falsifier(transpose_channel(2), 100, 1, 2)->trial == w->trial);
  CHECK_THROWS_AS(positivity_falsifier(cp, 0, 1), Error);
}

TEST_CASE("extension by the identity matches a Kronecker oracle") {
  Rng rng(29);
  const auto ks = random_kraus_family(2, 2, rng);
  const auto ch = from_kraus(ks);
  std::mt19937_64 prng(29);
  const std::uint32_t M = 2, n = 2;
  const auto psi = random_element(M * M * n * n, prng);
  Eigen::MatrixXcd rho(M * n, M * n);
  for (std::uint32_t a = 0; a < M; ++a)
    for (std::uint32_t b = 0; b < M; ++b)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k) rho(a * n + j, b * n + k) = psi.values[(a * M + b) * n * n + j * n + k];
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(M * n, M * n);
  for (const auto& v : ks.members) {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(M * n, M * n);
    for (std::uint32_t a = 0; a < M; ++a) big.block(a * n, a * n, n, n) = as_eigen(n, v);
    expected += big * rho * big.adjoint();
  }
  const auto out = apply_extended(ch, M, psi);
  for (std::uint32_t a = 0; a < M; ++a)
    for (std::uint32_t b = 0; b < M; ++b)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k)
          CHECK(std::abs(out.values[(a * M + b) * n * n + j * n + k] - expected(a * n + j, b * n + k)) < 1e-12);
}

TEST_CASE("zero padding") {
  std::mt19937_64 rng(31);
  const auto psi = random_element(4, rng);
  const auto padded = pad_state(2, psi, 3);
  CHECK(padded.size() == 9);
  CHECK(padded.values[1] == psi.values[1]);
  CHECK(padded.values[2] == Complex(0.0));
  CHECK(padded.values[3] == psi.values[2]);
  const auto ch = pad_channel(transpose_channel(2), 3);
  CHECK(apply_channel(ch, padded) == pad_state(2, apply_channel(transpose_channel(2), psi), 3));
  CHECK_THROWS_AS(pad_state(3, AlgebraElement(9), 2), Error);
}
