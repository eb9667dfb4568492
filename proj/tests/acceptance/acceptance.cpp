// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gqm/channels.hpp"
#include "gqm/measure.hpp"
#include "gqm/symmetroid_algebra.hpp"

using namespace gqm;

namespace {

constexpr double kTol12 = 1e-12;
constexpr double kTol10 = 1e-10;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double max_diff(const AlgebraElement& a, const AlgebraElement& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

AlgebraElement basis(std::uint32_t n, std::uint32_t j, std::uint32_t k) {
  AlgebraElement f(n * n);
  f.values[j * n + k] = 1.0;
  return f;
}

EMatrix unit_matrix(std::uint32_t n, std::uint32_t a, std::uint32_t b) {
  EMatrix m(n, n);
  m(a, b) = 1;
  return m;
}

// delta_((a,b),(c,d)) -> e_ab ⊗ e_dc
std::pair<EMatrix, EMatrix> tensor_factors(std::uint32_t n, std::uint32_t id) {
  const std::uint32_t d = id % n, c = (id / n) % n, b = (id / (n * n)) % n, a = id / (n * n * n);
  return {unit_matrix(n, a, b), unit_matrix(n, d, c)};
}

EMatrix element_to_operator(std::uint32_t n, const ExactElement& f) {
  EMatrix out(n * n, n * n);
  for (std::uint32_t id = 0; id < f.size(); ++id) {
    if (f.values[id] == ExactComplex(0)) continue;
    const auto [l, r] = tensor_factors(n, id);
    const auto unit = kron(l, r);
    for (std::size_t i = 0; i < n * n; ++i)
      for (std::size_t j = 0; j < n * n; ++j)
        if (unit(i, j) != ExactComplex(0)) out(i, j) += f.values[id];
  }
  return out;
}

// Choi matrix assembled from the kernel independently of to_choi.
double oracle_min_choi(const Channel& ch) {
  const std::uint32_t n = ch.n;
  Eigen::MatrixXcd c(n * n, n * n);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t m = 0; m < n; ++m)
        for (std::uint32_t k = 0; k < n; ++k) c(l * n + j, m * n + k) = ch.kernel.values[((l * n + j) * n + k) * n + m];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(c).eigenvalues().minCoeff();
}

Outcome algebra_isomorphism() {
  Outcome o;
  std::size_t products = 0, involutions = 0;
  for (std::uint32_t n : {2U, 3U}) {
    auto g = pair_groupoid(n);
    auto m = counting_measure<Rational>(g);
    for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
      const auto da = delta<ExactComplex>(g, MorphismId(a));
      const auto ea = unit_matrix(n, a / n, a % n);
      for (std::uint32_t b = 0; b < g.n_morphisms(); ++b, ++products)
        o.require(as_matrix(n, convolve(g, da, delta<ExactComplex>(g, MorphismId(b)), m)) == ea * unit_matrix(n, b / n, b % n),
                  "product mismatch n=" + std::to_string(n));
      o.require(as_matrix(n, involute(g, da, m)) == ea.adjoint(), "involution mismatch");
      ++involutions;
    }
  }
  o.detail = o.pass ? std::to_string(products) + " products, " + std::to_string(involutions) + " involutions, exact" : o.detail;
  return o;
}

Outcome symmetroid_isomorphism() {
  Outcome o;
  std::size_t products = 0;
  for (std::uint32_t n : {2U, 3U}) {
    QuotientSymmetroid q(n);
    const auto m2 = induce_measure(q, counting_measure<Rational>(q.base()));
    const auto& v = q.vertical();
    for (std::uint32_t a = 0; a < q.size(); ++a) {
      const auto da = delta<ExactComplex>(v, MorphismId(a));
      const auto [la, ra] = tensor_factors(n, a);
      for (std::uint32_t b = 0; b < q.size(); ++b, ++products) {
        const auto [lb, rb] = tensor_factors(n, b);
        const auto prod = convolve_S(v, da, delta<ExactComplex>(v, MorphismId(b)), m2);
        o.require(element_to_operator(n, prod) == kron(la * lb, ra * rb), "product mismatch n=" + std::to_string(n));
      }
      o.require(element_to_operator(n, involute_S(v, da, m2)) == kron(la, ra).adjoint(), "involution mismatch");
    }
  }
  o.detail = o.pass ? std::to_string(products) + " products, n=2,3, exact" : o.detail;
  return o;
}

Outcome induced_modular() {
  Outcome o;
  QuotientSymmetroid q(3);
  const auto m2 = induce_measure(q, weighted_pair_measure<Rational>(q.base(), {1, 2, 4}));
  const auto rep = verify_modular_formula(q.vertical(), m2);
  std::size_t atom = 0, hom = 0;
  for (const auto& v : rep.violations) (v.check == "modular-atom" ? atom : hom)++;
  const auto eq = verify_induced_equivariance(q.vertical(), m2);
  // The measured ratio mu2(inverse)/mu2 is 1/delta(alpha) on every class.
  std::size_t alpha_only = 0;
  const std::vector<Rational> w{1, 2, 4};
  for (const auto& g : q.enumerate()) {
    const Rational da = (w[g.z] / w[g.y]) * (w[g.z] / w[g.y]);
    const auto c = MorphismId(q.index(g));
    alpha_only += m2.weights[q.vertical().inverse_or_throw(c).index] != m2.weights[c.index] / da;
  }
  o.pass = atom == 0 && hom == 0 && eq.ok();
  o.detail = "atom identity fails on " + std::to_string(atom) + "/" + std::to_string(q.size()) + " classes, homomorphism " +
             std::to_string(hom) + " violations, equivariance " + std::to_string(eq.violations.size()) + "/" +
             std::to_string(eq.checked) + " violations; ratio equals 1/delta(alpha) on " +
             std::to_string(q.size() - alpha_only) + "/" + std::to_string(q.size()) + " (exact)";
  return o;
}

Outcome channel_state_duality() {
  Outcome o;
  std::string counts;
  for (std::uint32_t n : {2U, 3U}) {
    Rng rng = stream_rng(2024, n);
    int cp_count = 0, disagree = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto ch = random_hermitian_kernel(n, rng);
      const bool cp = is_cp(ch).cp;
      cp_count += cp;
      disagree += is_flat_psd(ch).flat_psd != cp;
      disagree += (oracle_min_choi(ch) >= -kPsdTol) != cp;
    }
    o.require(disagree == 0, std::to_string(disagree) + " disagreements at n=" + std::to_string(n));
    o.require(cp_count > 0 && cp_count < 200, "degenerate sample at n=" + std::to_string(n));
    counts += (counts.empty() ? "n=" : " n=") + std::to_string(n) + ": 200 kernels, " + std::to_string(cp_count) + " CP;";
  }
  const auto t = is_cp(transpose_channel(2));
  o.require(!t.cp && std::abs(t.min_eigenvalue + 1.0) <= kTol10, "transpose control");
  o.require(!is_flat_psd(transpose_channel(2)).flat_psd, "transpose flat-psd control");
  char buf[64];
  std::snprintf(buf, sizeof buf, " transpose min eigenvalue %.12f", t.min_eigenvalue);
  if (o.pass) o.detail = counts + buf;
  return o;
}

Outcome shift_example() {
  Outcome o;
  const std::uint32_t n = 3;
  QuotientSymmetroid q(n);
  const auto shift = from_flat_bisection(q, shift_bisection(q));
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t s = 0; s < n; ++s)
      o.require(apply_channel(shift, basis(n, r, s)) == basis(n, (r + 1) % n, (s + 1) % n), "basis conjugation");
  o.require(is_cp(shift).cp && is_flat_psd(shift).flat_psd && is_unital(shift), "shift checks");
  const auto flats = flat_bisections(q);
  int pairs = 0;
  for (const auto& a : flats)
    for (const auto& b : flats) {
      const auto prod = as_flat(q, bisection_product(q, a.base, b.base));
      o.require(prod.has_value(), "product not flat");
      if (!prod) continue;
      const auto lhs = compose(from_flat_bisection(q, a), from_flat_bisection(q, b));
      const auto rhs = from_flat_bisection(q, *prod);
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t s = 0; s < n; ++s)
          o.require(apply_channel(lhs, basis(n, r, s)) == apply_channel(rhs, basis(n, r, s)), "composition law");
      ++pairs;
    }
  o.require(pairs == 36, "pair count");
  if (o.pass) o.detail = "9 basis states exact, cp/flat-psd/unital, " + std::to_string(pairs) + " composition pairs";
  return o;
}

Outcome fourier_example() {
  Outcome o;
  const std::uint32_t n = 3;
  const auto ks = fourier_family(n);
  const auto g = pair_groupoid(n);
  const auto m = counting_measure(g);
  const auto one = unit_element(g);
  AlgebraElement sum(n * n), sum_sq(n * n), sum_adj(n * n);
  for (const auto& v : ks.members) {
    sum += v;
    sum_sq += convolve(g, v, v, m);
    sum_adj += convolve(g, v, involute(g, v, m), m);
    o.require(dsf_check(n, v), "dsf_check");
  }
  o.require(max_diff(sum, one) <= kTol12 && max_diff(sum_sq, one) <= kTol12 && max_diff(sum_adj, one) <= kTol12, "sums");
  const auto ch = from_kraus(ks);
  double worst = 0.0, worst_idem = 0.0;
  for (std::uint32_t r0 = 0; r0 < n; ++r0)
    for (std::uint32_t s0 = 0; s0 < n; ++s0) {
      const auto out = apply_channel(ch, basis(n, r0, s0));
      for (std::uint32_t p = 0; p < n; ++p)
        for (std::uint32_t q = 0; q < n; ++q) {
          const double expected = (p + n - q) % n == (r0 + n - s0) % n ? 1.0 / n : 0.0;
          worst = std::max(worst, std::abs(out.values[p * n + q] - expected));
        }
      worst_idem = std::max(worst_idem, max_diff(apply_channel(ch, out), out));
    }
  o.require(worst <= kTol12, "closed form");
  o.require(worst_idem <= kTol12, "idempotence");
  char buf[128];
  std::snprintf(buf, sizeof buf, "9 inputs, max error %.1e, idempotence %.1e, sums and dsf ok", worst, worst_idem);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome exchange() {
  Outcome o;
  const auto full = check_exchange_exhaustive(QuotientSymmetroid(2));
  const auto sampled = check_exchange_sampled(QuotientSymmetroid(3), 10000, 42);
  o.pass = full.violations.empty() && sampled.violations.empty() && sampled.checked == 10000;
  o.detail = "n=2 " + std::to_string(full.violations.size()) + "/" + std::to_string(full.checked) + " exhaustive, n=3 " +
             std::to_string(sampled.violations.size()) + "/" + std::to_string(sampled.checked) + " sampled (seed 42)";
  return o;
}

Outcome positive_type_preservation() {
  Outcome o;
  const auto g = pair_groupoid(3);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    Rng rng = stream_rng(77, trial);
    const auto ch = from_kraus(random_kraus_family(3, 1 + trial % 9, rng));
    const auto rho = random_positive_type(3, 1 + trial % 3, rng);
    o.require(is_positive_type(g, rho, kTol10).positive, "input not positive type");
    const auto v = is_positive_type(g, apply_channel(ch, rho), kTol10);
    worst = std::min(worst, v.min_eigenvalue);
    o.require(v.positive, "output not positive type at trial " + std::to_string(trial));
  }
  const auto w = positivity_falsifier(transpose_channel(2), 100, 1, 2);
  o.require(w.has_value() && w->min_eigenvalue < -kTol10, "no witness for transpose at M=2");
  char buf[128];
  std::snprintf(buf, sizeof buf, "100 channels, worst min eigenvalue %.1e; transpose witness at trial %zu (%.3f)", worst,
                w ? w->trial : 0, w ? w->min_eigenvalue : 0.0);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome haar_suite() {
  Outcome o;
  std::size_t checked = 0;
  for (std::uint32_t n = 2; n <= 4; ++n) {
    auto g = pair_groupoid(n);
    std::vector<Rational> w;
    for (std::uint32_t j = 0; j < n; ++j) w.push_back(Rational(1 << j) / Rational(3));
    for (const auto& m : {counting_measure<Rational>(g), weighted_pair_measure<Rational>(g, w)}) {
      const auto l = verify_left_invariance(g, m), i = verify_inverse_relation(g, m), d = verify_disintegration(g, m);
      o.require(l.ok() && i.ok() && d.ok(), "n=" + std::to_string(n));
      checked += l.checked + i.checked + d.checked;
    }
  }
  if (o.pass) o.detail = "counting and weighted, n=2..4, " + std::to_string(checked) + " identities, exact";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"groupoid algebra isomorphism", algebra_isomorphism},
      {"symmetroid algebra isomorphism", symmetroid_isomorphism},
      {"induced modular function", induced_modular},
      {"flat-psd equals cp", channel_state_duality},
      {"shift bisection example", shift_example},
      {"fourier decoherence example", fourier_example},
      {"exchange identity", exchange},
      {"positive-type preservation", positive_type_preservation},
      {"haar suite", haar_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
