#include "gqm/reports.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "gqm/error.hpp"
#include "gqm/symmetroid_algebra.hpp"

namespace gqm::reports {

namespace {

json witness_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(io::complex_to_json(z));
  return out;
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

template <class R>
json value_json(const R& r) {
  if constexpr (std::is_same_v<R, double>) {
    return r;
  } else {
    return to_string(r);
  }
}

template <class R>
json haar_checks(const FiniteGroupoid& g, const BasicMeasure<R>& m) {
  const auto left = verify_left_invariance(g, m);
  const auto inv = verify_inverse_relation(g, m);
  const auto right = verify_right_invariance(g, m);
  const auto dis = verify_disintegration(g, m);
  json out{{"left_invariance", io::violations_to_json(left)},
           {"inverse_relation", io::violations_to_json(inv)},
           {"right_invariance", io::violations_to_json(right)},
           {"disintegration", io::violations_to_json(dis)}};
  // nu_x is right-invariant only for unimodular measures; reported, not required.
  bool ok = left.ok() && inv.ok() && dis.ok();
  try {
    const auto d = modular(g, m);
    json values = json::array();
    for (const auto& v : d.values) values.push_back(value_json(v));
    out["modular"] = {{"verdict", "pass"}, {"values", values}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotHaar) throw;
    out["modular"] = {{"verdict", "fail"}, {"error", e.what()}};
    ok = false;
  }
  out["verdict"] = verdict(ok);
  return out;
}

// Maximal off-diagonal magnitude of psi in the discrete Fourier basis.
double fourier_offdiagonal(std::uint32_t n, const AlgebraElement& psi) {
  CMatrix f(n, n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t l = 0; l < n; ++l) f(j, l) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * std::numbers::pi * j * l / n);
  const CMatrix d = f.adjoint() * as_matrix(n, psi) * f;
  double worst = 0.0;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (a != b) worst = std::max(worst, std::abs(d(a, b)));
  return worst;
}

double max_diff(const AlgebraElement& a, const AlgebraElement& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

}  // namespace

json measure_report(const FiniteGroupoid& g, const json& measure, bool exact, const std::string& origin) {
  json out = exact ? haar_checks(g, io::exact_measure_from_json(g, measure, origin))
                   : haar_checks(g, io::measure_from_json(g, measure, origin));
  out["exact"] = exact;
  return out;
}

json positive_type_report(const FiniteGroupoid& g, const AlgebraElement& phi, double tol) {
  const auto v = is_positive_type(g, phi, tol);
  json out{{"verdict", verdict(v.positive)}, {"min_eigenvalue", v.min_eigenvalue}};
  if (!v.positive) out["witness"] = {{"source_object", v.object}, {"block", v.block}, {"eigenvector", witness_json(v.witness)}};
  return out;
}

json enumerate_report(std::uint32_t n) {
  const QuotientSymmetroid s(n);
  json classes = json::array();
  std::size_t units = 0;
  for (const auto& q : s.enumerate()) {
    classes.push_back(io::quotient_to_json(q));
    if (s.is_vertical_unit(q)) ++units;
  }
  return {{"n", n}, {"count", s.size()}, {"vertical_units", units}, {"classes", classes}};
}

json exchange_report(std::uint32_t n, std::size_t samples, std::uint64_t seed) {
  const QuotientSymmetroid s(n);
  const ExchangeReport rep = samples == 0 ? check_exchange_exhaustive(s) : check_exchange_sampled(s, samples, seed);
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back(json::array({io::quotient_to_json(s.at(x.g1)), io::quotient_to_json(s.at(x.g2)),
                             io::quotient_to_json(s.at(x.h1)), io::quotient_to_json(s.at(x.h2))}));
  json out{{"n", n}, {"mode", samples == 0 ? "exhaustive" : "sampled"}, {"checked", rep.checked},
           {"violations", v}, {"verdict", verdict(rep.ok())}};
  if (samples != 0) out["seed"] = seed;
  return out;
}

json flat_bisections_report(std::uint32_t n, bool exhaustive) {
  const QuotientSymmetroid s(n);
  json perms = json::array();
  for (const auto& b : flat_bisections(s)) perms.push_back(b.underlying_map);
  json out{{"n", n}, {"count", perms.size()}, {"permutations", perms}};
  if (exhaustive) {
    const std::size_t found = count_flat_bisections_exhaustive(s);
    out["exhaustive_flat_count"] = found;
    out["verdict"] = verdict(found == perms.size());
  } else {
    out["verdict"] = "pass";
  }
  return out;
}

json channel_check_report(const Channel& ch, const ChannelChecks& checks) {
  json out{{"n", ch.n}};
  bool ok = true;
  if (checks.cp) {
    const auto v = is_cp(ch, checks.tol);
    json r{{"verdict", verdict(v.cp)}, {"hermitian", v.hermitian}, {"min_eigenvalue", v.min_eigenvalue}};
    if (!v.cp) r["witness"] = witness_json(v.witness);
    out["cp"] = r;
    ok = ok && v.cp;
  }
  if (checks.flat_psd) {
    const auto v = is_flat_psd(ch, checks.tol);
    const QuotientSymmetroid s(ch.n);
    json r{{"verdict", verdict(v.flat_psd)}, {"min_eigenvalue", v.min_eigenvalue}};
    if (!v.flat_psd) {
      json block = json::array();
      for (auto id : v.block) block.push_back(io::quotient_to_json(s.at(id)));
      r["witness"] = {{"block", block}, {"eigenvector", witness_json(v.witness)}};
    }
    out["flat_psd"] = r;
    ok = ok && v.flat_psd;
  }
  if (checks.unital) {
    const bool u = is_unital(ch);
    out["unital"] = {{"verdict", verdict(u)}};
    ok = ok && u;
  }
  if (checks.falsify_trials > 0) {
    const auto w = positivity_falsifier(ch, checks.falsify_trials, checks.seed, checks.ancilla);
    json r{{"trials", checks.falsify_trials}, {"seed", checks.seed}, {"ancilla", checks.ancilla},
           {"verdict", w ? "fail" : "pass"}, {"result", w ? "witness" : "none-found"}};
    if (w)
      r["witness"] = {{"trial", w->trial},
                      {"min_eigenvalue", w->min_eigenvalue},
                      {"input", io::function_to_json(w->input)},
                      {"output", io::function_to_json(w->output)}};
    out["positivity_falsifier"] = r;
    ok = ok && !w;
  }
  out["verdict"] = verdict(ok);
  return out;
}

json fourier_example(std::uint32_t n, const AlgebraElement& state) {
  const KrausFamily ks = fourier_family(n);
  const Channel ch = from_kraus(ks);
  const AlgebraElement out = apply_channel(ch, state);
  const AlgebraElement twice = apply_channel(ch, out);
  json tomo = json::array();
  for (const auto& z : tomogram(n, state)) tomo.push_back(io::complex_to_json(z));
  json dsf = json::array();
  for (const auto& v : ks.members) dsf.push_back(dsf_check(n, v));
  const double offdiag = fourier_offdiagonal(n, out);
  const double idem = max_diff(twice, out);
  const bool cp = is_cp(ch).cp;
  const bool flat = is_flat_psd(ch).flat_psd;
  const bool unital = is_unital(ks);
  return {{"n", n},
          {"input", io::function_to_json(state)},
          {"output", io::function_to_json(out)},
          {"tomogram", tomo},
          {"fourier_offdiagonal", offdiag},
          {"idempotence_defect", idem},
          {"dsf", dsf},
          {"cp", cp},
          {"flat_psd", flat},
          {"unital", unital},
          {"verdict", verdict(cp && flat && unital && offdiag <= 1e-10 && idem <= kIdentityTol)}};
}

json shift_example(std::uint32_t n, const AlgebraElement& state) {
  const QuotientSymmetroid s(n);
  const FlatBisection b = shift_bisection(s);
  const Channel ch = from_flat_bisection(s, b);
  const AlgebraElement out = apply_channel(ch, state);
  CMatrix u(n, n);
  for (std::uint32_t j = 0; j < n; ++j) u((j + 1) % n, j) = 1.0;
  const AlgebraElement oracle = from_matrix(u * as_matrix(n, state) * u.adjoint());
  const double defect = max_diff(out, oracle);
  const bool cp = is_cp(ch).cp;
  const bool flat = is_flat_psd(ch).flat_psd;
  const bool unital = is_unital(ch);
  return {{"n", n},
          {"permutation", b.underlying_map},
          {"input", io::function_to_json(state)},
          {"output", io::function_to_json(out)},
          {"conjugation_defect", defect},
          {"cp", cp},
          {"flat_psd", flat},
          {"unital", unital},
          {"verdict", verdict(cp && flat && unital && defect == 0.0)}};
}

json modular_table(const std::vector<Rational>& w) {
  const auto n = static_cast<std::uint32_t>(w.size());
  const QuotientSymmetroid s(n);
  const ExactMeasure m = weighted_pair_measure<Rational>(s.base(), w);
  const ExactSymmetroidMeasure m2 = induce_measure(s, m);
  const auto ratio = empirical_modular(s.vertical(), m2);
  json rows = json::array();
  std::size_t mismatches = 0;
  for (std::uint32_t c = 0; c < s.size(); ++c) {
    const bool eq = ratio[c] == m2.modular[c];
    if (!eq) ++mismatches;
    rows.push_back({{"class", io::quotient_to_json(s.at(c))},
                    {"mu2", to_string(m2.weights[c])},
                    {"Delta2", to_string(m2.modular[c])},
                    {"mu2_ratio", to_string(ratio[c])},
                    {"matches", eq}});
  }
  json weights = json::array();
  for (const auto& x : w) weights.push_back(to_string(x));
  const auto equiv = verify_induced_equivariance(s.vertical(), m2);
  const auto formula = verify_modular_formula(s.vertical(), m2);
  std::size_t homomorphism_violations = 0;
  for (const auto& v : formula.violations)
    if (v.check == "modular-homomorphism") ++homomorphism_violations;
  return {{"n", n},
          {"w", weights},
          {"classes", rows},
          {"atom_mismatches", mismatches},
          {"homomorphism_violations", homomorphism_violations},
          {"equivariance_violations", equiv.violations.size()}};
}

json reproduce(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  json assertions = json::array();
  auto record = [&assertions](const std::string& name, bool ok) { assertions.push_back({{"name", name}, {"pass", ok}}); };

  {
    const std::uint32_t n = 3;
    const FiniteGroupoid g = pair_groupoid(n);
    json states = json::array();
    bool all = true;
    bool checks = true;
    for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
      json r = shift_example(n, delta(g, MorphismId(a)));
      all = all && r["conjugation_defect"].get<double>() == 0.0;
      checks = checks && r["cp"].get<bool>() && r["flat_psd"].get<bool>() && r["unital"].get<bool>();
      states.push_back(std::move(r));
    }
    io::write_file((dir / "shift_n3.json").string(), json{{"states", states}}.dump(2) + "\n");
    record("shift channel equals permutation conjugation on all 9 basis states", all);
    record("shift channel passes is_cp, is_flat_psd and is_unital", checks);
  }
  for (std::uint32_t n : {3U, 4U}) {
    const FiniteGroupoid g = pair_groupoid(n);
    json states = json::array();
    bool diagonal = true;
    bool checks = true;
    for (std::uint32_t a = 0; a < g.n_morphisms(); ++a) {
      json r = fourier_example(n, delta(g, MorphismId(a)));
      diagonal = diagonal && r["fourier_offdiagonal"].get<double>() <= 1e-10;
      checks = checks && r["cp"].get<bool>() && r["flat_psd"].get<bool>() && r["unital"].get<bool>();
      states.push_back(std::move(r));
    }
    io::write_file((dir / ("fourier_n" + std::to_string(n) + ".json")).string(), json{{"states", states}}.dump(2) + "\n");
    record("Fourier output diagonal in the Fourier basis, n=" + std::to_string(n), diagonal);
    record("Fourier channel passes is_cp, is_flat_psd and is_unital, n=" + std::to_string(n), checks);
  }
  {
    const json counting = modular_table({Rational(1), Rational(1), Rational(1)});
    const json weighted = modular_table({Rational(1), Rational(2), Rational(4)});
    io::write_file((dir / "modular_counting.json").string(), counting.dump(2) + "\n");
    io::write_file((dir / "modular_weighted.json").string(), weighted.dump(2) + "\n");
    record("Delta2 matches mu2(Gamma)/mu2(Gamma^-1), counting measure", counting["atom_mismatches"].get<std::size_t>() == 0);
    record("Delta2 matches mu2(Gamma)/mu2(Gamma^-1), weights (1,2,4)", weighted["atom_mismatches"].get<std::size_t>() == 0);
    record("Delta2 is a vertical homomorphism, weights (1,2,4)", weighted["homomorphism_violations"].get<std::size_t>() == 0);
    record("induced fibre measures are equivariant, weights (1,2,4)", weighted["equivariance_violations"].get<std::size_t>() == 0);
  }
  bool ok = true;
  for (const auto& a : assertions) ok = ok && a["pass"].get<bool>();
  json summary{{"assertions", assertions}, {"verdict", verdict(ok)}};
  io::write_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  return summary;
}

}  // namespace gqm::reports
