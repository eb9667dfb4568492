#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gqm/io.hpp"

namespace gqm::reports {

using io::json;

// Haar checks for a measure: left invariance, inverse relation, right
// invariance, disintegration and the modular function.
json measure_report(const FiniteGroupoid& g, const json& measure, bool exact, const std::string& origin);

json positive_type_report(const FiniteGroupoid& g, const AlgebraElement& phi, double tol = kPsdTol);

json enumerate_report(std::uint32_t n);
// samples == 0 means exhaustive.
json exchange_report(std::uint32_t n, std::size_t samples, std::uint64_t seed);
json flat_bisections_report(std::uint32_t n, bool exhaustive);

struct ChannelChecks {
  bool cp = false;
  bool flat_psd = false;
  bool unital = false;
  std::size_t falsify_trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t ancilla = 1;
  double tol = kPsdTol;  // PSD tolerance for cp and flat_psd
};

// "verdict" is "pass" iff every requested check passed (falsifier: no witness).
json channel_check_report(const Channel& ch, const ChannelChecks& checks);

json fourier_example(std::uint32_t n, const AlgebraElement& state);
json shift_example(std::uint32_t n, const AlgebraElement& state);

// Delta2, mu2 and the measure's own ratio mu2(Gamma)/mu2(Gamma^{-1}) for every
// class of the quotient over pair_groupoid(w.size()), exact arithmetic.
json modular_table(const std::vector<Rational>& w);

// Writes the example reports into out_dir; returns the summary written to summary.json.
json reproduce(const std::string& out_dir);

}  // namespace gqm::reports
