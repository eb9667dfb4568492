// gqm: command-line front end over the C API.
//
// Exit codes: 0 success (all requested checks pass), 1 a check failed,
// 2 bad input or usage.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gqm/gqm.h"

namespace {

using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Failure {
  gqm_status status;
};

void check(gqm_status s) {
  if (s != GQM_OK) throw Failure{s};
}

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { gqm_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
  json parsed() const { return json::parse(str()); }
};

struct GroupoidDeleter {
  void operator()(gqm_groupoid* g) const { gqm_groupoid_free(g); }
};
struct ChannelDeleter {
  void operator()(gqm_channel* c) const { gqm_channel_free(c); }
};
using Groupoid = std::unique_ptr<gqm_groupoid, GroupoidDeleter>;
using Channel = std::unique_ptr<gqm_channel, ChannelDeleter>;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failure{GQM_ERR_IO};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Groupoid load_groupoid(const std::string& path, bool validate) {
  gqm_groupoid* g = nullptr;
  check(gqm_groupoid_load(path.c_str(), validate, &g));
  return Groupoid(g);
}

Channel load_channel(const std::string& path) {
  gqm_channel* c = nullptr;
  check(gqm_channel_load(path.c_str(), &c));
  return Channel(c);
}

std::string fmt(double x) {
  if (std::abs(x) < 5e-16) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_complex(const json& z) {
  const double re = z.is_array() ? z[0].get<double>() : z.get<double>();
  const double im = z.is_array() ? z[1].get<double>() : 0.0;
  if (std::abs(im) < 5e-16) return fmt(re);
  if (std::abs(re) < 5e-16) return fmt(im) + "i";
  return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

// Prints a function on pair_groupoid(n) as an n x n array.
void print_square(std::ostream& os, const json& function, const std::string& indent = "  ") {
  const auto& v = function.at("values");
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  for (std::size_t j = 0; j < n; ++j) {
    os << indent;
    for (std::size_t k = 0; k < n; ++k) os << (k ? "  " : "") << fmt_complex(v[j * n + k]);
    os << "\n";
  }
}

void print_values(std::ostream& os, const json& function) {
  const auto& v = function.at("values");
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "  ") << fmt_complex(v[i]);
  os << "\n";
}

struct Options {
  bool json = false;
  std::string out;
};

// Writes text to --out if given, else stdout.
void deliver(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(o.out);
  if (!f || !(f << text)) {
    std::cerr << "error: cannot write " << o.out << "\n";
    throw Failure{GQM_ERR_IO};
  }
}

int verdict_exit(int ok) { return ok ? 0 : kExitFail; }

std::vector<std::uint32_t> parse_perm(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--perm", "expected comma-separated indices, got \"" + s + "\"");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw CLI::ValidationError("--perm", "empty permutation");
  return out;
}

void print_violations(const json& r, const std::string& name) {
  std::cout << "  " << name << ": " << r.at("verdict").get<std::string>() << " (" << r.at("violations").size()
            << " violations)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groupoid quantum mechanics toolkit: groupoids, symmetroids and channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gqm_version()));
  Options opt;
  app.add_flag("--json", opt.json, "Print the full JSON report");

  const auto dim = CLI::Range(1U, 12U);
  int code = 0;

  // groupoid
  auto* groupoid = app.add_subcommand("groupoid", "Build and validate finite groupoids");
  groupoid->require_subcommand(1);
  std::string groupoid_file;
  auto* g_validate = groupoid->add_subcommand("validate", "Check the groupoid axioms of a table file");
  g_validate->add_option("file", groupoid_file, "Groupoid JSON")->required()->check(CLI::ExistingFile);
  g_validate->callback([&] {
    auto g = load_groupoid(groupoid_file, false);
    Text report;
    int ok = 0;
    check(gqm_groupoid_validate(g.get(), &ok, report.out()));
    if (opt.json) {
      std::cout << report.str() << "\n";
    } else {
      const json r = report.parsed();
      std::cout << "groupoid: " << r["n_objects"] << " objects, " << r["n_morphisms"] << " morphisms"
                << (r["connected"].get<bool>() ? ", connected" : "") << "\n";
      std::cout << "verdict: " << r["verdict"].get<std::string>() << " (" << r["violations"].size() << " violations)\n";
      for (const auto& v : r["violations"]) std::cout << "  " << v["kind"].get<std::string>() << ": " << v["detail"].get<std::string>() << "\n";
    }
    code = verdict_exit(ok);
  });

  std::uint32_t n = 0;
  auto* g_pair = groupoid->add_subcommand("pair", "Emit the pair groupoid on n objects");
  g_pair->add_option("--n", n, "Number of objects")->required()->check(dim);
  g_pair->add_option("--out", opt.out, "Output file");
  g_pair->callback([&] {
    gqm_groupoid* raw = nullptr;
    check(gqm_groupoid_pair(n, &raw));
    Groupoid g(raw);
    Text text;
    check(gqm_groupoid_to_json(g.get(), text.out()));
    deliver(opt, text.str());
  });

  // measure
  auto* measure = app.add_subcommand("measure", "Haar-system checks");
  measure->require_subcommand(1);
  std::string measure_file;
  bool exact = false;
  auto* m_check = measure->add_subcommand("check", "Left invariance, inverse relation, disintegration, modular function");
  m_check->add_option("groupoid", groupoid_file, "Groupoid JSON")->required()->check(CLI::ExistingFile);
  m_check->add_option("measure", measure_file, "Measure JSON")->required()->check(CLI::ExistingFile);
  m_check->add_flag("--exact", exact, "Rational arithmetic");
  m_check->callback([&] {
    auto g = load_groupoid(groupoid_file, true);
    const std::string text = read_text(measure_file);
    Text report;
    int ok = 0;
    check(gqm_measure_check(g.get(), text.c_str(), measure_file.c_str(), exact, &ok, report.out()));
    if (opt.json) {
      std::cout << report.str() << "\n";
    } else {
      const json r = report.parsed();
      std::cout << "measure check (" << (exact ? "exact" : "floating point") << ")\n";
      for (const char* k : {"left_invariance", "inverse_relation", "disintegration"}) print_violations(r[k], k);
      std::cout << "  right_invariance (informational): " << r["right_invariance"]["verdict"].get<std::string>() << "\n";
      std::cout << "  modular: " << r["modular"]["verdict"].get<std::string>() << "\n";
      std::cout << "verdict: " << r["verdict"].get<std::string>() << "\n";
    }
    code = verdict_exit(ok);
  });

  // algebra
  auto* algebra = app.add_subcommand("algebra", "Convolution algebra of a groupoid");
  algebra->require_subcommand(1);
  std::string f_file, h_file, algebra_measure;
  double tol = -1.0;
  auto load_measure = [&]() -> std::string { return algebra_measure.empty() ? std::string() : read_text(algebra_measure); };

  auto* a_conv = algebra->add_subcommand("convolve", "f ⋆ h");
  a_conv->add_option("groupoid", groupoid_file, "Groupoid JSON")->required()->check(CLI::ExistingFile);
  a_conv->add_option("f_fn", f_file, "Function JSON")->required()->check(CLI::ExistingFile);
  a_conv->add_option("g_fn", h_file, "Second function JSON")->required()->check(CLI::ExistingFile);
  a_conv->add_option("--measure", algebra_measure, "Measure JSON (default: counting)")->check(CLI::ExistingFile);
  a_conv->callback([&] {
    auto g = load_groupoid(groupoid_file, true);
    const std::string f = read_text(f_file), h = read_text(h_file), m = load_measure();
    Text out;
    check(gqm_algebra_convolve(g.get(), f.c_str(), h.c_str(), m.empty() ? nullptr : m.c_str(), out.out()));
    if (opt.json) {
      std::cout << out.str() << "\n";
    } else {
      print_values(std::cout, out.parsed());
    }
  });

  auto* a_inv = algebra->add_subcommand("involute", "f*");
  a_inv->add_option("groupoid", groupoid_file, "Groupoid JSON")->required()->check(CLI::ExistingFile);
  a_inv->add_option("f_fn", f_file, "Function JSON")->required()->check(CLI::ExistingFile);
  a_inv->add_option("--measure", algebra_measure, "Measure JSON (default: counting)")->check(CLI::ExistingFile);
  a_inv->callback([&] {
    auto g = load_groupoid(groupoid_file, true);
    const std::string f = read_text(f_file), m = load_measure();
    Text out;
    check(gqm_algebra_involute(g.get(), f.c_str(), m.empty() ? nullptr : m.c_str(), out.out()));
    if (opt.json) {
      std::cout << out.str() << "\n";
    } else {
      print_values(std::cout, out.parsed());
    }
  });

  auto* a_pos = algebra->add_subcommand("check-positive", "Is phi of positive type?");
  a_pos->add_option("groupoid", groupoid_file, "Groupoid JSON")->required()->check(CLI::ExistingFile);
  a_pos->add_option("phi", f_file, "Function JSON")->required()->check(CLI::ExistingFile);
  a_pos->add_option("--tol", tol, "PSD tolerance")->check(CLI::NonNegativeNumber);
  a_pos->callback([&] {
    auto g = load_groupoid(groupoid_file, true);
    const std::string phi = read_text(f_file);
    Text report;
    int ok = 0;
    check(gqm_algebra_check_positive(g.get(), phi.c_str(), tol, &ok, report.out()));
    if (opt.json || !ok) {
      std::cout << report.str() << "\n";
    } else {
      const json r = report.parsed();
      std::cout << "positive type: pass (min block eigenvalue " << fmt(r["min_eigenvalue"].get<double>()) << ")\n";
    }
    code = verdict_exit(ok);
  });

  // symmetroid
  auto* sym = app.add_subcommand("symmetroid", "Quotient symmetroid over the pair groupoid");
  sym->require_subcommand(1);
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  auto* s_enum = sym->add_subcommand("enumerate", "List classes ((z,y),(x,w)) in canonical order");
  s_enum->add_option("--n", n, "Number of objects")->required()->check(dim);
  s_enum->callback([&] {
    Text report;
    check(gqm_symmetroid_enumerate(n, report.out()));
    if (opt.json) {
      std::cout << report.str() << "\n";
      return;
    }
    const json r = report.parsed();
    std::cout << r["count"] << " classes, " << r["vertical_units"] << " vertical units\n";
    for (const auto& c : r["classes"]) std::cout << "  ((" << c[0] << "," << c[1] << "),(" << c[2] << "," << c[3] << "))\n";
  });

  auto* s_ex = sym->add_subcommand("check-exchange", "Exchange identity over admissible quadruples");
  s_ex->add_option("--n", n, "Number of objects")->required()->check(dim);
  auto* samples_opt = s_ex->add_option("--samples", samples, "Sample this many quadruples instead of all")->check(CLI::PositiveNumber);
  s_ex->add_option("--seed", seed, "Seed for sampling")->needs(samples_opt);
  samples_opt->needs(s_ex->get_option("--seed"));
  s_ex->callback([&] {
    Text report;
    int ok = 0;
    check(gqm_symmetroid_check_exchange(n, samples, seed, &ok, report.out()));
    if (opt.json || !ok) {
      std::cout << report.str() << "\n";
    } else {
      const json r = report.parsed();
      if (samples) std::cout << "seed: " << seed << "\n";
      std::cout << r["violations"].size() << " violations / " << r["checked"] << " quadruples ("
                << r["mode"].get<std::string>() << ")\n";
    }
    code = verdict_exit(ok);
  });

  auto* s_flat = sym->add_subcommand("flat-bisections", "List flat bisections as permutations of the objects");
  s_flat->add_option("--n", n, "Number of objects")->required()->check(dim);
  s_flat->add_flag("--exhaustive", exhaustive, "Also search all bisections (n <= 3)");
  s_flat->callback([&] {
    Text report;
    int ok = 0;
    check(gqm_symmetroid_flat_bisections(n, exhaustive, &ok, report.out()));
    if (opt.json) {
      std::cout << report.str() << "\n";
    } else {
      const json r = report.parsed();
      std::cout << r["count"] << " flat bisections\n";
      for (const auto& p : r["permutations"]) {
        std::cout << " ";
        for (const auto& x : p) std::cout << " " << x;
        std::cout << "\n";
      }
      if (r.contains("exhaustive_flat_count")) std::cout << "exhaustive search found " << r["exhaustive_flat_count"] << "\n";
    }
    code = verdict_exit(ok);
  });

  // channel
  auto* chan = app.add_subcommand("channel", "Dynamical maps on the pair-groupoid algebra");
  chan->require_subcommand(1);
  std::string channel_file, state_spec, perm, as = "choi", format = "json";
  std::uint32_t pad_to = 0;

  auto* c_kraus = chan->add_subcommand("from-kraus", "Kernel of a Kraus family");
  c_kraus->add_option("kraus", channel_file, "Kraus JSON {\"n\", \"members\"}")->required()->check(CLI::ExistingFile);
  c_kraus->add_option("--out", opt.out, "Output file");
  c_kraus->callback([&] {
    gqm_channel* raw = nullptr;
    check(gqm_channel_load_kraus(channel_file.c_str(), &raw));
    Channel c(raw);
    Text text;
    check(gqm_channel_to_json(c.get(), text.out()));
    deliver(opt, text.str());
  });

  auto* c_bis = chan->add_subcommand("from-bisection", "Kernel of the flat bisection of a permutation");
  c_bis->add_option("--perm", perm, "Permutation sigma, e.g. \"1,2,0\"")->required();
  c_bis->add_option("--out", opt.out, "Output file");
  c_bis->callback([&] {
    const auto sigma = parse_perm(perm);
    gqm_channel* raw = nullptr;
    check(gqm_channel_from_permutation(sigma.data(), static_cast<std::uint32_t>(sigma.size()), &raw));
    Channel c(raw);
    Text text;
    check(gqm_channel_to_json(c.get(), text.out()));
    deliver(opt, text.str());
  });

  gqm_check_options checks{};
  checks.tol = -1.0;
  bool want_cp = false, want_flat = false, want_unital = false;
  auto* c_check = chan->add_subcommand("check", "CP, flat-PSD, unitality and positivity checks");
  c_check->add_option("channel", channel_file, "Channel JSON")->required()->check(CLI::ExistingFile);
  c_check->add_flag("--cp", want_cp, "Choi matrix PSD");
  c_check->add_flag("--flat-psd", want_flat, "Flat positive semidefiniteness");
  c_check->add_flag("--unital", want_unital, "Unit preserved");
  auto* falsify = c_check->add_option("--falsify-positivity", checks.falsify_trials, "Random positive-type trials")
                      ->check(CLI::PositiveNumber);
  auto* seed_opt = c_check->add_option("--seed", checks.seed, "Seed for the falsifier");
  falsify->needs(seed_opt);
  c_check->add_option("--ancilla", checks.ancilla, "Ancilla dimension M for the falsifier")->check(dim)->needs(falsify);
  c_check->add_option("--tol", checks.tol, "PSD tolerance")->check(CLI::NonNegativeNumber);
  c_check->callback([&] {
    checks.cp = want_cp;
    checks.flat_psd = want_flat;
    checks.unital = want_unital;
    if (!want_cp && !want_flat && !want_unital && checks.falsify_trials == 0) checks.cp = checks.flat_psd = checks.unital = 1;
    auto c = load_channel(channel_file);
    Text report;
    int ok = 0;
    check(gqm_channel_check(c.get(), &checks, &ok, report.out()));
    if (checks.falsify_trials) std::cerr << "seed: " << checks.seed << "\n";
    if (opt.json || !ok) {
      std::cout << report.str() << "\n";
    } else {
      const json r = report.parsed();
      for (const char* k : {"cp", "flat_psd", "unital", "positivity_falsifier"}) {
        if (!r.contains(k)) continue;
        std::cout << k << ": " << r[k]["verdict"].get<std::string>();
        if (r[k].contains("min_eigenvalue")) std::cout << " (min eigenvalue " << fmt(r[k]["min_eigenvalue"].get<double>()) << ")";
        if (r[k].contains("result")) std::cout << " (" << r[k]["result"].get<std::string>() << ")";
        std::cout << "\n";
      }
      std::cout << "verdict: pass\n";
    }
    code = verdict_exit(ok);
  });

  auto* c_apply = chan->add_subcommand("apply", "Apply a channel to a state");
  c_apply->add_option("channel", channel_file, "Channel JSON")->required()->check(CLI::ExistingFile);
  c_apply->add_option("state", state_spec, "\"delta:j,k\", \"units\" or a function JSON file")->required();
  c_apply->add_option("--pad-to", pad_to, "Zero-extend channel and state to this dimension")->check(dim);
  c_apply->callback([&] {
    auto c = load_channel(channel_file);
    Text out;
    check(gqm_channel_apply(c.get(), state_spec.c_str(), pad_to, out.out()));
    if (opt.json) {
      std::cout << out.str() << "\n";
    } else {
      print_square(std::cout, out.parsed()["output"], "");
    }
  });

  auto* c_export = chan->add_subcommand("export", "Choi, A- or B-matrix of a channel");
  c_export->add_option("channel", channel_file, "Channel JSON")->required()->check(CLI::ExistingFile);
  c_export->add_option("--as", as, "Representation")->check(CLI::IsMember({"choi", "a", "b"}));
  c_export->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  c_export->add_option("--out", opt.out, "Output file");
  c_export->callback([&] {
    auto c = load_channel(channel_file);
    const gqm_matrix_kind kind = as == "a" ? GQM_MATRIX_A : as == "b" ? GQM_MATRIX_B : GQM_MATRIX_CHOI;
    Text out;
    check(gqm_channel_export(c.get(), kind, format == "csv" ? GQM_FORMAT_CSV : GQM_FORMAT_JSON, out.out()));
    deliver(opt, out.str());
  });

  // examples
  auto* ex = app.add_subcommand("examples", "Worked examples");
  ex->require_subcommand(1);
  state_spec = "delta:0,0";
  auto example = [&](const char* name, auto fn) {
    auto* cmd = ex->add_subcommand(name, std::string(name) == "fourier" ? "Fourier decoherence channel" : "Shift-bisection channel");
    cmd->add_option("--n", n, "Number of objects")->required()->check(dim);
    cmd->add_option("--state", state_spec, "\"delta:j,k\", \"units\" or a function JSON file")->capture_default_str();
    cmd->callback([&, fn] {
      Text report;
      int ok = 0;
      check(fn(n, state_spec.c_str(), &ok, report.out()));
      if (opt.json) {
        std::cout << report.str() << "\n";
      } else {
        const json r = report.parsed();
        std::cout << "output:\n";
        print_square(std::cout, r["output"]);
        if (r.contains("tomogram")) {
          std::cout << "tomogram:";
          for (const auto& z : r["tomogram"]) std::cout << " " << fmt_complex(z);
          std::cout << "\n";
        }
        std::cout << "cp: " << r["cp"] << ", flat_psd: " << r["flat_psd"] << ", unital: " << r["unital"] << "\n";
        std::cout << "verdict: " << r["verdict"].get<std::string>() << "\n";
      }
      code = verdict_exit(ok);
    });
  };
  example("fourier", gqm_example_fourier);
  example("shift", gqm_example_shift);

  // reproduce
  std::string out_dir = "reports";
  auto* rep = app.add_subcommand("reproduce", "Write the example reports and their summary");
  rep->add_option("--out", out_dir, "Output directory")->capture_default_str();
  rep->callback([&] {
    Text summary;
    int ok = 0;
    check(gqm_reproduce(out_dir.c_str(), &ok, summary.out()));
    if (opt.json) {
      std::cout << summary.str() << "\n";
    } else {
      const json r = summary.parsed();
      for (const auto& a : r["assertions"]) std::cout << (a["pass"].get<bool>() ? "PASS " : "FAIL ") << a["name"].get<std::string>() << "\n";
      std::cout << "reports written to " << out_dir << "\n";
    }
    code = verdict_exit(ok);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  } catch (const Failure& f) {
    if (f.status != GQM_ERR_IO || *gqm_last_error()) std::cerr << "error (" << gqm_status_name(f.status) << "): " << gqm_last_error() << "\n";
    return kExitInput;
  }
  return code;
}
