// Command-line front end. Exit codes: 0 ok, 1 violated inequality or failed
// reproduction, 2 usage or input error.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ritzvar/errors.hpp"
#include "ritzvar/harness.hpp"
#include "ritzvar/io.hpp"

using nlohmann::json;
using namespace ritzvar;

namespace {

struct Options {
  std::string x, y, a, b;
  std::string format = "json";
  double tol = -1.0;
  double tol_int = -1.0;
  double tol_perp = -1.0;

  std::string check_id;
  Eigen::Index split = 0;
  int points = 201;
  bool strict = false;

  std::string example;
  double aval = 2.0, bval = 1.0, theta = 0.0;
  double theta_min = 1e-3, theta_max = 0.785398163397448;
  int steps = 10;

  long long trials = 100;
  Eigen::Index dim = 0, subdim = 0;
  std::uint64_t seed = 42;
  std::string suite;
  std::string out = "fuzz.jsonl";
  int threads = 1;
  bool inject_fault = false;
};

std::optional<CMat> maybe_load(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return read_matrix_file(path).data;
}

Example parse_example(const std::string& s) {
  if (s == "ex35") return Example::Ex35;
  if (s == "ex36") return Example::Ex36;
  throw InputError("unknown example '" + s + "' (use ex35 or ex36)");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_angles(const Options& o, Tolerances tol) {
  if (o.tol > 0) tol.isometry = o.tol;
  const Isometry x(read_matrix_file(o.x).data, tol);
  const Isometry y(read_matrix_file(o.y).data, tol);
  const OrderedSpectrum theta = principal_angles(x, y);
  if (o.format == "csv") {
    std::printf("index,theta\n");
    for (std::size_t i = 0; i < theta.size(); ++i) std::printf("%zu,%.17g\n", i + 1, theta[i]);
  } else if (o.format == "text") {
    for (double t : theta.values()) std::printf("%.17g\n", t);
  } else {
    std::cout << json{{"angles", spectrum_to_json(theta)}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_spread(const Options& o, const Tolerances& tol) {
  const HermitianMatrix a(read_matrix_file(o.a).data, tol);
  std::cout << json{{"eigenvalues", spectrum_to_json(eigenvalues_desc(a, tol))},
                    {"spread", spectrum_to_json(spectral_spread(a, tol))}}
                   .dump(2)
            << '\n';
  return 0;
}

int cmd_decompose(const Options& o, Tolerances tol) {
  if (o.tol_int > 0) tol.tol_int = o.tol_int;
  if (o.tol_perp > 0) tol.tol_perp = o.tol_perp;
  const Isometry x(read_matrix_file(o.x).data, tol);
  const Isometry y(read_matrix_file(o.y).data, tol);
  const DirectRotation rot(decompose_pair(x, y, tol));
  json j = decomposition_to_json(rot.decomposition());
  j["rotation"] = matrix_to_json(rot.unitary(), MatrixKind::General);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_check(const Options& o, const Tolerances& tol) {
  CheckInputs in;
  in.a = maybe_load(o.a);
  in.b = maybe_load(o.b);
  in.x = maybe_load(o.x);
  in.y = maybe_load(o.y);
  in.split = o.split;
  in.points = o.points;
  in.strict = o.strict;
  int code = 0;
  for (const BoundReport& r : evaluate_check(o.check_id, in, tol)) {
    std::cout << report_to_json(r).dump() << '\n';
    if (!r.verdict.holds && !r.conjectural) code = 1;
  }
  return code;
}

json example_to_json(const ExampleReport& r) {
  return {{"example", r.which == Example::Ex35 ? "ex35" : "ex36"},
          {"a", r.a},
          {"b", r.b},
          {"theta", r.theta},
          {"lhs", spectrum_to_json(r.lhs)},
          {"expected_lhs", spectrum_to_json(r.expected_lhs)},
          {"spread", spectrum_to_json(r.spread)},
          {"rhs", spectrum_to_json(r.rhs)},
          {"conjecture_rhs", spectrum_to_json(r.conjecture_rhs)},
          {"ratio", spectrum_to_json(r.ratio)},
          {"closed_form_error", r.closed_form_error},
          {"yr_error", r.yr_error},
          {"lidskii_gap", r.lidskii_gap},
          {"closed_forms_hold", r.closed_forms_hold},
          {"theorem", report_to_json(r.theorem)},
          {"conjecture", report_to_json(r.conjecture)}};
}

int cmd_example(const Options& o) {
  const ExampleReport r = reproduce_example(parse_example(o.example), o.aval, o.bval, o.theta);
  std::cout << example_to_json(r).dump(2) << '\n';
  return r.closed_forms_hold && r.theorem.verdict.holds ? 0 : 1;
}

int cmd_sweep(const Options& o) {
  const SweepTable t = sweep_sharpness(parse_example(o.example), o.aval, o.bval,
                                       linear_grid(o.theta_min, o.theta_max, o.steps));
  if (o.format == "json") {
    std::cout << sweep_to_json(t).dump(2) << '\n';
  } else {
    std::cout << sweep_to_csv(t);
  }
  return t.limit_ok ? 0 : 1;
}

int cmd_fuzz(const Options& o, const Tolerances& tol) {
  TrialConfig cfg;
  cfg.seed = o.seed;
  cfg.dim = o.dim;
  cfg.sub_dim = o.subdim;
  cfg.trials = o.trials;
  cfg.suite = split_list(o.suite);
  cfg.tolerances = tol;
  cfg.quadrature_points = o.points;
  cfg.threads = o.threads;
  cfg.inject_fault = o.inject_fault;
  const FuzzOutcome r = run_fuzz(cfg, o.out);
  std::fprintf(stderr,
               "fuzz: %lld reports, %lld theorem violations, %lld conjecture violations, "
               "%.2fs\n",
               r.reports, r.theorem_violations, r.conjecture_violations, r.wall_seconds);
  if (r.theorem_violations > 0) {
    std::fprintf(stderr, "fuzz: violating trials written to %s\n", r.violations_file.c_str());
  }
  if (r.conjecture_violations > 0) {
    std::fprintf(stderr, "fuzz: candidate counterexamples archived to %s\n",
                 r.archive_file.c_str());
  }
  return r.exit_code;
}

int cmd_list(const Options& o) {
  if (o.format == "json") {
    json j = json::array();
    for (const CheckInfo& c : check_catalog()) {
      j.push_back({{"id", c.id}, {"conjectural", c.conjectural}, {"inputs", c.inputs}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    for (const CheckInfo& c : check_catalog()) {
      std::printf("%-18s %-10s %s\n", c.id.c_str(), c.conjectural ? "conjecture" : "theorem",
                  c.inputs.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ritz-value perturbation bound checker"};
  app.require_subcommand(1);
  Options o;

  std::vector<std::string> check_ids;
  for (const CheckInfo& c : check_catalog()) check_ids.push_back(c.id);

  auto* angles = app.add_subcommand("angles", "principal angles between two subspaces");
  angles->add_option("--x", o.x, "isometry X")->required();
  angles->add_option("--y", o.y, "isometry Y")->required();
  angles->add_option("--tol", o.tol, "isometry tolerance");
  angles->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "text"}));

  auto* spread = app.add_subcommand("spread", "eigenvalues and spectral spread");
  spread->add_option("--a", o.a, "Hermitian A")->required();

  auto* decompose = app.add_subcommand("decompose", "five-part decomposition and rotation");
  decompose->add_option("--x", o.x, "isometry X")->required();
  decompose->add_option("--y", o.y, "isometry Y")->required();
  decompose->add_option("--tol-int", o.tol_int, "cosine slack for intersections");
  decompose->add_option("--tol-perp", o.tol_perp, "cosine cutoff for perpendicular directions");

  auto* check = app.add_subcommand("check", "run one inequality check on matrix files");
  check->add_option("id", o.check_id)->required()->check(CLI::IsMember(check_ids));
  check->add_option("--a", o.a, "Hermitian A (E for hat, A1 for commutator)")->required();
  check->add_option("--b", o.b, "Hermitian B (A2 for commutator)");
  check->add_option("--x", o.x, "isometry X (D for commutator)");
  check->add_option("--y", o.y, "isometry Y");
  check->add_option("--split", o.split, "offdiag block split (default: all)");
  check->add_option("--points", o.points, "Simpson nodes for curve");
  check->add_flag("--strict", o.strict, "thm31: truncate s(A-B) to k entries");

  auto* example = app.add_subcommand("example", "reproduce a closed-form example");
  example->add_option("which", o.example)->required()->check(CLI::IsMember({"ex35", "ex36"}));
  example->add_option("--aval", o.aval)->required();
  example->add_option("--bval", o.bval)->required();
  example->add_option("--theta", o.theta, "angle in (0, pi/2)")->required();

  auto* sweep = app.add_subcommand("sweep", "ratio profile over a grid of angles");
  sweep->add_option("which", o.example)->required()->check(CLI::IsMember({"ex35", "ex36"}));
  sweep->add_option("--aval", o.aval)->required();
  sweep->add_option("--bval", o.bval)->required();
  sweep->add_option("--theta-min", o.theta_min)->required();
  sweep->add_option("--theta-max", o.theta_max)->required();
  sweep->add_option("--steps", o.steps, "grid points, evenly spaced")->required();
  sweep->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}))->default_str("csv");

  auto* fuzz = app.add_subcommand("fuzz", "randomized campaign over the check suite");
  fuzz->add_option("--trials", o.trials)->required();
  fuzz->add_option("--dim", o.dim, "ambient dimension (0: sampled)");
  fuzz->add_option("--subdim", o.subdim, "subspace dimension (0: sampled)");
  fuzz->add_option("--seed", o.seed)->required();
  fuzz->add_option("--suite", o.suite, "comma-separated check ids (default: all)");
  fuzz->add_option("--out", o.out, "JSON-lines report path")->required();
  fuzz->add_option("--threads", o.threads, "worker threads (output does not depend on it)");
  fuzz->add_option("--points", o.points, "Simpson nodes for curve");
  fuzz->add_flag("--inject-fault", o.inject_fault, "self-test: swap both sides of every check");

  auto* list = app.add_subcommand("list-checks", "list every check id");
  list->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (sweep->parsed() && sweep->count("--format") == 0) o.format = "csv";
  if (list->parsed() && list->count("--format") == 0) o.format = "text";

  try {
    const Tolerances tol = tolerances_from_env();
    if (angles->parsed()) return cmd_angles(o, tol);
    if (spread->parsed()) return cmd_spread(o, tol);
    if (decompose->parsed()) return cmd_decompose(o, tol);
    if (check->parsed()) return cmd_check(o, tol);
    if (example->parsed()) return cmd_example(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (fuzz->parsed()) return cmd_fuzz(o, tol);
    if (list->parsed()) return cmd_list(o);
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "precondition failed: %s\n", e.what());
    return 2;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s (residual %g)\n", e.what(), e.residual());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
