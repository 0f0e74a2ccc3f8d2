#include "ritzvar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <thread>

#include "ritzvar/errors.hpp"
#include "ritzvar/io.hpp"

namespace ritzvar {

using nlohmann::json;

std::uint64_t Rng::splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t campaign_seed, std::uint64_t trial_index) {
  return Rng(splitmix64(campaign_seed ^ splitmix64(trial_index + 1)));
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

long long Rng::uniform_int(long long lo, long long hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

double Rng::normal() {
  // std::normal_distribution is implementation-defined; this is not.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CMat gen_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMat g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cdouble(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

HermitianMatrix gen_hermitian(Rng& rng, Eigen::Index d) {
  return HermitianMatrix::symmetrized(gen_complex(rng, d, d));
}

Isometry gen_isometry(Rng& rng, Eigen::Index d, Eigen::Index k) {
  for (;;) {
    try {
      return isometry_from_span(gen_complex(rng, d, k));
    } catch (const InputError&) {
      // rank-deficient draw, probability zero
    }
  }
}

CMat gen_unitary(Rng& rng, Eigen::Index k) {
  const CMat g = gen_complex(rng, k, k);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(k, k);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0.0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

std::pair<HermitianMatrix, Isometry> gen_invariant_pair(Rng& rng, Eigen::Index d,
                                                        Eigen::Index k) {
  HermitianMatrix a = gen_hermitian(rng, d);
  const auto [lambda, vecs] = eigen_decomposition(a);
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto j = rng.uniform_int(i, d - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  CMat x0(d, k);
  for (Eigen::Index j = 0; j < k; ++j) x0.col(j) = vecs.col(idx[static_cast<std::size_t>(j)]);
  const CMat x = x0 * gen_unitary(rng, k);
  return {std::move(a), isometry_from_span(x)};
}

Isometry gen_perturbed(Rng& rng, const Isometry& x, double eps) {
  for (;;) {
    try {
      return isometry_from_span(x.mat() + eps * gen_complex(rng, x.ambient_dim(), x.sub_dim()));
    } catch (const InputError&) {
    }
  }
}

Isometry gen_partner(Rng& rng, const Isometry& x) {
  if (rng.uniform() < 0.5) return gen_isometry(rng, x.ambient_dim(), x.sub_dim());
  const double eps = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
  return gen_perturbed(rng, x, eps);
}

ExampleInstance example_instance(Example which, double a, double b, double theta) {
  CMat am = CMat::Zero(4, 4);
  if (which == Example::Ex35) {
    am(0, 2) = am(2, 0) = a;
    am(1, 3) = am(3, 1) = b;
  } else {
    am(0, 0) = a;
    am(1, 1) = b;
  }
  CMat x = CMat::Zero(4, 2);
  x(0, 0) = x(1, 1) = 1.0;
  CMat y = CMat::Zero(4, 2);
  y(0, 0) = y(1, 1) = std::cos(theta);
  y(2, 0) = y(3, 1) = std::sin(theta);
  return {HermitianMatrix(am), Isometry(x), Isometry(y), y};
}

ExampleReport reproduce_example(Example which, double a, double b, double theta) {
  if (!(std::isfinite(a) && std::isfinite(b) && a > b && b > 0.0)) {
    throw InputError("example parameters need a > b > 0");
  }
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    throw InputError("example angle must lie in (0, pi/2)");
  }
  const ExampleInstance inst = example_instance(which, a, b, theta);
  const bool invariant = which == Example::Ex36;

  ExampleReport rep;
  rep.which = which;
  rep.a = a;
  rep.b = b;
  rep.theta = theta;

  const DirectRotation rot(decompose_pair(inst.x, inst.y));
  const CMat yr = rot.rotate(inst.x);
  rep.yr_error = max_abs(CMat(yr - inst.yr_closed_form));

  const CMat cx = inst.x.mat().adjoint() * inst.a.mat() * inst.x.mat();
  const CMat cy = yr.adjoint() * inst.a.mat() * yr;
  const OrderedSpectrum lx = eigenvalues_desc(HermitianMatrix::symmetrized(cx));
  const OrderedSpectrum ly = eigenvalues_desc(HermitianMatrix::symmetrized(cy));
  std::vector<double> diff(lx.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(lx[i] - ly[i]);
  rep.lhs = sort_desc(std::span<const double>(diff));

  const double f = invariant ? std::sin(theta) * std::sin(theta) : std::sin(2.0 * theta);
  rep.expected_lhs = OrderedSpectrum({a * f, b * f}, Ordering::NonIncreasing);
  for (std::size_t i = 0; i < rep.lhs.size(); ++i) {
    rep.closed_form_error =
        std::max(rep.closed_form_error, std::abs(rep.lhs[i] - rep.expected_lhs[i]));
  }
  const OrderedSpectrum s_gap = singular_values(CMat(cx - cy));
  for (std::size_t i = 0; i < rep.lhs.size(); ++i) {
    rep.lidskii_gap = std::max(rep.lidskii_gap, std::abs(rep.lhs[i] - s_gap[i]));
  }

  rep.spread = spectral_spread(inst.a);
  rep.theorem = check_ritz_variation(inst.a, inst.x, inst.y, invariant);
  rep.conjecture = check_ka_conjecture(inst.a, inst.x, inst.y, invariant);
  rep.rhs = rep.theorem.rhs;
  rep.conjecture_rhs = rep.conjecture.rhs;
  rep.ratio = rep.theorem.ratio_profile.value_or(std::vector<double>{});
  rep.closed_forms_hold =
      rep.closed_form_error <= 1e-10 && rep.yr_error <= 1e-10 && rep.lidskii_gap <= 1e-10;
  return rep;
}

SweepTable sweep_sharpness(Example which, double a, double b,
                           const std::vector<double>& theta_grid) {
  SweepTable table;
  table.which = which;
  if (theta_grid.empty()) return table;
  double theta_min = theta_grid.front();
  for (double theta : theta_grid) {
    const ExampleReport rep = reproduce_example(which, a, b, theta);
    table.rows.push_back({theta, rep.lhs.values(), rep.rhs.values(), rep.ratio});
    theta_min = std::min(theta_min, theta);
  }
  for (const SweepRow& row : table.rows) {
    if (row.theta != theta_min) continue;
    for (double r : row.ratio) {
      if (!(r >= 1.0 - 10.0 * theta_min * theta_min)) table.limit_ok = false;
    }
  }
  return table;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw InputError("sweep needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  }
  return grid;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "theta,lhs_1,lhs_2,rhs_1,rhs_2,ratio_1,ratio_2\n";
  for (const SweepRow& row : table.rows) {
    out += fmt(row.theta);
    for (const auto* v : {&row.lhs, &row.rhs, &row.ratio}) {
      for (double x : *v) out += "," + fmt(x);
    }
    out += "\n";
  }
  return out;
}

json sweep_to_json(const SweepTable& table) {
  json rows = json::array();
  for (const SweepRow& row : table.rows) {
    rows.push_back({{"theta", row.theta},
                    {"lhs", row.lhs},
                    {"rhs", row.rhs},
                    {"ratio", spectrum_to_json(row.ratio)}});
  }
  return {{"example", table.which == Example::Ex35 ? "ex35" : "ex36"},
          {"rows", std::move(rows)},
          {"limit_ok", table.limit_ok}};
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"thm31", false, "--a --b --x --y"},
      {"thm32", false, "--a --x --y"},
      {"ritz", false, "--a --x --y"},
      {"ritz-invariant", false, "--a --x --y"},
      {"conj1", true, "--a --x --y"},
      {"conj2", true, "--a --x --y"},
      {"residual-tangent", false, "--a --x --y"},
      {"curve", false, "--a --b --x --y [--points]"},
      {"lidskii", false, "--a --b"},
      {"weyl-add", false, "--a --b"},
      {"weyl-mul", false, "--a --b"},
      {"real-part", false, "--a"},
      {"offdiag", false, "--a [--split]"},
      {"commutator", false, "--a --b --x"},
      {"spread-subadd", false, "--a --b"},
      {"hat", false, "--a"},
  };
  return catalog;
}

const CheckInfo* find_check(const std::string& id) {
  for (const CheckInfo& c : check_catalog()) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

const CMat& need(const std::optional<CMat>& m, const char* flag, const std::string& id) {
  if (!m) throw InputError("check '" + id + "' needs " + flag);
  return *m;
}

BoundReport from_verdict(const std::string& name, MajorizationVerdict v, std::string digest,
                         bool with_ratio) {
  BoundReport r;
  r.check_name = name;
  r.lhs = OrderedSpectrum(v.lhs_sorted, Ordering::NonIncreasing);
  r.rhs = OrderedSpectrum(v.rhs_sorted, Ordering::NonIncreasing);
  if (with_ratio) r.ratio_profile = ratio_profile(r.lhs, r.rhs);
  r.verdict = std::move(v);
  r.inputs_digest = std::move(digest);
  r.tolerances["majorization"] = r.verdict.tolerance;
  return r;
}

}  // namespace

std::vector<BoundReport> evaluate_check(const std::string& id, const CheckInputs& in,
                                        const Tolerances& tol) {
  const CheckInfo* info = find_check(id);
  if (!info) throw InputError("unknown check '" + id + "'");

  auto herm = [&](const std::optional<CMat>& m, const char* flag) {
    return HermitianMatrix(need(m, flag, id), tol);
  };
  auto iso = [&](const std::optional<CMat>& m, const char* flag) {
    return Isometry(need(m, flag, id), tol);
  };

  std::vector<BoundReport> out;
  if (id == "thm31") {
    out.push_back(check_thm31(herm(in.a, "--a"), herm(in.b, "--b"), iso(in.x, "--x"),
                              iso(in.y, "--y"), tol,
                              in.strict ? SpreadTruncation::Strict
                                        : SpreadTruncation::Statement));
  } else if (id == "thm32") {
    out.push_back(check_thm32(herm(in.a, "--a"), iso(in.x, "--x"), iso(in.y, "--y"), tol));
  } else if (id == "ritz" || id == "ritz-invariant") {
    out.push_back(check_ritz_variation(herm(in.a, "--a"), iso(in.x, "--x"), iso(in.y, "--y"),
                                       id == "ritz-invariant", tol));
  } else if (id == "conj1" || id == "conj2") {
    out.push_back(check_ka_conjecture(herm(in.a, "--a"), iso(in.x, "--x"), iso(in.y, "--y"),
                                      id == "conj2", tol));
  } else if (id == "residual-tangent") {
    out.push_back(
        check_residual_tangent(herm(in.a, "--a"), iso(in.x, "--x"), iso(in.y, "--y"), tol));
  } else if (id == "curve") {
    out.push_back(check_curve_integral(herm(in.a, "--a"), herm(in.b, "--b"), iso(in.x, "--x"),
                                       iso(in.y, "--y"), in.points, tol));
  } else if (id == "lidskii") {
    const HermitianMatrix c = herm(in.a, "--a");
    const HermitianMatrix d = herm(in.b, "--b");
    const std::string digest = digest_matrices({&c.mat(), &d.mat()});
    LidskiiVerdicts v = check_lidskii(c, d, tol);
    out.push_back(from_verdict("lidskii", std::move(v.eigen_difference), digest, false));
    out.push_back(from_verdict("lidskii-abs", std::move(v.absolute), digest, true));
  } else if (id == "weyl-add" || id == "weyl-mul") {
    const ComplexMatrix c(need(in.a, "--a", id));
    const ComplexMatrix d(need(in.b, "--b", id));
    const std::string digest = digest_matrices({&c.mat(), &d.mat()});
    out.push_back(from_verdict(id,
                               id == "weyl-add" ? check_weyl_additive(c, d, tol)
                                                : check_weyl_multiplicative(c, d, tol),
                               digest, true));
  } else if (id == "real-part") {
    const ComplexMatrix c(need(in.a, "--a", id));
    out.push_back(
        from_verdict(id, check_real_part(c, tol), digest_matrices({&c.mat()}), true));
  } else if (id == "offdiag") {
    const HermitianMatrix h = herm(in.a, "--a");
    const std::string digest = digest_matrices({&h.mat()});
    Eigen::Index lo = 1;
    Eigen::Index hi = h.dim() - 1;
    if (in.split != 0) lo = hi = in.split;
    if (lo < 1 || hi > h.dim() - 1) {
      throw InputError("offdiag split must lie in [1, d-1]");
    }
    for (Eigen::Index k = lo; k <= hi; ++k) {
      BoundReport r = from_verdict(id, check_offdiag_block(h, k, tol), digest, true);
      r.diagnostics["split"] = static_cast<double>(k);
      out.push_back(std::move(r));
    }
  } else if (id == "commutator") {
    const HermitianMatrix a1 = herm(in.a, "--a");
    const HermitianMatrix a2 = herm(in.b, "--b");
    const ComplexMatrix d(need(in.x, "--x", id));
    out.push_back(from_verdict(id, check_generalized_commutator(a1, a2, d, tol),
                               digest_matrices({&a1.mat(), &a2.mat(), &d.mat()}), true));
  } else if (id == "spread-subadd") {
    const HermitianMatrix a = herm(in.a, "--a");
    const HermitianMatrix b = herm(in.b, "--b");
    out.push_back(from_verdict(id, check_spread_subadditive(a, b, tol),
                               digest_matrices({&a.mat(), &b.mat()}), true));
  } else if (id == "hat") {
    const ComplexMatrix e(need(in.a, "--a", id));
    const HatEmbeddingReport h = hat_embedding_spectrum(e, tol);
    // Equality check; partial sums are filled for the audit trail only.
    MajorizationVerdict v = submajorizes(h.eigenvalues, h.expected, h.tolerance);
    v.holds = h.holds;
    v.worst_margin = -h.max_deviation;
    v.tolerance = h.tolerance;
    BoundReport r = from_verdict(id, std::move(v), digest_matrices({&e.mat()}), false);
    r.tolerances["eig"] = h.tolerance;
    r.diagnostics["max_deviation"] = h.max_deviation;
    out.push_back(std::move(r));
  }
  for (BoundReport& r : out) r.conjectural = info->conjectural;
  return out;
}

void swap_sides(BoundReport& report) {
  std::swap(report.lhs, report.rhs);
  const double tol = report.verdict.tolerance;
  report.verdict = submajorizes(report.lhs, report.rhs, tol);
  if (report.ratio_profile) report.ratio_profile = ratio_profile(report.lhs, report.rhs);
}

TrialConfig normalized(TrialConfig config) {
  if (config.trials < 1) throw InputError("trials must be at least 1");
  if (config.dim < 0 || config.dim == 1) throw InputError("dim must be 0 (sampled) or >= 2");
  if (config.sub_dim < 0) throw InputError("subdim must be non-negative");
  if (config.dim > 0 && config.sub_dim > config.dim) {
    throw InputError("subdim must not exceed dim");
  }
  if (config.dim == 0 && config.sub_dim > 11) {
    throw InputError("subdim above 11 needs an explicit dim");
  }
  if (config.quadrature_points < 3 || config.quadrature_points % 2 == 0) {
    throw InputError("quadrature points must be odd and >= 3");
  }
  if (config.threads < 1) throw InputError("threads must be at least 1");
  std::vector<std::string> suite;
  if (config.suite.empty()) {
    for (const CheckInfo& c : check_catalog()) suite.push_back(c.id);
  } else {
    std::set<std::string> seen;
    for (const std::string& id : config.suite) {
      if (!find_check(id)) throw InputError("unknown check '" + id + "' in suite");
      if (seen.insert(id).second) suite.push_back(id);
    }
  }
  config.suite = std::move(suite);
  return config;
}

namespace {

// B = A + small perturbation half the time, an unrelated matrix otherwise.
HermitianMatrix gen_second(Rng& rng, const HermitianMatrix& a) {
  if (rng.uniform() < 0.5) return gen_hermitian(rng, a.dim());
  const double eps = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
  return HermitianMatrix::symmetrized(a.mat() + eps * gen_hermitian(rng, a.dim()).mat());
}

CheckInputs gen_inputs(const std::string& id, Rng& rng, Eigen::Index d, Eigen::Index k,
                       const TrialConfig& cfg) {
  CheckInputs in;
  in.points = cfg.quadrature_points;
  if (id == "thm31" || id == "curve" || id == "ritz" || id == "conj1") {
    const HermitianMatrix a = gen_hermitian(rng, d);
    const Isometry x = gen_isometry(rng, d, k);
    in.a = a.mat();
    if (id == "thm31" || id == "curve") in.b = gen_second(rng, a).mat();
    in.x = x.mat();
    in.y = gen_partner(rng, x).mat();
  } else if (id == "thm32" || id == "ritz-invariant" || id == "conj2") {
    auto [a, x] = gen_invariant_pair(rng, d, k);
    in.a = a.mat();
    in.x = x.mat();
    in.y = gen_partner(rng, x).mat();
  } else if (id == "residual-tangent") {
    if (rng.uniform() < 0.5) {
      auto [a, x] = gen_invariant_pair(rng, d, k);
      in.a = a.mat();
      in.x = x.mat();
    } else {
      in.a = gen_hermitian(rng, d).mat();
      in.x = gen_isometry(rng, d, k).mat();
    }
    const Isometry x(*in.x);
    Isometry y = gen_partner(rng, x);
    // Independent draws are acute almost surely; fall back to a nearby
    // subspace if this one is not.
    while (principal_angles(x, y)[0] >= std::numbers::pi / 2.0 - 1e-6) {
      y = gen_perturbed(rng, x, 0.1);
    }
    in.y = y.mat();
  } else if (id == "lidskii" || id == "spread-subadd") {
    const HermitianMatrix c = gen_hermitian(rng, d);
    in.a = c.mat();
    in.b = gen_second(rng, c).mat();
  } else if (id == "weyl-add") {
    const auto m = rng.uniform_int(1, d);
    in.a = gen_complex(rng, d, m);
    in.b = gen_complex(rng, d, m);
  } else if (id == "weyl-mul") {
    const auto m = rng.uniform_int(1, d);
    in.a = gen_complex(rng, d, k);
    in.b = gen_complex(rng, k, m);
  } else if (id == "real-part") {
    in.a = gen_complex(rng, d, d);
  } else if (id == "offdiag") {
    in.a = gen_hermitian(rng, d).mat();
  } else if (id == "commutator") {
    in.a = gen_hermitian(rng, k).mat();
    in.b = gen_hermitian(rng, k).mat();
    in.x = gen_complex(rng, k, k);
  } else if (id == "hat") {
    const Eigen::Index kk = std::min(k, d - 1);
    in.a = gen_complex(rng, kk, d - kk);
  }
  return in;
}

json inputs_to_json(const CheckInputs& in) {
  json j = json::object();
  if (in.a) j["a"] = matrix_to_json(*in.a, MatrixKind::General);
  if (in.b) j["b"] = matrix_to_json(*in.b, MatrixKind::General);
  if (in.x) j["x"] = matrix_to_json(*in.x, MatrixKind::General);
  if (in.y) j["y"] = matrix_to_json(*in.y, MatrixKind::General);
  return j;
}

}  // namespace

TrialRecord run_trial(const TrialConfig& config, long long trial_index) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = Rng::for_trial(config.seed, static_cast<std::uint64_t>(trial_index));

  TrialRecord rec;
  rec.trial_index = trial_index;
  const Eigen::Index k_fixed = config.sub_dim;
  rec.dim = config.dim > 0 ? config.dim : rng.uniform_int(std::max<Eigen::Index>(4, k_fixed + 1), 12);
  const Eigen::Index d = rec.dim;
  if (k_fixed > 0) {
    rec.sub_dim = k_fixed;
  } else if (trial_index % 2 == 0) {
    rec.sub_dim = rng.uniform_int(1, std::max<Eigen::Index>(1, d / 2));
  } else {
    rec.sub_dim = rng.uniform_int((d + 1) / 2, std::max<Eigen::Index>((d + 1) / 2, d - 1));
  }

  for (const std::string& id : config.suite) {
    const CheckInputs in = gen_inputs(id, rng, d, rec.sub_dim, config);
    std::vector<BoundReport> reports = evaluate_check(id, in, config.tolerances);
    bool failed = false;
    for (BoundReport& r : reports) {
      if (config.inject_fault) swap_sides(r);
      failed = failed || !r.verdict.holds;
      rec.reports.push_back(std::move(r));
    }
    if (failed) rec.inputs[id] = inputs_to_json(in);
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

json record_to_json(const TrialRecord& record, bool with_inputs) {
  json reports = json::array();
  for (const BoundReport& r : record.reports) reports.push_back(report_to_json(r));
  json j{{"trial", record.trial_index},
         {"dim", record.dim},
         {"sub_dim", record.sub_dim},
         {"reports", std::move(reports)}};
  if (with_inputs) j["inputs"] = record.inputs;
  return j;
}

namespace {

void append_line(std::ofstream& out, const std::filesystem::path& path, const json& j) {
  if (!out.is_open()) {
    out.open(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

FuzzOutcome run_fuzz(const TrialConfig& raw, const std::filesystem::path& out_path) {
  const TrialConfig config = normalized(raw);
  const auto start = std::chrono::steady_clock::now();

  FuzzOutcome outcome;
  outcome.violations_file = out_path.string() + ".violations.jsonl";
  outcome.archive_file = out_path.string() + ".conjecture-archive.jsonl";
  std::filesystem::remove(outcome.violations_file);
  std::filesystem::remove(outcome.archive_file);

  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_path.string());
  std::ofstream violations;
  std::ofstream archive;

  // Trials are independent, so a batch can run on several threads; lines
  // are still written in trial order.
  const long long batch = std::max(1, config.threads) * 16LL;
  std::vector<TrialRecord> records;
  for (long long first = 0; first < config.trials; first += batch) {
    const long long n = std::min(batch, config.trials - first);
    records.assign(static_cast<std::size_t>(n), TrialRecord{});
    std::atomic<long long> next{0};
    auto work = [&] {
      for (long long i; (i = next++) < n;) {
        records[static_cast<std::size_t>(i)] = run_trial(config, first + i);
      }
    };
    if (config.threads == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < config.threads; ++t) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }

    for (const TrialRecord& rec : records) {
      out << record_to_json(rec, false).dump() << '\n';
      bool theorem_fail = false;
      bool conjecture_fail = false;
      for (const BoundReport& r : rec.reports) {
        ++outcome.reports;
        if (r.verdict.holds) continue;
        if (r.conjectural) {
          ++outcome.conjecture_violations;
          conjecture_fail = true;
        } else {
          ++outcome.theorem_violations;
          theorem_fail = true;
        }
      }
      if (theorem_fail) append_line(violations, outcome.violations_file, record_to_json(rec, true));
      if (conjecture_fail) append_line(archive, outcome.archive_file, record_to_json(rec, true));
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + out_path.string());

  outcome.exit_code = outcome.theorem_violations > 0 ? 1 : 0;
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

}  // namespace ritzvar
