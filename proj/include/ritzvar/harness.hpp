#pragma once

// Random instance generators, closed-form example reproduction, sharpness
// sweeps and the fuzz campaign runner behind the CLI.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ritzvar/bounds.hpp"

namespace ritzvar {

/// Seedable 64-bit generator (std::mt19937_64) with portable uniform and
/// Gaussian draws. Stream splitting: trial i of a campaign seeded with S
/// uses the engine seeded by splitmix64(S ⊕ splitmix64(i + 1)), so trials
/// can run in any order or in parallel and still reproduce.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_trial(std::uint64_t campaign_seed, std::uint64_t trial_index);
  static std::uint64_t splitmix64(std::uint64_t x);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  long long uniform_int(long long lo, long long hi);
  /// Standard normal via Box-Muller on two uniforms.
  double normal();

 private:
  std::mt19937_64 engine_;
};

CMat gen_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// (G + G*)/2 with i.i.d. standard complex Gaussian G.
HermitianMatrix gen_hermitian(Rng& rng, Eigen::Index d);
/// Orthonormalized Gaussian d × k matrix.
Isometry gen_isometry(Rng& rng, Eigen::Index d, Eigen::Index k);
/// Haar-like k × k unitary.
CMat gen_unitary(Rng& rng, Eigen::Index k);
/// A random Hermitian A and X spanned by k of its eigenvectors (in a
/// random orthonormal basis of their span), so range(X) is A-invariant.
std::pair<HermitianMatrix, Isometry> gen_invariant_pair(Rng& rng, Eigen::Index d,
                                                        Eigen::Index k);
/// orth(X + ε·G): a subspace at controlled distance from range(X).
Isometry gen_perturbed(Rng& rng, const Isometry& x, double eps);
/// Either an independent isometry or a perturbation of x at a random scale.
Isometry gen_partner(Rng& rng, const Isometry& x);

enum class Example { Ex35, Ex36 };

struct ExampleInstance {
  HermitianMatrix a;
  Isometry x;
  Isometry y;              // span{f₁(θ), f₂(θ)}
  CMat yr_closed_form;     // (cos θ e₁ + sin θ e₃, cos θ e₂ + sin θ e₄)
};

/// The 4 × 4 matrices and subspaces of the two sharpness families.
ExampleInstance example_instance(Example which, double a, double b, double theta);

struct ExampleReport {
  Example which = Example::Ex35;
  double a = 0.0;
  double b = 0.0;
  double theta = 0.0;
  OrderedSpectrum lhs;          // |λ(X*AX) − λ(Y_r*AY_r)|
  OrderedSpectrum expected_lhs; // sin(2θ)(a,b) or sin²θ(a,b)
  OrderedSpectrum spread;
  OrderedSpectrum rhs;          // Θ·Spr⁺ or Θ²·Spr⁺
  OrderedSpectrum conjecture_rhs;
  std::vector<double> ratio;
  double closed_form_error = 0.0;
  double yr_error = 0.0;        // ‖UX − closed-form Y_r‖_max
  double lidskii_gap = 0.0;     // ‖ |λ(X*AX)−λ(Y_r*AY_r)| − s(X*AX − Y_r*AY_r) ‖_∞
  BoundReport theorem;
  BoundReport conjecture;
  bool closed_forms_hold = false;
};

/// Requires a > b > 0 and θ ∈ (0, π/2); throws InputError otherwise.
ExampleReport reproduce_example(Example which, double a, double b, double theta);

struct SweepRow {
  double theta = 0.0;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> ratio;
};

struct SweepTable {
  Example which = Example::Ex35;
  std::vector<SweepRow> rows;
  /// At the smallest θ every ratio is ≥ 1 − 10θ² (vacuous for an empty grid).
  bool limit_ok = true;
};

SweepTable sweep_sharpness(Example which, double a, double b,
                           const std::vector<double>& theta_grid);
std::vector<double> linear_grid(double lo, double hi, int steps);
std::string sweep_to_csv(const SweepTable& table);
nlohmann::json sweep_to_json(const SweepTable& table);

struct CheckInfo {
  std::string id;
  bool conjectural;
  std::string inputs;  // CLI flags consumed, e.g. "--a --x --y"
};

/// Every check the CLI and the fuzzer know, in canonical order.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(const std::string& id);

/// Named inputs of one check. Which ones are required depends on the check
/// (see CheckInfo::inputs); extra ones are ignored.
struct CheckInputs {
  std::optional<CMat> a;
  std::optional<CMat> b;
  std::optional<CMat> x;
  std::optional<CMat> y;
  Eigen::Index split = 0;  // offdiag: 0 means every split 1..d−1
  int points = 201;        // curve: Simpson nodes
  bool strict = false;     // thm31: k-truncated s(A − B)
};

/// Validates the inputs and runs one check. Most checks give one report;
/// lidskii gives two (signed and absolute) and offdiag one per split.
std::vector<BoundReport> evaluate_check(const std::string& id, const CheckInputs& in,
                                        const Tolerances& tol = {});

/// Self-test corruption: swaps the two sides and re-decides the verdict.
void swap_sides(BoundReport& report);

struct TrialConfig {
  std::uint64_t seed = 42;
  Eigen::Index dim = 0;      // 0: sample d ∈ [4, 12] per trial
  Eigen::Index sub_dim = 0;  // 0: sample k from both halves of [1, d−1]
  long long trials = 100;
  std::vector<std::string> suite;  // check ids; empty means all
  Tolerances tolerances{};
  int quadrature_points = 201;
  int threads = 1;
  /// Self-test hook: swap the two sides of every inequality in the suite.
  bool inject_fault = false;
};

/// Validates the config and expands an empty suite; throws InputError.
TrialConfig normalized(TrialConfig config);

struct TrialRecord {
  long long trial_index = 0;
  Eigen::Index dim = 0;
  Eigen::Index sub_dim = 0;
  std::vector<BoundReport> reports;
  /// Full inputs per check id, for archiving failing trials.
  nlohmann::json inputs = nlohmann::json::object();
  double wall_seconds = 0.0;
};

TrialRecord run_trial(const TrialConfig& config, long long trial_index);
/// One JSON line; excludes wall time so identical configs give identical bytes.
nlohmann::json record_to_json(const TrialRecord& record, bool with_inputs);

struct FuzzOutcome {
  int exit_code = 0;  // 0 all asserted checks hold, 1 theorem violation
  long long reports = 0;
  long long theorem_violations = 0;
  long long conjecture_violations = 0;
  std::filesystem::path violations_file;
  std::filesystem::path archive_file;
  double wall_seconds = 0.0;
};

/// Runs the campaign, writing one TrialRecord per line to `out`. Failing
/// trials are appended with full inputs to <out>.violations.jsonl (theorem
/// checks) or <out>.conjecture-archive.jsonl (conjectural checks).
FuzzOutcome run_fuzz(const TrialConfig& config, const std::filesystem::path& out);

}  // namespace ritzvar
