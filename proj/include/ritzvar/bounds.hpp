#pragma once

// Ritz values, residuals, and evaluators that compute both sides of each
// Ritz-value variation bound and compare them by submajorization.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ritzvar/spectra.hpp"
#include "ritzvar/subspace.hpp"

namespace ritzvar {

/// Both sides of one inequality check plus the verdict.
struct BoundReport {
  std::string check_name;
  OrderedSpectrum lhs;
  OrderedSpectrum rhs;
  MajorizationVerdict verdict;
  /// lhs↓/rhs↓ entrywise after padding; NaN where rhs is not positive.
  std::optional<std::vector<double>> ratio_profile;
  std::string inputs_digest;
  std::map<std::string, double> tolerances;
  /// Extra numbers worth auditing (consistency gaps, allowances, ...).
  std::map<std::string, double> diagnostics;
  /// Set for conjectural checks: a failed verdict is a candidate
  /// counterexample, not a bug.
  bool conjectural = false;
};

/// Builds a report for lhs ≺_w rhs with tolerance tol_scale·(1 + max entry)
/// plus `extra_allowance`, and fills the ratio profile.
BoundReport make_report(std::string name, OrderedSpectrum lhs, OrderedSpectrum rhs,
                        double tol_scale, double extra_allowance = 0.0);

/// lhs↓/rhs↓ entrywise after zero-padding; NaN where rhs is not positive.
std::vector<double> ratio_profile(const OrderedSpectrum& lhs, const OrderedSpectrum& rhs);

/// λ(X*AX), non-increasing.
OrderedSpectrum ritz_values(const HermitianMatrix& a, const Isometry& x,
                            const Tolerances& tol = {});

/// R_X = AX − X(X*AX).
CMat residual(const HermitianMatrix& a, const Isometry& x);

/// |λ(X*AX) − λ(Y*AY)| sorted non-increasing.
OrderedSpectrum ritz_variation(const HermitianMatrix& a, const Isometry& x,
                               const Isometry& y, const Tolerances& tol = {});

enum class SpreadTruncation {
  Statement,  // s(A − B) at full length d
  Strict      // s_j(A − B) for j ≤ k only
};

/// s(X*AX − Y_r*BY_r) ≺_w s(A − B) + Θ↓·(Spr⁺(A) + Spr⁺(B))/2 with Y_r = UX.
BoundReport check_thm31(const HermitianMatrix& a, const HermitianMatrix& b,
                        const Isometry& x, const Isometry& y, const Tolerances& tol = {},
                        SpreadTruncation mode = SpreadTruncation::Statement);

/// Invariant case: s(X*AX − Y_r*AY_r) ≺_w Θ²·Spr⁺(A). Throws
/// PreconditionError when ‖R_X‖_max > invariance·(1 + ‖A‖_max).
BoundReport check_thm32(const HermitianMatrix& a, const Isometry& x, const Isometry& y,
                        const Tolerances& tol = {});

/// |λ(X*AX) − λ(Y*AY)| ≺_w Θ·Spr⁺(A), or Θ²·Spr⁺(A) in invariant mode.
BoundReport check_ritz_variation(const HermitianMatrix& a, const Isometry& x,
                                 const Isometry& y, bool invariant_mode,
                                 const Tolerances& tol = {});

/// Same LHS against sin Θ·Spr⁺(A) (or sin²Θ·Spr⁺(A)). Report-only.
BoundReport check_ka_conjecture(const HermitianMatrix& a, const Isometry& x,
                                const Isometry& y, bool invariant_mode,
                                const Tolerances& tol = {});

/// |λ(X*AX) − λ(Y*AY)| ≺_w [s(P R_X) + s(P R_Y)]·tan Θ with P the projector
/// onto X + Y. Requires an acute pair.
BoundReport check_residual_tangent(const HermitianMatrix& a, const Isometry& x,
                                   const Isometry& y, const Tolerances& tol = {});

/// One point of γ(t) = Y_r(t)* L(t) Y_r(t) with L(t) = (1 − t)A + tB and
/// Y_r(t) = U(t)X, together with the analytic derivative
///   γ′(t) = X*U(t)*(B − A)U(t)X + X*(A(t)U′(0) − U′(0)A(t))X,
/// A(t) = U(t)* L(t) U(t).
struct CurveSample {
  double t = 0.0;
  CMat gamma;
  CMat gamma_prime;
  OrderedSpectrum s_gamma_prime;
};

CurveSample curve_gamma(const HermitianMatrix& a, const HermitianMatrix& b,
                        const DirectRotation& rot, const Isometry& x, double t);

/// s(γ(1) − γ(0)) ≺_w ∫₀¹ s(γ′(t)) dt with composite Simpson on n_points
/// (odd, ≥ 3) nodes.
BoundReport check_curve_integral(const HermitianMatrix& a, const HermitianMatrix& b,
                                 const Isometry& x, const Isometry& y, int n_points = 201,
                                 const Tolerances& tol = {});

/// 64-bit FNV-1a over the bit patterns of the matrices, as 16 hex digits.
std::string digest_matrices(std::initializer_list<const CMat*> mats);

}  // namespace ritzvar
