#pragma once

namespace ritzvar {

/// Every numerical slack used by the library, in one place. Values marked
/// "relative" are multiplied by (1 + a norm of the data) at the point of use.
struct Tolerances {
  double majorization = 1e-10;  // relative, partial-sum margins
  double hermiticity = 1e-12;   // relative to ‖A‖_max
  double isometry = 1e-10;      // absolute, ‖X*X − I‖_max
  double eig = 1e-10;           // relative, eigen/SVD reconstruction residual
  double rank = 1e-10;          // relative smallest singular value in span orthonormalization
  double tol_int = 1e-8;        // principal cosine ≥ 1 − tol_int → intersection
  double tol_perp = 1e-8;       // principal cosine ≤ tol_perp → perpendicular pair
  double invariance = 1e-8;     // relative, ‖R_X‖_max for invariant-case checks
  double acute = 1e-8;          // largest angle must stay below π/2 − acute
  double quadrature = 1e-6;     // curve-integral allowance scale
};

/// Library defaults, with the majorization scale optionally overridden from
/// the environment (RITZVAR_TOL, falling back to TOOL_TOL).
Tolerances tolerances_from_env();

}  // namespace ritzvar
