#pragma once

// Validated complex matrices, eigenvalues and singular values in
// non-increasing order, the spectral spread, and the matrix-inequality
// checkers used as building blocks by the bound evaluators.

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "ritzvar/tolerances.hpp"
#include "ritzvar/vecmaj.hpp"

namespace ritzvar {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;

/// Dense complex matrix with finite entries.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(CMat m);

  const CMat& mat() const noexcept { return m_; }
  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }

 private:
  CMat m_;
};

/// Square complex matrix equal to its adjoint. Inputs within
/// hermiticity_tol·(1 + ‖A‖_max) of Hermitian are accepted and stored as
/// (A + A*)/2; anything further away throws InputError.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMat& m, const Tolerances& tol = {});

  /// Builds from data known to be Hermitian up to roundoff (always symmetrizes).
  static HermitianMatrix symmetrized(const CMat& m);

  const CMat& mat() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  /// ‖A − A*‖_max of the input before symmetrization.
  double correction() const noexcept { return correction_; }

 private:
  HermitianMatrix() = default;
  CMat m_;
  double correction_ = 0.0;
};

double max_abs(const CMat& m);

/// λ(A), non-increasing. Throws NumericalError if the reconstruction
/// residual ‖A − VΛV*‖ exceeds eig·(1 + ‖A‖).
OrderedSpectrum eigenvalues_desc(const HermitianMatrix& a, const Tolerances& tol = {});

/// Eigenvalues non-increasing together with matching unit eigenvectors (columns).
std::pair<OrderedSpectrum, CMat> eigen_decomposition(const HermitianMatrix& a,
                                                     const Tolerances& tol = {});

/// s(B), min(rows, cols) values, non-increasing.
OrderedSpectrum singular_values(const CMat& b);
OrderedSpectrum singular_values(const ComplexMatrix& b);

/// Spr⁺(A) = (λ_j(A) − λ_{d−j+1}(A))_{j=1..⌊d/2⌋}.
OrderedSpectrum spectral_spread(const HermitianMatrix& a, const Tolerances& tol = {});
OrderedSpectrum spectral_spread_from_eigenvalues(const OrderedSpectrum& lambda);

/// s(C + D) ≺_w s(C) + s(D).
MajorizationVerdict check_weyl_additive(const ComplexMatrix& c, const ComplexMatrix& d,
                                        const Tolerances& tol = {});
/// s(CD) ≺_w s(C)·s(D).
MajorizationVerdict check_weyl_multiplicative(const ComplexMatrix& c,
                                              const ComplexMatrix& d,
                                              const Tolerances& tol = {});
/// s(Re C) ≺_w s(C), with Re C = (C + C*)/2 (C square).
MajorizationVerdict check_real_part(const ComplexMatrix& c, const Tolerances& tol = {});

struct LidskiiVerdicts {
  MajorizationVerdict eigen_difference;  // λ(C) − λ(D) ≺ λ(C − D)
  MajorizationVerdict absolute;          // |λ(C) − λ(D)| ≺_w s(C − D)
};
LidskiiVerdicts check_lidskii(const HermitianMatrix& c, const HermitianMatrix& d,
                              const Tolerances& tol = {});

struct HatEmbeddingReport {
  OrderedSpectrum eigenvalues;  // λ(Ê)
  OrderedSpectrum expected;     // (s(E), −s(E))↓, zero-filled to length d
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};
/// Ê = [[0, E], [E*, 0]] has λ(Ê) = (s(E), −s(E*))↓.
HatEmbeddingReport hat_embedding_spectrum(const ComplexMatrix& e,
                                          const Tolerances& tol = {});

/// Spr⁺(A + B) against Spr⁺(A) + Spr⁺(B), checked as submajorization; the
/// verdict's trace_gap carries the trace difference.
MajorizationVerdict check_spread_subadditive(const HermitianMatrix& a,
                                             const HermitianMatrix& b,
                                             const Tolerances& tol = {});

/// 2·s(H₁₂) ≺_w Spr⁺(H), H₁₂ the top-right split_k × (d − split_k) block.
MajorizationVerdict check_offdiag_block(const HermitianMatrix& h, Eigen::Index split_k,
                                        const Tolerances& tol = {});

/// s(A₁D − DA₂) ≺_w s(D)·Spr⁺(A₁ ⊕ A₂).
MajorizationVerdict check_generalized_commutator(const HermitianMatrix& a1,
                                                 const HermitianMatrix& a2,
                                                 const ComplexMatrix& d,
                                                 const Tolerances& tol = {});

HermitianMatrix direct_sum(const HermitianMatrix& a1, const HermitianMatrix& a2);

}  // namespace ritzvar
