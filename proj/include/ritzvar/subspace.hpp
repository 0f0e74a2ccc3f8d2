#pragma once

// Subspaces as isometries, principal angles, the orthogonal decomposition
// of C^d induced by a pair of equal-dimensional subspaces, and the direct
// rotation between them together with its one-parameter path.

#include <memory>
#include <string>
#include <vector>

#include "ritzvar/spectra.hpp"

namespace ritzvar {

/// d × k matrix with orthonormal columns (X*X = I_k within tolerance).
class Isometry {
 public:
  explicit Isometry(CMat x, const Tolerances& tol = {});

  const CMat& mat() const noexcept { return x_; }
  Eigen::Index ambient_dim() const noexcept { return x_.rows(); }
  Eigen::Index sub_dim() const noexcept { return x_.cols(); }

  /// Orthogonal projector XX* onto the range.
  CMat projector() const { return x_ * x_.adjoint(); }

 private:
  CMat x_;
};

/// Orthonormal basis of the column span of `vectors` (the polar factor,
/// i.e. the isometry closest to the input). Throws InputError when the
/// smallest singular value is at most rank·σ_max.
Isometry isometry_from_span(const CMat& vectors, const Tolerances& tol = {});

/// Θ(X, Y), non-increasing, in [0, π/2]. Small angles come from the sines
/// s((I − XX*)Y), large ones from the cosines s(X*Y), so both ends of the
/// range keep full relative accuracy.
OrderedSpectrum principal_angles(const Isometry& x, const Isometry& y);

/// Five-part orthogonal decomposition
///   C^d = (X∩Y) ⊕ S₁ ⊕ S₂ ⊕ (X⊥∩Y⊥),
/// with S₁ = (X∩Y⊥) ⊕ (X∩G) ⊆ X and S₂ = (X⊥∩Y) ⊕ (X⊥∩G) ⊆ X⊥.
/// Columns of basis_s1 and basis_s2 are paired: the j-th column of S₁ is
/// rotated towards the j-th column of S₂ by theta_prime[j].
struct PairDecomposition {
  Eigen::Index ambient_dim = 0;
  Eigen::Index sub_dim = 0;
  Eigen::Index s = 0;  // dim X∩Y
  Eigen::Index p = 0;  // dim X∩Y⊥ = dim X⊥∩Y
  Eigen::Index r = 0;  // dim X∩G
  /// (π/2·𝟙_p, θ₁ ≥ … ≥ θ_r), θ_i ∈ (0, π/2).
  OrderedSpectrum theta_prime;
  CMat basis_xy;            // d × s
  CMat basis_s1;            // d × (p + r)
  CMat basis_s2;            // d × (p + r)
  CMat basis_xperp_yperp;   // d × (d − s − 2(p + r))
  double tol_int = 0.0;
  double tol_perp = 0.0;
  /// Principal cosines that fell within 10·tol of a classification threshold.
  std::vector<std::string> warnings;

  Eigen::Index generic_dim() const noexcept { return 2 * r; }
  /// [basis_xy | basis_s1 | basis_s2 | basis_xperp_yperp], a d × d unitary.
  CMat assembled_basis() const;
  /// Θ(X, Y) reconstructed as (theta_prime, 0_s), non-increasing.
  OrderedSpectrum angles() const;
};

PairDecomposition decompose_pair(const Isometry& x, const Isometry& y,
                                 double tol_int = 1e-8, double tol_perp = 1e-8);
PairDecomposition decompose_pair(const Isometry& x, const Isometry& y,
                                 const Tolerances& tol);

/// Unitary mapping X onto Y: identity on X∩Y and X⊥∩Y⊥, and on each paired
/// plane (S₁ column j, S₂ column j) the rotation [[cos θ, −sin θ], [sin θ, cos θ]].
class DirectRotation {
 public:
  explicit DirectRotation(PairDecomposition dec);

  const PairDecomposition& decomposition() const noexcept { return dec_; }
  const CMat& unitary() const noexcept { return u_; }

  /// diag(cos Θ′) and diag(sin Θ′).
  Eigen::VectorXd cos_block() const;
  Eigen::VectorXd sin_block() const;

  /// U(t): the same rotation with angles tΘ′. t ∈ [0, 1].
  CMat path(double t) const;
  /// U′(0), skew-Hermitian: −D_Θ′ coupling S₂ → S₁ and D_Θ′ coupling S₁ → S₂.
  CMat generator() const;

  /// Y_r = U·X.
  CMat rotate(const Isometry& x) const { return u_ * x.mat(); }

  /// U expressed in the decomposition basis (should be the block pattern).
  CMat in_decomposition_basis() const;

 private:
  CMat rotation_with_angles(const Eigen::VectorXd& angles) const;

  PairDecomposition dec_;
  CMat u_;
};

DirectRotation direct_rotation(const PairDecomposition& dec);
CMat rotation_path(const DirectRotation& rot, double t);
CMat rotation_generator(const DirectRotation& rot);

/// Orthonormal basis of X + Y (d × (2k − dim X∩Y)).
CMat sum_space_basis(const Isometry& x, const Isometry& y, double rank_tol = 1e-10);

}  // namespace ritzvar
