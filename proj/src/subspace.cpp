#include "ritzvar/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ritzvar/errors.hpp"

namespace ritzvar {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

void require_same_shape(const Isometry& x, const Isometry& y) {
  if (x.ambient_dim() != y.ambient_dim() || x.sub_dim() != y.sub_dim()) {
    throw InputError("subspace pair must share ambient and subspace dimensions (" +
                     std::to_string(x.ambient_dim()) + "x" + std::to_string(x.sub_dim()) +
                     " vs " + std::to_string(y.ambient_dim()) + "x" +
                     std::to_string(y.sub_dim()) + ")");
  }
}

CMat hstack(std::initializer_list<const CMat*> blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const CMat* b : blocks) cols += b->cols();
  CMat out(rows, cols);
  Eigen::Index at = 0;
  for (const CMat* b : blocks) {
    out.middleCols(at, b->cols()) = *b;
    at += b->cols();
  }
  return out;
}

bool near_threshold(double distance, double tol) {
  return tol > 0.0 && distance >= tol / 10.0 && distance <= tol * 10.0;
}

}  // namespace

Isometry::Isometry(CMat x, const Tolerances& tol) : x_(std::move(x)) {
  if (x_.rows() < 1 || x_.cols() < 1) throw InputError("isometry must be non-empty");
  if (x_.cols() > x_.rows()) {
    throw InputError("isometry needs k <= d, got " + std::to_string(x_.rows()) + "x" +
                     std::to_string(x_.cols()));
  }
  if (!x_.allFinite()) throw InputError("isometry has non-finite entries");
  const double defect =
      max_abs(x_.adjoint() * x_ - CMat::Identity(x_.cols(), x_.cols()));
  if (defect > tol.isometry) {
    throw InputError("columns are not orthonormal: ‖X*X − I‖_max = " + std::to_string(defect));
  }
}

Isometry isometry_from_span(const CMat& vectors, const Tolerances& tol) {
  if (vectors.rows() < 1 || vectors.cols() < 1 || vectors.cols() > vectors.rows()) {
    throw InputError("span needs a d x m matrix with 1 <= m <= d");
  }
  if (!vectors.allFinite()) throw InputError("span vectors have non-finite entries");
  Eigen::JacobiSVD<CMat> svd(vectors, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol.rank * s(0);
  if (s(0) == 0.0 || s(s.size() - 1) <= cutoff) {
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > cutoff ? 1 : 0;
    throw InputError("span vectors are rank deficient: numerical rank " +
                     std::to_string(rank) + " of " + std::to_string(vectors.cols()));
  }
  return Isometry(svd.matrixU() * svd.matrixV().adjoint(), tol);
}

OrderedSpectrum principal_angles(const Isometry& x, const Isometry& y) {
  require_same_shape(x, y);
  const Eigen::Index k = x.sub_dim();
  const CMat xy = x.mat().adjoint() * y.mat();
  const Eigen::VectorXd cosines = Eigen::JacobiSVD<CMat>(xy).singularValues();
  const CMat rejected = y.mat() - x.mat() * xy;
  const Eigen::VectorXd sines = Eigen::JacobiSVD<CMat>(rejected).singularValues();

  // Both vectors are non-increasing; θ_j pairs with cosines(k−1−j) and sines(j).
  std::vector<double> theta(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    const double s = clip(sines(j), 0.0, 1.0);
    const double from_cos = std::acos(clip(cosines(k - 1 - j), 0.0, 1.0));
    const double from_sin = std::asin(s);
    theta[static_cast<std::size_t>(j)] = clip(s * s < 0.5 ? from_sin : from_cos, 0.0, kHalfPi);
  }
  return sort_desc(std::span<const double>(theta));
}

CMat PairDecomposition::assembled_basis() const {
  return hstack({&basis_xy, &basis_s1, &basis_s2, &basis_xperp_yperp}, ambient_dim);
}

OrderedSpectrum PairDecomposition::angles() const {
  std::vector<double> out = theta_prime.values();
  out.resize(out.size() + static_cast<std::size_t>(s), 0.0);
  return sort_desc(std::span<const double>(out));
}

PairDecomposition decompose_pair(const Isometry& x, const Isometry& y, double tol_int,
                                 double tol_perp) {
  require_same_shape(x, y);
  const Eigen::Index d = x.ambient_dim();
  const Eigen::Index k = x.sub_dim();

  Eigen::JacobiSVD<CMat> svd(CMat(x.mat().adjoint() * y.mat()),
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const CMat xvecs = x.mat() * svd.matrixU();  // principal vectors in X
  const CMat yvecs = y.mat() * svd.matrixV();  // principal vectors in Y

  PairDecomposition dec;
  dec.ambient_dim = d;
  dec.sub_dim = k;
  dec.tol_int = tol_int;
  dec.tol_perp = tol_perp;

  std::vector<Eigen::Index> inter;
  std::vector<Eigen::Index> rotated;  // perpendicular first, then generic by θ desc
  std::vector<double> theta;

  // Ascending cosines visit angles in non-increasing order.
  for (Eigen::Index j = k - 1; j >= 0; --j) {
    const double c = sigma(j);
    if (near_threshold(c, tol_perp) || near_threshold(1.0 - c, tol_int)) {
      dec.warnings.push_back("principal cosine " + std::to_string(c) +
                             " is close to a classification threshold");
    }
    if (c >= 1.0 - tol_int) {
      inter.push_back(j);
    } else if (c <= tol_perp) {
      ++dec.p;
      rotated.push_back(j);
      theta.push_back(kHalfPi);
    } else {
      ++dec.r;
      rotated.push_back(j);
      const CMat w = yvecs.col(j) - x.mat() * (x.mat().adjoint() * yvecs.col(j));
      double angle = std::atan2(w.norm(), c);
      if (!theta.empty()) angle = std::min(angle, theta.back());
      theta.push_back(angle);
    }
  }
  dec.s = static_cast<Eigen::Index>(inter.size());
  const Eigen::Index q = dec.p + dec.r;

  dec.basis_xy.resize(d, dec.s);
  for (Eigen::Index i = 0; i < dec.s; ++i) dec.basis_xy.col(i) = xvecs.col(inter[i]);

  dec.basis_s1.resize(d, q);
  dec.basis_s2.resize(d, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const Eigen::Index j = rotated[static_cast<std::size_t>(i)];
    dec.basis_s1.col(i) = xvecs.col(j);
    CMat w = yvecs.col(j) - x.mat() * (x.mat().adjoint() * yvecs.col(j));
    const double n = w.norm();
    if (n == 0.0) throw NumericalError("degenerate rotation plane in decomposition", 0.0);
    dec.basis_s2.col(i) = w / n;
  }
  dec.theta_prime = OrderedSpectrum(std::move(theta), Ordering::NonIncreasing);

  const Eigen::Index used = dec.s + 2 * q;
  if (used > d) {
    throw NumericalError("decomposition uses more than d directions", static_cast<double>(used));
  }
  if (used < d) {
    const CMat partial = hstack({&dec.basis_xy, &dec.basis_s1, &dec.basis_s2}, d);
    Eigen::HouseholderQR<CMat> qr(partial);
    const CMat full_q = qr.householderQ();
    dec.basis_xperp_yperp = full_q.rightCols(d - used);
  } else {
    dec.basis_xperp_yperp.resize(d, 0);
  }
  return dec;
}

PairDecomposition decompose_pair(const Isometry& x, const Isometry& y, const Tolerances& tol) {
  return decompose_pair(x, y, tol.tol_int, tol.tol_perp);
}

DirectRotation::DirectRotation(PairDecomposition dec) : dec_(std::move(dec)) {
  const CMat basis = dec_.assembled_basis();
  const double gram = max_abs(basis.adjoint() * basis - CMat::Identity(basis.cols(), basis.cols()));
  if (basis.cols() != dec_.ambient_dim || gram > 1e-8) {
    throw NumericalError("decomposition basis is not unitary", gram);
  }
  u_ = rotation_with_angles(Eigen::Map<const Eigen::VectorXd>(
      dec_.theta_prime.values().data(),
      static_cast<Eigen::Index>(dec_.theta_prime.size())));
}

Eigen::VectorXd DirectRotation::cos_block() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dec_.theta_prime.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = std::cos(dec_.theta_prime[i]);
  return out;
}

Eigen::VectorXd DirectRotation::sin_block() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dec_.theta_prime.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = std::sin(dec_.theta_prime[i]);
  return out;
}

CMat DirectRotation::rotation_with_angles(const Eigen::VectorXd& angles) const {
  // U = I + [S₁ S₂]·[[C − I, −S], [S, C − I]]·[S₁ S₂]*, exactly the identity
  // on X∩Y and X⊥∩Y⊥.
  const Eigen::Index d = dec_.ambient_dim;
  const CMat& s1 = dec_.basis_s1;
  const CMat& s2 = dec_.basis_s2;
  const Eigen::VectorXcd cm1 = (angles.array().cos() - 1.0).matrix().cast<cdouble>();
  const Eigen::VectorXcd sn = angles.array().sin().matrix().cast<cdouble>();
  CMat u = CMat::Identity(d, d);
  u += s1 * cm1.asDiagonal() * s1.adjoint();
  u += s2 * cm1.asDiagonal() * s2.adjoint();
  u += s2 * sn.asDiagonal() * s1.adjoint();
  u -= s1 * sn.asDiagonal() * s2.adjoint();
  return u;
}

CMat DirectRotation::path(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InputError("rotation path parameter must lie in [0, 1], got " + std::to_string(t));
  }
  if (t == 1.0) return u_;
  Eigen::VectorXd angles(static_cast<Eigen::Index>(dec_.theta_prime.size()));
  for (Eigen::Index i = 0; i < angles.size(); ++i) angles(i) = t * dec_.theta_prime[i];
  return rotation_with_angles(angles);
}

CMat DirectRotation::generator() const {
  const Eigen::Index d = dec_.ambient_dim;
  Eigen::VectorXcd th(static_cast<Eigen::Index>(dec_.theta_prime.size()));
  for (Eigen::Index i = 0; i < th.size(); ++i) th(i) = dec_.theta_prime[i];
  const CMat& s1 = dec_.basis_s1;
  const CMat& s2 = dec_.basis_s2;
  CMat g = CMat::Zero(d, d);
  g += s2 * th.asDiagonal() * s1.adjoint();
  g -= s1 * th.asDiagonal() * s2.adjoint();
  return g;
}

CMat DirectRotation::in_decomposition_basis() const {
  const CMat basis = dec_.assembled_basis();
  return basis.adjoint() * u_ * basis;
}

DirectRotation direct_rotation(const PairDecomposition& dec) { return DirectRotation(dec); }
CMat rotation_path(const DirectRotation& rot, double t) { return rot.path(t); }
CMat rotation_generator(const DirectRotation& rot) { return rot.generator(); }

CMat sum_space_basis(const Isometry& x, const Isometry& y, double rank_tol) {
  require_same_shape(x, y);
  const CMat rejected = y.mat() - x.mat() * (x.mat().adjoint() * y.mat());
  Eigen::JacobiSVD<CMat> svd(rejected, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index extra = 0;
  while (extra < s.size() && s(extra) > rank_tol) ++extra;
  CMat out(x.ambient_dim(), x.sub_dim() + extra);
  out.leftCols(x.sub_dim()) = x.mat();
  out.rightCols(extra) = svd.matrixU().leftCols(extra);
  return out;
}

}  // namespace ritzvar
