#include "ritzvar/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ritzvar/errors.hpp"

namespace ritzvar {

namespace {

void require_finite(const CMat& m) {
  if (!m.allFinite()) throw InputError("matrix has non-finite entries");
}

void require_square(const CMat& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InputError(std::string(what) + " must be square, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

MajorizationVerdict sub_with_default(const OrderedSpectrum& lhs, const OrderedSpectrum& rhs,
                                     const Tolerances& tol) {
  return submajorizes(lhs, rhs, default_tolerance(lhs, rhs, tol.majorization));
}

}  // namespace

Tolerances tolerances_from_env() {
  Tolerances t;
  for (const char* name : {"RITZVAR_TOL", "TOOL_TOL"}) {
    if (const char* raw = std::getenv(name); raw != nullptr && *raw != '\0') {
      char* end = nullptr;
      const double v = std::strtod(raw, &end);
      if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
        throw InputError(std::string(name) + " must be a positive number, got '" + raw + "'");
      }
      t.majorization = v;
      break;
    }
  }
  return t;
}

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix::ComplexMatrix(CMat m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.cols() < 1) throw InputError("matrix must be non-empty");
  require_finite(m_);
}

HermitianMatrix::HermitianMatrix(const CMat& m, const Tolerances& tol) {
  if (m.rows() < 1) throw InputError("Hermitian matrix must be non-empty");
  require_square(m, "Hermitian matrix");
  require_finite(m);
  correction_ = max_abs(m - m.adjoint());
  const double allowed = tol.hermiticity * (1.0 + max_abs(m));
  if (correction_ > allowed) {
    throw InputError("matrix is not Hermitian: ‖A − A*‖_max = " + std::to_string(correction_));
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::symmetrized(const CMat& m) {
  require_square(m, "Hermitian matrix");
  require_finite(m);
  HermitianMatrix h;
  h.correction_ = max_abs(m - m.adjoint());
  h.m_ = (m + m.adjoint()) / 2.0;
  return h;
}

std::pair<OrderedSpectrum, CMat> eigen_decomposition(const HermitianMatrix& a,
                                                     const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a.mat());
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge", -1.0);
  }
  const Eigen::Index d = a.dim();
  const Eigen::VectorXd& w = es.eigenvalues();  // ascending
  const CMat& v = es.eigenvectors();

  std::vector<double> vals(static_cast<std::size_t>(d));
  CMat vecs(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    vals[static_cast<std::size_t>(i)] = w(d - 1 - i);
    vecs.col(i) = v.col(d - 1 - i);
  }

  const double norm = w.size() ? std::max(std::abs(w(0)), std::abs(w(d - 1))) : 0.0;
  const double residual =
      (a.mat() - v * w.cast<cdouble>().asDiagonal() * v.adjoint()).norm();
  if (residual > tol.eig * (1.0 + norm) * std::sqrt(static_cast<double>(d))) {
    throw NumericalError("eigendecomposition residual too large", residual);
  }
  return {OrderedSpectrum(std::move(vals), Ordering::NonIncreasing), std::move(vecs)};
}

OrderedSpectrum eigenvalues_desc(const HermitianMatrix& a, const Tolerances& tol) {
  return eigen_decomposition(a, tol).first;
}

OrderedSpectrum singular_values(const CMat& b) {
  if (!b.allFinite()) throw InputError("matrix has non-finite entries");
  if (b.size() == 0) return OrderedSpectrum({}, Ordering::NonIncreasing);
  Eigen::JacobiSVD<CMat> svd(b);
  const Eigen::VectorXd& s = svd.singularValues();
  std::vector<double> vals(s.data(), s.data() + s.size());
  for (double& x : vals) x = std::max(x, 0.0);
  // JacobiSVD already sorts; re-sorting guards against ties broken by roundoff.
  return sort_desc(std::span<const double>(vals));
}

OrderedSpectrum singular_values(const ComplexMatrix& b) { return singular_values(b.mat()); }

OrderedSpectrum spectral_spread_from_eigenvalues(const OrderedSpectrum& lambda) {
  const OrderedSpectrum l = sort_desc(lambda);
  const std::size_t d = l.size();
  const std::size_t h = d / 2;
  std::vector<double> out(h);
  for (std::size_t j = 0; j < h; ++j) out[j] = std::max(l[j] - l[d - 1 - j], 0.0);
  // λ_j − λ_{d−j+1} is non-increasing in j for sorted λ; sort to absorb roundoff.
  return sort_desc(std::span<const double>(out));
}

OrderedSpectrum spectral_spread(const HermitianMatrix& a, const Tolerances& tol) {
  return spectral_spread_from_eigenvalues(eigenvalues_desc(a, tol));
}

MajorizationVerdict check_weyl_additive(const ComplexMatrix& c, const ComplexMatrix& d,
                                        const Tolerances& tol) {
  if (c.rows() != d.rows() || c.cols() != d.cols()) {
    throw InputError("Weyl additive: C and D must have equal shapes");
  }
  const OrderedSpectrum lhs = singular_values(CMat(c.mat() + d.mat()));
  const OrderedSpectrum rhs = padded_add(singular_values(c), singular_values(d));
  return sub_with_default(lhs, rhs, tol);
}

MajorizationVerdict check_weyl_multiplicative(const ComplexMatrix& c,
                                              const ComplexMatrix& d,
                                              const Tolerances& tol) {
  if (c.cols() != d.rows()) {
    throw InputError("Weyl multiplicative: C and D are not conformable");
  }
  const OrderedSpectrum lhs = singular_values(CMat(c.mat() * d.mat()));
  const OrderedSpectrum rhs = padded_mul(singular_values(c), singular_values(d));
  return sub_with_default(lhs, rhs, tol);
}

MajorizationVerdict check_real_part(const ComplexMatrix& c, const Tolerances& tol) {
  require_square(c.mat(), "real-part check input");
  const CMat re = (c.mat() + c.mat().adjoint()) / 2.0;
  return sub_with_default(singular_values(re), singular_values(c), tol);
}

LidskiiVerdicts check_lidskii(const HermitianMatrix& c, const HermitianMatrix& d,
                              const Tolerances& tol) {
  if (c.dim() != d.dim()) throw InputError("Lidskii: C and D must have equal dimension");
  const OrderedSpectrum lc = eigenvalues_desc(c, tol);
  const OrderedSpectrum ld = eigenvalues_desc(d, tol);
  const HermitianMatrix diff = HermitianMatrix::symmetrized(c.mat() - d.mat());

  std::vector<double> delta(lc.size());
  std::vector<double> abs_delta(lc.size());
  for (std::size_t i = 0; i < lc.size(); ++i) {
    delta[i] = lc[i] - ld[i];
    abs_delta[i] = std::abs(delta[i]);
  }
  const OrderedSpectrum dv(std::move(delta));
  const OrderedSpectrum adv(std::move(abs_delta));
  const OrderedSpectrum ldiff = eigenvalues_desc(diff, tol);
  const OrderedSpectrum sdiff = singular_values(diff.mat());

  LidskiiVerdicts out;
  out.eigen_difference = majorizes(dv, ldiff, default_tolerance(dv, ldiff, tol.majorization));
  out.absolute = sub_with_default(adv, sdiff, tol);
  return out;
}

HatEmbeddingReport hat_embedding_spectrum(const ComplexMatrix& e, const Tolerances& tol) {
  const Eigen::Index k = e.rows();
  const Eigen::Index m = e.cols();
  const Eigen::Index d = k + m;
  CMat hat = CMat::Zero(d, d);
  hat.topRightCorner(k, m) = e.mat();
  hat.bottomLeftCorner(m, k) = e.mat().adjoint();

  HatEmbeddingReport rep;
  rep.eigenvalues = eigenvalues_desc(HermitianMatrix::symmetrized(hat), tol);

  const OrderedSpectrum s = singular_values(e);
  const OrderedSpectrum s_adj = singular_values(e.adjoint());
  std::vector<double> expected;
  expected.reserve(static_cast<std::size_t>(d));
  for (double v : s.values()) expected.push_back(v);
  for (double v : s_adj.values()) expected.push_back(-v);
  // s(E) and s(E*) each have min(k, m) entries; the rest of λ(Ê) is zero.
  expected.resize(static_cast<std::size_t>(d), 0.0);
  rep.expected = sort_desc(std::span<const double>(expected));

  for (std::size_t i = 0; i < rep.expected.size(); ++i) {
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(rep.eigenvalues[i] - rep.expected[i]));
  }
  rep.tolerance = tol.eig * (1.0 + rep.expected.max_abs());
  rep.holds = rep.max_deviation <= rep.tolerance;
  return rep;
}

MajorizationVerdict check_spread_subadditive(const HermitianMatrix& a,
                                             const HermitianMatrix& b,
                                             const Tolerances& tol) {
  if (a.dim() != b.dim()) throw InputError("spread subadditivity: dimensions differ");
  const OrderedSpectrum lhs =
      spectral_spread(HermitianMatrix::symmetrized(a.mat() + b.mat()), tol);
  const OrderedSpectrum rhs = padded_add(spectral_spread(a, tol), spectral_spread(b, tol));
  return sub_with_default(lhs, rhs, tol);
}

MajorizationVerdict check_offdiag_block(const HermitianMatrix& h, Eigen::Index split_k,
                                        const Tolerances& tol) {
  const Eigen::Index d = h.dim();
  if (split_k < 1 || split_k >= d) {
    throw InputError("split index must satisfy 1 <= k < " + std::to_string(d));
  }
  const CMat h12 = h.mat().topRightCorner(split_k, d - split_k);
  const OrderedSpectrum lhs = scaled(singular_values(h12), 2.0);
  return sub_with_default(lhs, spectral_spread(h, tol), tol);
}

HermitianMatrix direct_sum(const HermitianMatrix& a1, const HermitianMatrix& a2) {
  const Eigen::Index n1 = a1.dim();
  const Eigen::Index n2 = a2.dim();
  CMat out = CMat::Zero(n1 + n2, n1 + n2);
  out.topLeftCorner(n1, n1) = a1.mat();
  out.bottomRightCorner(n2, n2) = a2.mat();
  return HermitianMatrix::symmetrized(out);
}

MajorizationVerdict check_generalized_commutator(const HermitianMatrix& a1,
                                                 const HermitianMatrix& a2,
                                                 const ComplexMatrix& d,
                                                 const Tolerances& tol) {
  const Eigen::Index k = a1.dim();
  if (a2.dim() != k || d.rows() != k || d.cols() != k) {
    throw InputError("generalized commutator: A1, A2 and D must all be k x k");
  }
  const CMat comm = a1.mat() * d.mat() - d.mat() * a2.mat();
  const OrderedSpectrum lhs = singular_values(comm);
  const OrderedSpectrum rhs =
      padded_mul(singular_values(d), spectral_spread(direct_sum(a1, a2), tol));
  return sub_with_default(lhs, rhs, tol);
}

}  // namespace ritzvar
