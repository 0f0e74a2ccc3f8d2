#include "ritzvar/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "ritzvar/errors.hpp"

namespace ritzvar {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

OrderedSpectrum map_entries(const OrderedSpectrum& v, double (*f)(double)) {
  std::vector<double> out = v.values();
  for (double& x : out) x = f(x);
  return OrderedSpectrum(std::move(out));
}

double square(double v) { return v * v; }

CMat compression(const HermitianMatrix& a, const CMat& x) {
  const CMat c = x.adjoint() * a.mat() * x;
  return (c + c.adjoint()) / 2.0;
}

double spectral_norm(const CMat& m) {
  const OrderedSpectrum s = singular_values(m);
  return s.empty() ? 0.0 : s[0];
}

void require_invariant(const HermitianMatrix& a, const Isometry& x, const Tolerances& tol,
                       BoundReport& report) {
  const double r = max_abs(residual(a, x));
  const double allowed = tol.invariance * (1.0 + max_abs(a.mat()));
  report.diagnostics["residual_max"] = r;
  report.tolerances["invariance"] = allowed;
  if (r > allowed) {
    throw PreconditionError(
        "range(X) is not A-invariant: ‖R_X‖_max = " + std::to_string(r) +
            " exceeds " + std::to_string(allowed),
        r);
  }
}

void require_conformable(const HermitianMatrix& a, const Isometry& x, const Isometry& y) {
  if (a.dim() != x.ambient_dim() || a.dim() != y.ambient_dim() ||
      x.sub_dim() != y.sub_dim()) {
    throw InputError("A, X and Y are not conformable");
  }
}

void record_common(BoundReport& r, const Tolerances& tol) {
  r.tolerances["majorization"] = tol.majorization;
  r.tolerances["tol_int"] = tol.tol_int;
  r.tolerances["tol_perp"] = tol.tol_perp;
}

}  // namespace

std::string digest_matrices(std::initializer_list<const CMat*> mats) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const CMat* m : mats) {
    feed(static_cast<std::uint64_t>(m->rows()));
    feed(static_cast<std::uint64_t>(m->cols()));
    for (Eigen::Index j = 0; j < m->cols(); ++j) {
      for (Eigen::Index i = 0; i < m->rows(); ++i) {
        feed(std::bit_cast<std::uint64_t>((*m)(i, j).real()));
        feed(std::bit_cast<std::uint64_t>((*m)(i, j).imag()));
      }
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xfU];
    h >>= 4;
  }
  return out;
}

BoundReport make_report(std::string name, OrderedSpectrum lhs, OrderedSpectrum rhs,
                        double tol_scale, double extra_allowance) {
  BoundReport r;
  r.check_name = std::move(name);
  r.lhs = sort_desc(lhs);
  r.rhs = sort_desc(rhs);
  const double tol = default_tolerance(r.lhs, r.rhs, tol_scale) + extra_allowance;
  r.verdict = submajorizes(r.lhs, r.rhs, tol);
  r.ratio_profile = ratio_profile(r.lhs, r.rhs);
  return r;
}

std::vector<double> ratio_profile(const OrderedSpectrum& lhs, const OrderedSpectrum& rhs) {
  auto [lp, rp] = pad_pair(sort_desc(lhs), sort_desc(rhs));
  std::vector<double> ratio(lp.size());
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    ratio[i] = rp[i] > 0.0 ? lp[i] / rp[i] : std::numeric_limits<double>::quiet_NaN();
  }
  return ratio;
}

OrderedSpectrum ritz_values(const HermitianMatrix& a, const Isometry& x,
                            const Tolerances& tol) {
  if (a.dim() != x.ambient_dim()) throw InputError("A and X are not conformable");
  return eigenvalues_desc(HermitianMatrix::symmetrized(compression(a, x.mat())), tol);
}

CMat residual(const HermitianMatrix& a, const Isometry& x) {
  if (a.dim() != x.ambient_dim()) throw InputError("A and X are not conformable");
  const CMat ax = a.mat() * x.mat();
  return ax - x.mat() * (x.mat().adjoint() * ax);
}

OrderedSpectrum ritz_variation(const HermitianMatrix& a, const Isometry& x,
                               const Isometry& y, const Tolerances& tol) {
  require_conformable(a, x, y);
  const OrderedSpectrum lx = ritz_values(a, x, tol);
  const OrderedSpectrum ly = ritz_values(a, y, tol);
  std::vector<double> diff(lx.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(lx[i] - ly[i]);
  return sort_desc(std::span<const double>(diff));
}

BoundReport check_thm31(const HermitianMatrix& a, const HermitianMatrix& b,
                        const Isometry& x, const Isometry& y, const Tolerances& tol,
                        SpreadTruncation mode) {
  require_conformable(a, x, y);
  if (b.dim() != a.dim()) throw InputError("A and B must have equal dimension");

  const DirectRotation rot(decompose_pair(x, y, tol));
  const CMat yr = rot.rotate(x);
  const CMat gap = compression(a, x.mat()) - compression(b, yr);
  const OrderedSpectrum lhs = singular_values(gap);

  const OrderedSpectrum theta = principal_angles(x, y);
  const OrderedSpectrum mean_spread =
      scaled(padded_add(spectral_spread(a, tol), spectral_spread(b, tol)), 0.5);
  OrderedSpectrum s_diff = singular_values(CMat(a.mat() - b.mat()));
  if (mode == SpreadTruncation::Strict) {
    std::vector<double> head(s_diff.values().begin(),
                             s_diff.values().begin() + x.sub_dim());
    s_diff = OrderedSpectrum(std::move(head), Ordering::NonIncreasing);
  }
  const OrderedSpectrum rhs = padded_add(s_diff, padded_mul(theta, mean_spread));

  BoundReport r = make_report(mode == SpreadTruncation::Strict ? "thm31-strict" : "thm31",
                              lhs, rhs, tol.majorization);
  r.inputs_digest = digest_matrices({&a.mat(), &b.mat(), &x.mat(), &y.mat()});
  record_common(r, tol);
  const OrderedSpectrum dec_angles = rot.decomposition().angles();
  double angle_gap = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    angle_gap = std::max(angle_gap, std::abs(theta[i] - dec_angles[i]));
  }
  r.diagnostics["angle_consistency"] = angle_gap;
  return r;
}

BoundReport check_thm32(const HermitianMatrix& a, const Isometry& x, const Isometry& y,
                        const Tolerances& tol) {
  require_conformable(a, x, y);
  BoundReport pre;
  require_invariant(a, x, tol, pre);

  const DirectRotation rot(decompose_pair(x, y, tol));
  const CMat yr = rot.rotate(x);
  const OrderedSpectrum lhs =
      singular_values(CMat(compression(a, x.mat()) - compression(a, yr)));
  const OrderedSpectrum theta = principal_angles(x, y);
  const OrderedSpectrum rhs = padded_mul(map_entries(theta, square), spectral_spread(a, tol));

  BoundReport r = make_report("thm32", lhs, rhs, tol.majorization);
  r.inputs_digest = digest_matrices({&a.mat(), &x.mat(), &y.mat()});
  record_common(r, tol);
  r.tolerances.merge(pre.tolerances);
  r.diagnostics.merge(pre.diagnostics);
  return r;
}

namespace {

BoundReport ritz_style(const char* name, const HermitianMatrix& a, const Isometry& x,
                       const Isometry& y, bool invariant_mode, const Tolerances& tol,
                       double (*angle_map)(double)) {
  require_conformable(a, x, y);
  BoundReport pre;
  if (invariant_mode) require_invariant(a, x, tol, pre);

  const OrderedSpectrum lhs = ritz_variation(a, x, y, tol);
  OrderedSpectrum factor = map_entries(principal_angles(x, y), angle_map);
  if (invariant_mode) factor = map_entries(factor, square);
  const OrderedSpectrum rhs = padded_mul(factor, spectral_spread(a, tol));

  BoundReport r = make_report(name, lhs, rhs, tol.majorization);
  r.inputs_digest = digest_matrices({&a.mat(), &x.mat(), &y.mat()});
  record_common(r, tol);
  r.tolerances.merge(pre.tolerances);
  r.diagnostics.merge(pre.diagnostics);

  // λ(Y*AY) = λ(Y_r*AY_r) since range(Y_r) = range(Y).
  const DirectRotation rot(decompose_pair(x, y, tol));
  const OrderedSpectrum ly = ritz_values(a, y, tol);
  const OrderedSpectrum lyr =
      eigenvalues_desc(HermitianMatrix::symmetrized(compression(a, rot.rotate(x))), tol);
  double gap = 0.0;
  for (std::size_t i = 0; i < ly.size(); ++i) gap = std::max(gap, std::abs(ly[i] - lyr[i]));
  r.diagnostics["consistency_gap"] = gap;
  return r;
}

double identity(double v) { return v; }
double sine(double v) { return std::sin(v); }

}  // namespace

BoundReport check_ritz_variation(const HermitianMatrix& a, const Isometry& x,
                                 const Isometry& y, bool invariant_mode,
                                 const Tolerances& tol) {
  return ritz_style(invariant_mode ? "ritz-invariant" : "ritz", a, x, y, invariant_mode, tol,
                    identity);
}

BoundReport check_ka_conjecture(const HermitianMatrix& a, const Isometry& x,
                                const Isometry& y, bool invariant_mode,
                                const Tolerances& tol) {
  BoundReport r =
      ritz_style(invariant_mode ? "conj2" : "conj1", a, x, y, invariant_mode, tol, sine);
  r.conjectural = true;
  return r;
}

BoundReport check_residual_tangent(const HermitianMatrix& a, const Isometry& x,
                                   const Isometry& y, const Tolerances& tol) {
  require_conformable(a, x, y);
  const OrderedSpectrum theta = principal_angles(x, y);
  if (theta[0] >= kHalfPi - tol.acute) {
    throw PreconditionError("subspaces are not in acute position: largest principal angle " +
                                std::to_string(theta[0]),
                            theta[0]);
  }
  const CMat z = sum_space_basis(x, y, tol.rank);
  const CMat proj = z * z.adjoint();
  const OrderedSpectrum spx = singular_values(CMat(proj * residual(a, x)));
  const OrderedSpectrum spy = singular_values(CMat(proj * residual(a, y)));
  const OrderedSpectrum tangent = map_entries(theta, [](double v) { return std::tan(v); });
  const OrderedSpectrum rhs = padded_mul(padded_add(spx, spy), tangent);

  BoundReport r = make_report("residual-tangent", ritz_variation(a, x, y, tol), rhs,
                              tol.majorization);
  r.inputs_digest = digest_matrices({&a.mat(), &x.mat(), &y.mat()});
  record_common(r, tol);
  r.tolerances["acute"] = tol.acute;
  r.diagnostics["sum_space_dim"] = static_cast<double>(z.cols());
  return r;
}

CurveSample curve_gamma(const HermitianMatrix& a, const HermitianMatrix& b,
                        const DirectRotation& rot, const Isometry& x, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InputError("curve parameter must lie in [0, 1], got " + std::to_string(t));
  }
  if (a.dim() != b.dim() || a.dim() != x.ambient_dim() ||
      rot.decomposition().ambient_dim != a.dim()) {
    throw InputError("curve inputs are not conformable");
  }
  const CMat ut = rot.path(t);
  const CMat gen = rot.generator();
  const CMat lt = (1.0 - t) * a.mat() + t * b.mat();
  const CMat at = ut.adjoint() * lt * ut;
  const CMat& xm = x.mat();

  CurveSample out;
  out.t = t;
  const CMat g = xm.adjoint() * at * xm;
  out.gamma = (g + g.adjoint()) / 2.0;
  const CMat gp = xm.adjoint() * ut.adjoint() * (b.mat() - a.mat()) * ut * xm +
                  xm.adjoint() * (at * gen - gen * at) * xm;
  out.gamma_prime = (gp + gp.adjoint()) / 2.0;
  out.s_gamma_prime = singular_values(out.gamma_prime);
  return out;
}

BoundReport check_curve_integral(const HermitianMatrix& a, const HermitianMatrix& b,
                                 const Isometry& x, const Isometry& y, int n_points,
                                 const Tolerances& tol) {
  require_conformable(a, x, y);
  if (b.dim() != a.dim()) throw InputError("A and B must have equal dimension");
  if (n_points < 3 || n_points % 2 == 0) {
    throw InputError("Simpson quadrature needs an odd node count >= 3, got " +
                     std::to_string(n_points));
  }
  const DirectRotation rot(decompose_pair(x, y, tol));
  const auto k = static_cast<std::size_t>(x.sub_dim());
  const double h = 1.0 / (n_points - 1);

  std::vector<double> integral(k, 0.0);
  CMat gamma0;
  CMat gamma1;
  for (int i = 0; i < n_points; ++i) {
    const double t = i == n_points - 1 ? 1.0 : i * h;
    const CurveSample cs = curve_gamma(a, b, rot, x, t);
    const double w = (i == 0 || i == n_points - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    for (std::size_t j = 0; j < k; ++j) integral[j] += w * h / 3.0 * cs.s_gamma_prime[j];
    if (i == 0) gamma0 = cs.gamma;
    if (i == n_points - 1) gamma1 = cs.gamma;
  }
  for (double& v : integral) v = std::max(v, 0.0);

  const OrderedSpectrum lhs = singular_values(CMat(gamma1 - gamma0));
  const OrderedSpectrum theta = principal_angles(x, y);
  const double allowance =
      tol.quadrature * (1.0 + spectral_norm(b.mat() - a.mat()) +
                        spectral_norm(a.mat()) * (theta.empty() ? 0.0 : theta[0]));

  BoundReport r = make_report("curve", lhs, OrderedSpectrum(std::move(integral)),
                              tol.majorization, allowance);
  r.inputs_digest = digest_matrices({&a.mat(), &b.mat(), &x.mat(), &y.mat()});
  record_common(r, tol);
  r.tolerances["quadrature_allowance"] = allowance;
  r.diagnostics["nodes"] = n_points;
  return r;
}

}  // namespace ritzvar
