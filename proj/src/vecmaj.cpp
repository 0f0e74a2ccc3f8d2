#include "ritzvar/vecmaj.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ritzvar/errors.hpp"

namespace ritzvar {

namespace {

void require_finite(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InputError("non-finite entry at index " + std::to_string(i));
    }
  }
}

std::vector<double> prefix_sums(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::partial_sum(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

OrderedSpectrum::OrderedSpectrum(std::vector<double> values, Ordering ordering)
    : values_(std::move(values)), ordering_(ordering) {
  require_finite(values_);
  if (ordering_ == Ordering::NonIncreasing) {
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
      if (values_[i] < values_[i + 1]) {
        throw InputError("spectrum declared non-increasing is not sorted at index " +
                         std::to_string(i));
      }
    }
  }
}

double OrderedSpectrum::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double OrderedSpectrum::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

bool OrderedSpectrum::all_non_negative() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double default_tolerance(const OrderedSpectrum& x, const OrderedSpectrum& y,
                         double scale) {
  return scale * (1.0 + std::max(x.max_abs(), y.max_abs()));
}

OrderedSpectrum sort_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  require_finite(out);
  std::stable_sort(out.begin(), out.end(), std::greater<>{});
  return OrderedSpectrum(std::move(out), Ordering::NonIncreasing);
}

OrderedSpectrum sort_desc(const OrderedSpectrum& v) {
  if (v.is_sorted()) return v;
  return sort_desc(std::span<const double>(v.values()));
}

OrderedSpectrum sort_asc(const OrderedSpectrum& v) {
  std::vector<double> out = v.values();
  std::stable_sort(out.begin(), out.end());
  return OrderedSpectrum(std::move(out));
}

std::pair<OrderedSpectrum, OrderedSpectrum> pad_pair(const OrderedSpectrum& x,
                                                     const OrderedSpectrum& y) {
  if (x.size() == y.size()) return {x, y};
  if (!x.all_non_negative() || !y.all_non_negative()) {
    throw InputError("zero-padding is undefined for vectors with negative entries");
  }
  const std::size_t n = std::max(x.size(), y.size());
  auto pad = [n](const OrderedSpectrum& v) {
    std::vector<double> out = v.values();
    out.resize(n, 0.0);
    // Appending zeros keeps a sorted non-negative vector sorted.
    return OrderedSpectrum(std::move(out), v.ordering());
  };
  return {pad(x), pad(y)};
}

MajorizationVerdict submajorizes(const OrderedSpectrum& x, const OrderedSpectrum& y,
                                 double tol) {
  auto [xp, yp] = pad_pair(x, y);
  const OrderedSpectrum xs = sort_desc(xp);
  const OrderedSpectrum ys = sort_desc(yp);

  MajorizationVerdict v;
  v.tolerance = tol;
  v.partial_sums_lhs = prefix_sums(xs.values());
  v.partial_sums_rhs = prefix_sums(ys.values());
  v.worst_margin = 0.0;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    const double margin = v.partial_sums_rhs[r] - v.partial_sums_lhs[r];
    if (r == 0 || margin < v.worst_margin) v.worst_margin = margin;
  }
  v.trace_gap = ys.sum() - xs.sum();
  v.lhs_sorted = xs.values();
  v.rhs_sorted = ys.values();
  v.holds = v.worst_margin >= -tol;
  return v;
}

MajorizationVerdict submajorizes(const OrderedSpectrum& x, const OrderedSpectrum& y) {
  return submajorizes(x, y, default_tolerance(x, y));
}

MajorizationVerdict majorizes(const OrderedSpectrum& x, const OrderedSpectrum& y,
                              double tol) {
  if (x.size() != y.size()) {
    throw InputError("majorization requires equal lengths (" + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()) + ")");
  }
  MajorizationVerdict v = submajorizes(x, y, tol);
  const double ysum = y.sum();
  v.holds = v.holds && std::abs(x.sum() - ysum) <= tol * std::max(1.0, std::abs(ysum));
  return v;
}

MajorizationVerdict majorizes(const OrderedSpectrum& x, const OrderedSpectrum& y) {
  return majorizes(x, y, default_tolerance(x, y));
}

namespace {

template <typename Op>
OrderedSpectrum padded_binary(const OrderedSpectrum& x, const OrderedSpectrum& y,
                              bool resort, Op op) {
  auto [xp, yp] = pad_pair(x, y);
  std::vector<double> out(xp.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(xp[i], yp[i]);
  OrderedSpectrum raw(std::move(out));
  return resort ? sort_desc(raw) : raw;
}

}  // namespace

OrderedSpectrum padded_add(const OrderedSpectrum& x, const OrderedSpectrum& y,
                           bool resort) {
  return padded_binary(x, y, resort, std::plus<>{});
}

OrderedSpectrum padded_mul(const OrderedSpectrum& x, const OrderedSpectrum& y,
                           bool resort) {
  return padded_binary(x, y, resort, std::multiplies<>{});
}

OrderedSpectrum scaled(const OrderedSpectrum& x, double factor) {
  std::vector<double> out = x.values();
  for (double& v : out) v *= factor;
  if (factor >= 0.0) return OrderedSpectrum(std::move(out), x.ordering());
  return OrderedSpectrum(std::move(out));
}

}  // namespace ritzvar
