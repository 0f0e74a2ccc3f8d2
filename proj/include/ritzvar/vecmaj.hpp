#pragma once

// Real-vector rearrangements, zero-padded entrywise arithmetic and
// (sub)majorization predicates with auditable partial sums.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ritzvar {

enum class Ordering { NonIncreasing, Raw };

/// Finite real vector with a declared ordering. When the ordering is
/// NonIncreasing the constructor verifies it.
class OrderedSpectrum {
 public:
  OrderedSpectrum() = default;
  explicit OrderedSpectrum(std::vector<double> values,
                           Ordering ordering = Ordering::Raw);

  const std::vector<double>& values() const noexcept { return values_; }
  Ordering ordering() const noexcept { return ordering_; }
  bool is_sorted() const noexcept { return ordering_ == Ordering::NonIncreasing; }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double max_abs() const noexcept;
  double sum() const noexcept;
  bool all_non_negative() const noexcept;

  friend bool operator==(const OrderedSpectrum&, const OrderedSpectrum&) = default;

 private:
  std::vector<double> values_;
  Ordering ordering_ = Ordering::Raw;
};

struct MajorizationVerdict {
  bool holds = false;
  std::vector<double> partial_sums_lhs;
  std::vector<double> partial_sums_rhs;
  double worst_margin = 0.0;  // min_r (rhs_r - lhs_r)
  double tolerance = 0.0;
  // Σrhs − Σlhs over the padded vectors; informational for submajorization.
  double trace_gap = 0.0;
  // The padded, sorted vectors the partial sums were taken over.
  std::vector<double> lhs_sorted;
  std::vector<double> rhs_sorted;
};

/// Default absolute slack for partial-sum comparisons:
/// scale * (1 + max |entry| over both vectors).
double default_tolerance(const OrderedSpectrum& x, const OrderedSpectrum& y,
                         double scale = 1e-10);

/// Non-increasing rearrangement; ties keep input order.
OrderedSpectrum sort_desc(std::span<const double> v);
OrderedSpectrum sort_desc(const OrderedSpectrum& v);

/// Non-decreasing rearrangement (x↑). Returned with Raw ordering.
OrderedSpectrum sort_asc(const OrderedSpectrum& v);

/// Zero-pads the shorter vector on the right. Padding is only defined for
/// non-negative vectors, so differing lengths with a negative entry throw
/// InputError. Equal-length inputs are returned unchanged.
std::pair<OrderedSpectrum, OrderedSpectrum> pad_pair(const OrderedSpectrum& x,
                                                     const OrderedSpectrum& y);

/// x ≺_w y: every prefix sum of x↓ is at most the matching prefix sum of
/// y↓ plus `tol`, after zero-padding to a common length.
MajorizationVerdict submajorizes(const OrderedSpectrum& x, const OrderedSpectrum& y,
                                 double tol);
MajorizationVerdict submajorizes(const OrderedSpectrum& x, const OrderedSpectrum& y);

/// x ≺ y: submajorization plus |Σx − Σy| ≤ tol·max(1, |Σy|). Lengths must match.
MajorizationVerdict majorizes(const OrderedSpectrum& x, const OrderedSpectrum& y,
                              double tol);
MajorizationVerdict majorizes(const OrderedSpectrum& x, const OrderedSpectrum& y);

/// Entrywise sum / product after zero-padding. The result keeps the padded
/// entry order unless `resort` is set.
OrderedSpectrum padded_add(const OrderedSpectrum& x, const OrderedSpectrum& y,
                           bool resort = false);
OrderedSpectrum padded_mul(const OrderedSpectrum& x, const OrderedSpectrum& y,
                           bool resort = false);

OrderedSpectrum scaled(const OrderedSpectrum& x, double factor);

}  // namespace ritzvar
