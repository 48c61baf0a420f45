#pragma once

// Knot vectors, interval lookup, sliding windows and the 2x2 algebra used to
// normalize knot functions.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gbspline/error.hpp"

namespace gbs {

/// Emptiness threshold for knot intervals and the default conditioning guard.
inline constexpr double kDefaultTol = 1e-8;

/// Values of a (u, v) function pair, u first.
using Pair = std::array<double, 2>;

/// A nondecreasing, finite sequence of knots.
class KnotVector {
 public:
  KnotVector() = default;
  /// Throws NonFiniteKnot / NotNondecreasing / InvalidArgument (fewer than two knots).
  explicit KnotVector(std::vector<double> knots);

  std::size_t size() const noexcept { return knots_.size(); }
  double operator[](std::size_t i) const noexcept { return knots_[i]; }
  std::span<const double> values() const noexcept { return knots_; }

  std::size_t interval_count() const noexcept { return knots_.empty() ? 0 : knots_.size() - 1; }
  double interval_length(std::size_t j) const noexcept { return knots_[j + 1] - knots_[j]; }
  std::vector<double> interval_lengths() const;
  bool is_nonempty(std::size_t j, double tol = kDefaultTol) const noexcept {
    return interval_length(j) > tol;
  }

  /// Number of degree-p basis functions, m - p - 1 (0 when the knots are too few).
  std::size_t basis_count(int degree) const noexcept;
  /// Curve domain [t_p, t_{m-p-1}].
  std::pair<double, double> domain(int degree) const;
  /// Multiplicity of the knot value equal to knots[i].
  std::size_t multiplicity(std::size_t i) const noexcept;

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  std::vector<double> knots_;
};

/// Index j of the knot interval [t_j, t_{j+1}).
struct IntervalIndex {
  std::size_t value = 0;
  friend bool operator==(IntervalIndex, IntervalIndex) = default;
};

/// 2x2 matrix, row-major. In knot-function tables rows index interval
/// endpoints and columns index the two functions, u first.
struct Mat2 {
  std::array<double, 4> a{};

  static constexpr Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static constexpr Mat2 zero() { return Mat2{}; }

  constexpr double operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }
  constexpr double& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }

  constexpr Pair row(int r) const { return {(*this)(r, 0), (*this)(r, 1)}; }
  constexpr double det() const { return a[0] * a[3] - a[1] * a[2]; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
/// Matrix times column vector.
Pair operator*(const Mat2& m, const Pair& x);

/// Checks a knot sequence (see KnotVector's constructor).
KnotVector validate_knot_vector(std::vector<double> knots);

/// Interval holding t inside the degree-p domain [t_p, t_{m-p-1}].
///
/// Intervals are half-open except the last nonempty interval of the domain,
/// which also owns the right endpoint. Intervals no longer than `tol` are
/// never returned. Points outside the domain by at most `tol` are clamped;
/// anything further throws OutOfDomain.
IntervalIndex find_interval(const KnotVector& knots, double t, int degree,
                            double tol = kDefaultTol);

/// Interval used to evaluate degree-p functions at an arbitrary t: the domain
/// rule of find_interval inside the domain, plain half-open lookup over the
/// whole knot vector outside it. Empty when t lies outside [t_0, t_{m-1}).
std::optional<IntervalIndex> locate_interval(const KnotVector& knots, double t, int degree,
                                             double tol = kDefaultTol);

/// Sliding windows: result[i][k] = values[i + k], 0 <= k < width.
template <class T>
std::vector<std::vector<T>> wrap_windows(std::span<const T> values, std::size_t width) {
  if (width == 0) throw Error(ErrorCode::InvalidArgument, "window width must be positive");
  if (values.size() < width) {
    throw Error(ErrorCode::WidthTooLarge, "window width " + std::to_string(width) +
                                              " exceeds length " + std::to_string(values.size()));
  }
  std::vector<std::vector<T>> out;
  out.reserve(values.size() - width + 1);
  for (std::size_t i = 0; i + width <= values.size(); ++i) {
    out.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i),
                     values.begin() + static_cast<std::ptrdiff_t>(i + width));
  }
  return out;
}

template <class T>
std::vector<std::vector<T>> wrap_windows(const std::vector<T>& values, std::size_t width) {
  return wrap_windows(std::span<const T>(values), width);
}

/// Inverse of a 2x2 matrix. Rejects |det| <= tol * (largest squared row norm).
Mat2 mat2_inverse(const Mat2& m, double tol = kDefaultTol);

}  // namespace gbs
