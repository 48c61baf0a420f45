#pragma once

// Knot-function families. A family supplies a raw pair (u, v) in the local
// coordinate s of any interval together with their k-fold integrals anchored
// at s = 0. The raw pair need not satisfy the endpoint constraints of knot
// functions; the basis builder normalizes it per interval.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gbspline/core.hpp"
#include "gbspline/quadrature.hpp"

namespace gbs {

enum class FamilyKind {
  Linear,   // (1, s): recovers polynomial B-splines
  Trig,     // (cos ws, sin ws), needs |w| h < pi on every interval
  Exp,      // (cosh ws, sinh ws)
  Generic,  // user callables, integrals by quadrature
};

std::string_view to_string(FamilyKind kind);

class KnotFunctionFamily {
 public:
  using Function = std::function<double(double)>;

  static KnotFunctionFamily linear();
  static KnotFunctionFamily trig(double omega);
  static KnotFunctionFamily exp(double omega);
  /// Arbitrary raw pair. `base` is a free-form label kept in the descriptor.
  static KnotFunctionFamily generic(Function u, Function v, QuadratureConfig cfg = {},
                                    std::string base = {});
  /// Quadrature-backed copy of a closed-form family (same raw pair).
  static KnotFunctionFamily generic_from(const KnotFunctionFamily& closed_form,
                                         QuadratureConfig cfg = {});

  FamilyKind kind() const noexcept { return kind_; }
  double omega() const noexcept { return omega_; }
  const std::string& base() const noexcept { return base_; }
  const QuadratureConfig& quadrature() const noexcept { return quad_; }

  /// Raw (u(s), v(s)).
  Pair raw(double s) const;
  /// (u^[k](s), v^[k](s)): k-fold integrals vanishing at s = 0; k = 0 gives raw().
  Pair integral(int k, double s) const;

  /// Throws ChebyshevViolation if the raw pair cannot span a Chebyshev space
  /// on an interval of length h (interval index j is reported).
  void check_interval(double h, std::size_t j) const;

 private:
  FamilyKind kind_ = FamilyKind::Linear;
  double omega_ = 0.0;
  std::string base_;
  Function u_, v_;
  QuadratureConfig quad_;
};

/// Endpoint values of the anchored integrals of a family on every interval of
/// a knot vector: entry (k, j) is a Mat2 whose rows are the left/right
/// endpoints and whose columns are u, v. Orders k = 0..p-1.
class IntegralTable {
 public:
  IntegralTable() = default;
  IntegralTable(int orders, std::size_t intervals)
      : orders_(orders), intervals_(intervals),
        values_(static_cast<std::size_t>(orders) * intervals, Mat2::zero()) {}

  int orders() const noexcept { return orders_; }
  std::size_t intervals() const noexcept { return intervals_; }

  const Mat2& at(int k, std::size_t j) const { return values_[index(k, j)]; }
  Mat2& at(int k, std::size_t j) { return values_[index(k, j)]; }
  double at(int k, std::size_t j, int endpoint, int fn) const { return at(k, j)(endpoint, fn); }

  /// All intervals for one order.
  std::vector<Mat2> order(int k) const;

 private:
  std::size_t index(int k, std::size_t j) const {
    return static_cast<std::size_t>(k) * intervals_ + j;
  }

  int orders_ = 0;
  std::size_t intervals_ = 0;
  std::vector<Mat2> values_;
};

/// Builds the table of orders 0..p-1; checks the family on nonempty intervals.
IntegralTable integral_table(const KnotFunctionFamily& family, const KnotVector& knots,
                             int degree, double tol = kDefaultTol);

/// (u_j^[k](s), v_j^[k](s)) for 0 <= s <= h_j.
Pair eval_integral(const KnotFunctionFamily& family, const KnotVector& knots, int k,
                   IntervalIndex j, double s);

}  // namespace gbs
