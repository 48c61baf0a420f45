#pragma once

// Direct evaluation from a local representation: locate the interval, run
// Horner on the polynomial part and add the two integrated knot functions.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gbspline/builder.hpp"

namespace gbs {

/// Polynomial and general-function parts of one piece at a local coordinate.
struct PieceParts {
  double poly = 0.0;
  double gen = 0.0;
  double total() const { return poly + gen; }
};

/// Parts of function i on interval j at s = t - t_j (zero if j is outside
/// the support). Pieces extend continuously to s = h_j.
PieceParts eval_basis_parts(const LocalBasis& basis, std::size_t i, IntervalIndex j, double s);

inline double eval_basis_piece(const LocalBasis& basis, std::size_t i, IntervalIndex j, double s) {
  return eval_basis_parts(basis, i, j, s).total();
}

/// N_i^p(t) for any real t. Half-open intervals, except at the right end of
/// the curve domain where the last nonempty domain interval is used.
double eval_basis(const LocalBasis& basis, std::size_t i, double t);

struct BasisRow {
  IntervalIndex interval;
  std::size_t first = 0;       // index of values[0]
  std::vector<double> values;  // p + 1 entries
};

/// Values of the p + 1 functions supported on the interval containing t.
/// Throws OutOfDomain outside [t_p, t_{m-p-1}].
BasisRow eval_basis_row(const LocalBasis& basis, double t);

/// Basis (optionally with its lower-degree ladder) plus control points.
class GBSplineCurve {
 public:
  GBSplineCurve(LocalBasis basis, const std::vector<std::vector<double>>& control_points);
  /// Keeps the ladder so derivatives are available.
  GBSplineCurve(BasisLadder ladder, const std::vector<std::vector<double>>& control_points);

  const LocalBasis& basis() const { return ladder_.top(); }
  const BasisLadder& ladder() const { return ladder_; }
  std::size_t size() const noexcept { return count_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::pair<double, double> domain() const { return basis().knots.domain(basis().degree); }

  std::span<const double> control_point(std::size_t i) const {
    return {points_.data() + i * dim_, dim_};
  }
  std::span<const double> control_points_flat() const noexcept { return points_; }
  void set_control_point(std::size_t i, std::span<const double> point);

 private:
  void assign(const std::vector<std::vector<double>>& control_points);

  BasisLadder ladder_;
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> points_;
};

/// f(t) = sum_i a_i N_i^p(t), t in the domain.
std::vector<double> eval_curve(const GBSplineCurve& curve, double t);

/// order-th derivative of N_i^p through the lower-degree ladder:
/// (N_i^q)' = N_i^{q-1} / delta_i - N_{i+1}^{q-1} / delta_{i+1}, zero-delta
/// terms dropped. Requires 1 <= order < p. At knots where the derivative
/// does not exist the right-hand value is returned (see is_smooth_at);
/// at the right end of the domain, the left-hand one.
double eval_basis_derivative(const BasisLadder& ladder, std::size_t i, double t, int order = 1);

/// Same recursion on interval j at local coordinate s.
double eval_basis_derivative_piece(const BasisLadder& ladder, int degree, std::size_t i,
                                   IntervalIndex j, double s, int order = 1);

/// order-th derivative of the curve; t in the domain.
std::vector<double> eval_curve_derivative(const GBSplineCurve& curve, double t, int order = 1);

/// False when t sits on an interior knot of multiplicity k with order > p - k.
bool is_smooth_at(const KnotVector& knots, int degree, double t, int order,
                  double tol = kDefaultTol);

}  // namespace gbs
