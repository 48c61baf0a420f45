#include "gbspline/eval.hpp"

#include <algorithm>
#include <cmath>

namespace gbs {
namespace {

void check_index(const LocalBasis& basis, std::size_t i) {
  if (i >= basis.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "basis function " + std::to_string(i) + " of " + std::to_string(basis.size()), i);
  }
}

void check_order(int degree, int order) {
  if (order < 1 || order >= degree) {
    throw Error(ErrorCode::InvalidArgument, "derivative order " + std::to_string(order) +
                                                " needs 1 <= order < degree " +
                                                std::to_string(degree));
  }
}

}  // namespace

PieceParts eval_basis_parts(const LocalBasis& basis, std::size_t i, IntervalIndex j, double s) {
  check_index(basis, i);
  if (j.value < i || j.value - i > static_cast<std::size_t>(basis.degree)) return {};
  const std::size_t slot = j.value - i;
  const Pair g = basis.family.integral(basis.degree - 1, s);
  const Pair& c = basis.genfunc(i, slot);
  return {poly_val(basis.polys(i, slot), s), c[0] * g[0] + c[1] * g[1]};
}

double eval_basis(const LocalBasis& basis, std::size_t i, double t) {
  check_index(basis, i);
  const auto p = static_cast<std::size_t>(basis.degree);
  const auto& knots = basis.knots;
  if (!(t >= knots[i] && t <= knots[i + p + 1])) return 0.0;
  const auto j = locate_interval(knots, t, basis.degree, basis.tol);
  if (!j) return 0.0;
  return eval_basis_piece(basis, i, *j, t - knots[j->value]);
}

BasisRow eval_basis_row(const LocalBasis& basis, double t) {
  const auto p = static_cast<std::size_t>(basis.degree);
  const auto j = find_interval(basis.knots, t, basis.degree, basis.tol);
  const double s = std::max(0.0, t - basis.knots[j.value]);
  BasisRow row{j, j.value - p, std::vector<double>(p + 1)};
  const Pair g = basis.family.integral(basis.degree - 1, s);
  for (std::size_t k = 0; k <= p; ++k) {
    const std::size_t i = row.first + k;
    const std::size_t slot = p - k;
    const Pair& c = basis.genfunc(i, slot);
    row.values[k] = poly_val(basis.polys(i, slot), s) + (c[0] * g[0] + c[1] * g[1]);
  }
  return row;
}

GBSplineCurve::GBSplineCurve(LocalBasis basis,
                             const std::vector<std::vector<double>>& control_points) {
  ladder_.levels.push_back(std::move(basis));
  assign(control_points);
}

GBSplineCurve::GBSplineCurve(BasisLadder ladder,
                             const std::vector<std::vector<double>>& control_points)
    : ladder_(std::move(ladder)) {
  if (ladder_.levels.empty()) throw Error(ErrorCode::InvalidArgument, "empty basis ladder");
  assign(control_points);
}

void GBSplineCurve::assign(const std::vector<std::vector<double>>& control_points) {
  const std::size_t n = basis().size();
  if (control_points.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "curve needs " + std::to_string(n) +
                                                " control points, got " +
                                                std::to_string(control_points.size()));
  }
  dim_ = control_points.front().size();
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "control points need a dimension >= 1");
  count_ = n;
  points_.clear();
  points_.reserve(n * dim_);
  for (const auto& pt : control_points) {
    if (pt.size() != dim_) {
      throw Error(ErrorCode::InvalidArgument, "control points differ in dimension");
    }
    points_.insert(points_.end(), pt.begin(), pt.end());
  }
}

void GBSplineCurve::set_control_point(std::size_t i, std::span<const double> point) {
  if (i >= count_) throw Error(ErrorCode::IndexOutOfRange, "control point index", i);
  if (point.size() != dim_) throw Error(ErrorCode::InvalidArgument, "control point dimension");
  std::copy(point.begin(), point.end(), points_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
}

std::vector<double> eval_curve(const GBSplineCurve& curve, double t) {
  const auto row = eval_basis_row(curve.basis(), t);
  std::vector<double> out(curve.dimension(), 0.0);
  for (std::size_t k = 0; k < row.values.size(); ++k) {
    const auto a = curve.control_point(row.first + k);
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += row.values[k] * a[d];
  }
  return out;
}

double eval_basis_derivative_piece(const BasisLadder& ladder, int degree, std::size_t i,
                                   IntervalIndex j, double s, int order) {
  const LocalBasis& basis = ladder.at_degree(degree);
  if (order == 0) return eval_basis_piece(basis, i, j, s);
  check_order(degree, order);
  check_index(basis, i);
  double out = 0.0;
  for (std::size_t k = i; k <= i + 1; ++k) {
    const double delta = basis.deltas.at(k);
    if (delta == 0.0) continue;
    const double term = eval_basis_derivative_piece(ladder, degree - 1, k, j, s, order - 1) / delta;
    out += k == i ? term : -term;
  }
  return out;
}

double eval_basis_derivative(const BasisLadder& ladder, std::size_t i, double t, int order) {
  const LocalBasis& basis = ladder.top();
  check_order(basis.degree, order);
  check_index(basis, i);
  ladder.at_degree(basis.degree - 1);
  const auto p = static_cast<std::size_t>(basis.degree);
  const auto& knots = basis.knots;
  if (!(t >= knots[i] && t <= knots[i + p + 1])) return 0.0;
  const auto j = locate_interval(knots, t, basis.degree, basis.tol);
  if (!j) return 0.0;
  return eval_basis_derivative_piece(ladder, basis.degree, i, *j, t - knots[j->value], order);
}

std::vector<double> eval_curve_derivative(const GBSplineCurve& curve, double t, int order) {
  const auto& ladder = curve.ladder();
  const LocalBasis& basis = ladder.top();
  check_order(basis.degree, order);
  const LocalBasis& lower = ladder.at_degree(basis.degree - 1);
  const auto j = find_interval(basis.knots, t, basis.degree, basis.tol);
  const double s = std::max(0.0, t - basis.knots[j.value]);
  const auto p = static_cast<std::size_t>(basis.degree);
  const std::size_t dim = curve.dimension();

  // sum_k D^{order-1} N_k^{p-1} (a_k - a_{k-1}) / delta_k with a_{-1} = a_n = 0;
  // only k = j-p+1 .. j are nonzero on interval j.
  std::vector<double> out(dim, 0.0);
  const std::size_t n = curve.size();
  for (std::size_t k = j.value + 1 - p; k <= j.value; ++k) {
    const double delta = basis.deltas.at(k);
    if (delta == 0.0) continue;
    const double w = (order == 1 ? eval_basis_piece(lower, k, j, s)
                                 : eval_basis_derivative_piece(ladder, basis.degree - 1, k, j, s,
                                                               order - 1)) /
                     delta;
    for (std::size_t d = 0; d < dim; ++d) {
      const double ak = k < n ? curve.control_point(k)[d] : 0.0;
      const double prev = k >= 1 ? curve.control_point(k - 1)[d] : 0.0;
      out[d] += w * (ak - prev);
    }
  }
  return out;
}

bool is_smooth_at(const KnotVector& knots, int degree, double t, int order, double tol) {
  const auto vals = knots.values();
  const auto it = std::lower_bound(vals.begin(), vals.end(), t - tol);
  if (it == vals.end() || std::abs(*it - t) > tol) return true;
  if (it == vals.begin() || *it >= vals.back()) return true;
  const auto mult = static_cast<int>(knots.multiplicity(static_cast<std::size_t>(it - vals.begin())));
  return order <= degree - mult;
}

}  // namespace gbs
