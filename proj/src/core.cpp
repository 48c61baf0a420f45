#include "gbspline/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gbs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotNondecreasing: return "NotNondecreasing";
    case ErrorCode::NonFiniteKnot: return "NonFiniteKnot";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfInterval: return "OutOfInterval";
    case ErrorCode::WidthTooLarge: return "WidthTooLarge";
    case ErrorCode::SingularOrIllConditioned: return "SingularOrIllConditioned";
    case ErrorCode::ChebyshevViolation: return "ChebyshevViolation";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegreeTooLargeForKnots: return "DegreeTooLargeForKnots";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LadderMissing: return "LadderMissing";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) {
  return code == ErrorCode::SingularOrIllConditioned || code == ErrorCode::ChebyshevViolation ||
         code == ErrorCode::QuadratureFailure;
}

KnotVector::KnotVector(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a knot vector needs at least two knots");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i])) {
      throw Error(ErrorCode::NonFiniteKnot, "knot " + std::to_string(i) + " is not finite", i);
    }
  }
  std::vector<std::size_t> bad;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (knots_[i] < knots_[i - 1]) bad.push_back(i);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "knots decrease at index";
    for (auto i : bad) msg << ' ' << i;
    throw Error(ErrorCode::NotNondecreasing, msg.str(), bad.front());
  }
}

std::vector<double> KnotVector::interval_lengths() const {
  std::vector<double> out(interval_count());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = interval_length(j);
  return out;
}

std::size_t KnotVector::basis_count(int degree) const noexcept {
  const auto need = static_cast<std::size_t>(degree) + 1;
  return knots_.size() > need ? knots_.size() - need : 0;
}

std::pair<double, double> KnotVector::domain(int degree) const {
  if (degree < 0 || basis_count(degree) == 0) {
    throw Error(ErrorCode::DegreeTooLargeForKnots,
                "degree " + std::to_string(degree) + " needs at least " +
                    std::to_string(degree + 2) + " knots");
  }
  const auto p = static_cast<std::size_t>(degree);
  return {knots_[p], knots_[knots_.size() - p - 1]};
}

std::size_t KnotVector::multiplicity(std::size_t i) const noexcept {
  const auto [lo, hi] = std::equal_range(knots_.begin(), knots_.end(), knots_[i]);
  return static_cast<std::size_t>(hi - lo);
}

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
  Mat2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out(r, c) = lhs(r, 0) * rhs(0, c) + lhs(r, 1) * rhs(1, c);
  }
  return out;
}

Pair operator*(const Mat2& m, const Pair& x) {
  return {m(0, 0) * x[0] + m(0, 1) * x[1], m(1, 0) * x[0] + m(1, 1) * x[1]};
}

KnotVector validate_knot_vector(std::vector<double> knots) { return KnotVector(std::move(knots)); }

IntervalIndex find_interval(const KnotVector& knots, double t, int degree, double tol) {
  const auto [lo, hi] = knots.domain(degree);
  const auto p = static_cast<std::size_t>(degree);
  const std::size_t first = p;                      // first domain interval
  const std::size_t last = knots.size() - p - 2;    // last domain interval
  if (!(hi - lo > tol)) {
    throw Error(ErrorCode::OutOfDomain, "the degree-" + std::to_string(degree) +
                                            " domain contains no nonempty interval");
  }
  if (!(t >= lo - tol && t <= hi + tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t = " << t << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  t = std::clamp(t, lo, hi);

  const auto vals = knots.values();
  std::size_t j;
  if (t >= hi) {
    j = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), hi) - vals.begin()) - 1;
  } else {
    j = static_cast<std::size_t>(std::upper_bound(vals.begin(), vals.end(), t) - vals.begin()) - 1;
  }
  j = std::clamp(j, first, last);
  while (j < last && !knots.is_nonempty(j, tol)) ++j;
  while (j > first && !knots.is_nonempty(j, tol)) --j;
  return IntervalIndex{j};
}

std::optional<IntervalIndex> locate_interval(const KnotVector& knots, double t, int degree,
                                             double tol) {
  const auto [lo, hi] = knots.domain(degree);
  if (t >= lo && t <= hi && hi - lo > tol) return find_interval(knots, t, degree, tol);

  const auto vals = knots.values();
  if (!(t >= vals.front() && t < vals.back())) return std::nullopt;
  auto j = static_cast<std::size_t>(std::upper_bound(vals.begin(), vals.end(), t) - vals.begin()) - 1;
  const std::size_t last = knots.interval_count() - 1;
  while (j < last && !knots.is_nonempty(j, tol)) ++j;
  if (!knots.is_nonempty(j, tol)) return std::nullopt;
  return IntervalIndex{j};
}

Mat2 mat2_inverse(const Mat2& m, double tol) {
  const double det = m.det();
  const double r0 = m(0, 0) * m(0, 0) + m(0, 1) * m(0, 1);
  const double r1 = m(1, 0) * m(1, 0) + m(1, 1) * m(1, 1);
  const double scale = std::max(r0, r1);
  if (!std::isfinite(det) || !(std::abs(det) > tol * scale)) {
    std::ostringstream msg;
    msg << "2x2 matrix with det " << det << " and squared row norm " << scale
        << " is singular or ill-conditioned";
    throw Error(ErrorCode::SingularOrIllConditioned, msg.str());
  }
  return Mat2{{m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det}};
}

}  // namespace gbs
