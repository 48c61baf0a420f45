#pragma once

// Reference evaluators that do not use the local representation:
//  - GB-splines by recursive numerical integration of the defining recurrence
//    (degree-1 hats from normalized knot functions, delta = support integral,
//    Phi = normalized running integral with a 0/1 step when delta = 0,
//    N^p = Phi_i^{p-1} - Phi_{i+1}^{p-1});
//  - classical B-splines by the Cox-de Boor recursion.
// Both use the same interval conventions as eval_basis.

#include <cstddef>
#include <map>
#include <tuple>

#include "gbspline/core.hpp"
#include "gbspline/families.hpp"
#include "gbspline/quadrature.hpp"

namespace gbs {

/// Recursive-quadrature evaluator with memoized support and knot-to-knot
/// integrals. Only the raw family values are used, never its closed-form
/// integrals. Not thread-safe; use one instance per thread.
///
/// Error: every level adds roughly abs_tol / delta to the next, so the
/// degree-p value carries about (p - 1) * abs_tol / min(delta) error plus the
/// propagated error of the knot-to-knot integrals.
class RecursiveOracle {
 public:
  RecursiveOracle(KnotVector knots, KnotFunctionFamily family, QuadratureConfig cfg = {},
                  double tol = kDefaultTol);

  /// N_i^p(t) with the interval conventions of eval_basis.
  double eval(int degree, std::size_t i, double t);
  /// Piece of N_i^p on interval j at local coordinate s in [0, h_j].
  double piece(int degree, std::size_t i, std::size_t j, double s);
  /// delta_i^p, the integral of N_i^p over its support.
  double delta(int degree, std::size_t i);

  const KnotVector& knots() const noexcept { return knots_; }
  std::size_t evaluations() const noexcept { return raw_evals_; }

 private:
  double hat_piece(std::size_t i, std::size_t j, double s);
  double phi_piece(int degree, std::size_t i, std::size_t j, double s);
  /// Integral of N_i^p over [t_i, t_j].
  double cumulative(int degree, std::size_t i, std::size_t j);
  double integrate_piece(int degree, std::size_t i, std::size_t j, double upper);

  KnotVector knots_;
  KnotFunctionFamily family_;
  QuadratureConfig cfg_;
  double tol_;
  std::vector<Mat2> norm_;  // raw -> normalized knot functions, per interval
  std::map<std::tuple<int, std::size_t, std::size_t>, double> cumulative_memo_;
  std::size_t raw_evals_ = 0;
};

/// One-shot convenience wrapper (fresh memo per call).
double oracle_eval_basis(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                         std::size_t i, double t, const QuadratureConfig& cfg = {});

/// Classical B-spline N_{i,p}(t).
double cox_de_boor(const KnotVector& knots, int degree, std::size_t i, double t,
                   double tol = kDefaultTol);

}  // namespace gbs
