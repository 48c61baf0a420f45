#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature, backed by GSL's QAG routine.

#include <cstddef>
#include <memory>
#include <type_traits>

namespace gbs {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  /// Bounds the subdivision: at most 25 * max_depth subintervals.
  int max_depth = 40;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

using Integrand = double (*)(double x, void* context);

/// Integral of f over [a, b] to absolute tolerance cfg.abs_tol. `converged` is
/// false when the subdivision limit or round-off stopped the refinement first.
QuadratureResult integrate_fn(Integrand f, void* context, double a, double b,
                              const QuadratureConfig& cfg);

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  using Fn = std::remove_reference_t<F>;
  auto thunk = [](double x, void* ctx) -> double { return (*static_cast<Fn*>(ctx))(x); };
  return integrate_fn(thunk, const_cast<void*>(static_cast<const void*>(std::addressof(f))), a, b,
                      cfg);
}

}  // namespace gbs
