#include "gbspline/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <mutex>

namespace gbs {
namespace {

struct Counted {
  Integrand f;
  void* context;
  std::size_t calls = 0;
};

double counted(double x, void* p) {
  auto* c = static_cast<Counted*>(p);
  ++c->calls;
  return c->f(x, c->context);
}

struct Workspace {
  explicit Workspace(std::size_t n) : ptr(gsl_integration_workspace_alloc(n)) {}
  ~Workspace() { gsl_integration_workspace_free(ptr); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
  gsl_integration_workspace* ptr;
};

}  // namespace

QuadratureResult integrate_fn(Integrand f, void* context, double a, double b,
                              const QuadratureConfig& cfg) {
  static std::once_flag quiet;
  // GSL aborts on errors by default; status codes are handled below instead.
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });

  QuadratureResult out;
  if (a == b) return out;
  const auto limit = static_cast<std::size_t>(std::max(1, 25 * cfg.max_depth));
  Workspace ws(limit);
  Counted c{f, context};
  gsl_function fn{&counted, &c};
  const int status = gsl_integration_qag(&fn, a, b, cfg.abs_tol, 0.0, limit, GSL_INTEG_GAUSS15,
                                         ws.ptr, &out.value, &out.error);
  out.converged = status == GSL_SUCCESS;
  out.evaluations = c.calls;
  return out;
}

}  // namespace gbs
