#include "gbspline/oracle.hpp"

#include <cmath>
#include <sstream>

namespace gbs {

RecursiveOracle::RecursiveOracle(KnotVector knots, KnotFunctionFamily family,
                                 QuadratureConfig cfg, double tol)
    : knots_(std::move(knots)), family_(std::move(family)), cfg_(cfg), tol_(tol) {
  if (!(cfg_.abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  norm_.assign(knots_.interval_count(), Mat2::zero());
  for (std::size_t j = 0; j < knots_.interval_count(); ++j) {
    if (!knots_.is_nonempty(j, tol_)) continue;
    const double h = knots_.interval_length(j);
    family_.check_interval(h, j);
    // Solve for the combinations u = a f_u + b f_v with u(0) = 1, u(h) = 0 and
    // v = c f_u + d f_v with v(0) = 0, v(h) = 1 (Cramer's rule).
    const auto [u0, v0] = family_.raw(0.0);
    const auto [u1, v1] = family_.raw(h);
    const double det = u0 * v1 - v0 * u1;
    if (!(std::abs(det) > 0.0)) {
      throw Error(ErrorCode::SingularOrIllConditioned,
                  "raw knot functions are dependent on interval " + std::to_string(j), j);
    }
    // row 0: coefficients of u, row 1: coefficients of v
    norm_[j] = Mat2{{v1 / det, -u1 / det, -v0 / det, u0 / det}};
  }
}

double RecursiveOracle::hat_piece(std::size_t i, std::size_t j, double s) {
  if (j != i && j != i + 1) return 0.0;
  ++raw_evals_;
  const auto [fu, fv] = family_.raw(s);
  const int r = j == i ? 1 : 0;  // rising v_i on the first interval, falling u_{i+1} after
  return norm_[j](r, 0) * fu + norm_[j](r, 1) * fv;
}

double RecursiveOracle::piece(int degree, std::size_t i, std::size_t j, double s) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  if (degree == 1) return hat_piece(i, j, s);
  return phi_piece(degree - 1, i, j, s) - phi_piece(degree - 1, i + 1, j, s);
}

double RecursiveOracle::phi_piece(int degree, std::size_t i, std::size_t j, double s) {
  const std::size_t end = i + static_cast<std::size_t>(degree) + 1;
  if (!(knots_[end] - knots_[i] > tol_)) return j >= end ? 1.0 : 0.0;
  if (j < i) return 0.0;
  if (j >= end) return 1.0;
  return (cumulative(degree, i, j) + integrate_piece(degree, i, j, s)) / delta(degree, i);
}

double RecursiveOracle::delta(int degree, std::size_t i) {
  return cumulative(degree, i, i + static_cast<std::size_t>(degree) + 1);
}

double RecursiveOracle::cumulative(int degree, std::size_t i, std::size_t j) {
  const auto key = std::make_tuple(degree, i, j);
  if (const auto it = cumulative_memo_.find(key); it != cumulative_memo_.end()) return it->second;
  double sum = 0.0;
  for (std::size_t k = i; k < j; ++k) {
    if (knots_.is_nonempty(k, tol_)) sum += integrate_piece(degree, i, k, knots_.interval_length(k));
  }
  cumulative_memo_.emplace(key, sum);
  return sum;
}

double RecursiveOracle::integrate_piece(int degree, std::size_t i, std::size_t j, double upper) {
  if (upper <= 0.0) return 0.0;
  auto f = [&](double x) { return piece(degree, i, j, x); };
  const auto r = integrate(f, 0.0, upper, cfg_);
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream msg;
    msg << "integral of degree-" << degree << " function " << i << " on interval " << j
        << " missed tolerance " << cfg_.abs_tol;
    throw Error(ErrorCode::QuadratureFailure, msg.str(), i);
  }
  return r.value;
}

double RecursiveOracle::eval(int degree, std::size_t i, double t) {
  if (i >= knots_.basis_count(degree)) {
    throw Error(ErrorCode::IndexOutOfRange, "basis function index", i);
  }
  const std::size_t end = i + static_cast<std::size_t>(degree) + 1;
  if (!(t >= knots_[i] && t <= knots_[end])) return 0.0;
  const auto j = locate_interval(knots_, t, degree, tol_);
  if (!j || j->value < i || j->value >= end) return 0.0;
  return piece(degree, i, j->value, t - knots_[j->value]);
}

double oracle_eval_basis(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                         std::size_t i, double t, const QuadratureConfig& cfg) {
  RecursiveOracle oracle(knots, family, cfg);
  return oracle.eval(degree, i, t);
}

double cox_de_boor(const KnotVector& knots, int degree, std::size_t i, double t, double tol) {
  if (degree < 0 || i >= knots.basis_count(degree)) {
    throw Error(ErrorCode::IndexOutOfRange, "basis function index", i);
  }
  const auto p = static_cast<std::size_t>(degree);
  if (!(t >= knots[i] && t <= knots[i + p + 1])) return 0.0;
  const auto span = degree == 0 ? std::optional<IntervalIndex>{} : locate_interval(knots, t, degree, tol);
  std::size_t active;
  if (span) {
    active = span->value;
  } else if (degree == 0 && knots.is_nonempty(i, 0.0) && t < knots[i + 1]) {
    active = i;
  } else {
    return 0.0;
  }

  std::vector<double> n(p + 1);
  for (std::size_t k = 0; k <= p; ++k) n[k] = (i + k == active) ? 1.0 : 0.0;
  for (std::size_t q = 1; q <= p; ++q) {
    for (std::size_t k = 0; k + q <= p; ++k) {
      const std::size_t a = i + k;
      const double left = knots[a + q] - knots[a];
      const double right = knots[a + q + 1] - knots[a + 1];
      double v = 0.0;
      if (left > 0.0) v += (t - knots[a]) / left * n[k];
      if (right > 0.0) v += (knots[a + q + 1] - t) / right * n[k + 1];
      n[k] = v;
    }
  }
  return n[0];
}

}  // namespace gbs
