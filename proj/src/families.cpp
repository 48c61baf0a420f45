#include "gbspline/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gbs {
namespace {

double inv_factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return 1.0 / f;
}

// Even and odd parts of sum_n x^n / (n + k)! with the n-th term carrying
// sign^(n/2): sign = -1 gives the anchored integrals of (cos, sin), sign = +1
// those of (cosh, sinh), up to the factor s^k.
Pair even_odd_phi(int k, double x, double sign) {
  if (std::abs(x) <= 2.0) {
    double even = 0.0, odd = 0.0;
    double term = inv_factorial(k);  // x^n / (n + k)!
    for (int n = 0; n < 64; ++n) {
      const double signed_term = ((n / 2) % 2 == 1 && sign < 0) ? -term : term;
      if (n % 2 == 0) {
        even += signed_term;
      } else {
        odd += signed_term;
      }
      term *= x / static_cast<double>(n + k + 1);
      if (std::abs(term) < 1e-18 * (std::abs(even) + std::abs(odd))) break;
    }
    return {even, odd};
  }
  // Upward recurrence, stable for |x| > 2 at the low orders used here.
  double c = sign < 0 ? std::cos(x) : std::cosh(x);
  double s = sign < 0 ? std::sin(x) : std::sinh(x);
  for (int i = 1; i <= k; ++i) {
    const double f = inv_factorial(i - 1);
    const double nc = s / x;
    const double ns = sign < 0 ? (f - c) / x : (c - f) / x;
    c = nc;
    s = ns;
  }
  return {c, s};
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Linear: return "linear";
    case FamilyKind::Trig: return "trig";
    case FamilyKind::Exp: return "exp";
    case FamilyKind::Generic: return "generic";
  }
  return "unknown";
}

KnotFunctionFamily KnotFunctionFamily::linear() { return KnotFunctionFamily{}; }

KnotFunctionFamily KnotFunctionFamily::trig(double omega) {
  if (!std::isfinite(omega) || omega == 0.0) {
    throw Error(ErrorCode::ChebyshevViolation, "trigonometric family needs a nonzero finite omega");
  }
  KnotFunctionFamily f;
  f.kind_ = FamilyKind::Trig;
  f.omega_ = omega;
  return f;
}

KnotFunctionFamily KnotFunctionFamily::exp(double omega) {
  if (!std::isfinite(omega) || omega == 0.0) {
    throw Error(ErrorCode::ChebyshevViolation, "exponential family needs a nonzero finite omega");
  }
  KnotFunctionFamily f;
  f.kind_ = FamilyKind::Exp;
  f.omega_ = omega;
  return f;
}

KnotFunctionFamily KnotFunctionFamily::generic(Function u, Function v, QuadratureConfig cfg,
                                               std::string base) {
  if (!u || !v) throw Error(ErrorCode::InvalidArgument, "generic family needs two callables");
  if (!(cfg.abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  KnotFunctionFamily f;
  f.kind_ = FamilyKind::Generic;
  f.u_ = std::move(u);
  f.v_ = std::move(v);
  f.quad_ = cfg;
  f.base_ = std::move(base);
  return f;
}

KnotFunctionFamily KnotFunctionFamily::generic_from(const KnotFunctionFamily& closed_form,
                                                    QuadratureConfig cfg) {
  if (closed_form.kind() == FamilyKind::Generic) return closed_form;
  auto f = generic([closed_form](double s) { return closed_form.raw(s)[0]; },
                   [closed_form](double s) { return closed_form.raw(s)[1]; }, cfg,
                   std::string(to_string(closed_form.kind())));
  f.omega_ = closed_form.omega();
  return f;
}

Pair KnotFunctionFamily::raw(double s) const {
  switch (kind_) {
    case FamilyKind::Linear: return {1.0, s};
    case FamilyKind::Trig: return {std::cos(omega_ * s), std::sin(omega_ * s)};
    case FamilyKind::Exp: return {std::cosh(omega_ * s), std::sinh(omega_ * s)};
    case FamilyKind::Generic: return {u_(s), v_(s)};
  }
  return {0.0, 0.0};
}

Pair KnotFunctionFamily::integral(int k, double s) const {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "integral order must be nonnegative");
  if (k == 0) return raw(s);
  switch (kind_) {
    case FamilyKind::Linear: {
      const double a = std::pow(s, k) * inv_factorial(k);
      return {a, a * s / static_cast<double>(k + 1)};
    }
    case FamilyKind::Trig:
    case FamilyKind::Exp: {
      const double sign = kind_ == FamilyKind::Trig ? -1.0 : 1.0;
      const auto [even, odd] = even_odd_phi(k, omega_ * s, sign);
      const double sk = std::pow(s, k);
      return {sk * even, sk * odd};
    }
    case FamilyKind::Generic: {
      if (s == 0.0) return {0.0, 0.0};
      // Cauchy's formula for repeated integration.
      const double w = inv_factorial(k - 1);
      Pair out{};
      for (int fn = 0; fn < 2; ++fn) {
        const auto& g = fn == 0 ? u_ : v_;
        auto integrand = [&](double x) { return w * std::pow(s - x, k - 1) * g(x); };
        const auto r = gbs::integrate(integrand, 0.0, s, quad_);
        if (!r.converged || !std::isfinite(r.value)) {
          std::ostringstream msg;
          msg << "order-" << k << " integral at s = " << s << " missed tolerance "
              << quad_.abs_tol << " (error estimate " << r.error << ")";
          throw Error(ErrorCode::QuadratureFailure, msg.str());
        }
        out[static_cast<std::size_t>(fn)] = r.value;
      }
      return out;
    }
  }
  return {0.0, 0.0};
}

void KnotFunctionFamily::check_interval(double h, std::size_t j) const {
  if (kind_ == FamilyKind::Trig && !(std::abs(omega_) * h < std::numbers::pi)) {
    std::ostringstream msg;
    msg << "interval " << j << ": |omega| * h = " << std::abs(omega_) * h << " is not below pi";
    throw Error(ErrorCode::ChebyshevViolation, msg.str(), j);
  }
}

std::vector<Mat2> IntegralTable::order(int k) const {
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(index(k, 0));
  return {first, first + static_cast<std::ptrdiff_t>(intervals_)};
}

IntegralTable integral_table(const KnotFunctionFamily& family, const KnotVector& knots,
                             int degree, double tol) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  IntegralTable table(degree, knots.interval_count());
  for (std::size_t j = 0; j < knots.interval_count(); ++j) {
    const double h = knots.interval_length(j);
    if (knots.is_nonempty(j, tol)) family.check_interval(h, j);
    for (int k = 0; k < degree; ++k) {
      const Pair left = family.integral(k, 0.0);
      const Pair right = family.integral(k, h);
      table.at(k, j) = Mat2{{left[0], left[1], right[0], right[1]}};
    }
  }
  return table;
}

Pair eval_integral(const KnotFunctionFamily& family, const KnotVector& knots, int k,
                   IntervalIndex j, double s) {
  if (j.value >= knots.interval_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "interval index out of range", j.value);
  }
  const double h = knots.interval_length(j.value);
  if (!(s >= 0.0 && s <= h)) {
    std::ostringstream msg;
    msg << "s = " << s << " outside [0, " << h << "]";
    throw Error(ErrorCode::OutOfInterval, msg.str(), j.value);
  }
  return family.integral(k, s);
}

}  // namespace gbs
