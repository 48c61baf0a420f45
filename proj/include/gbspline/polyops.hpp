#pragma once

// Power-basis polynomials in the local coordinate s = t - t_j of a knot
// interval.

#include <span>
#include <vector>

namespace gbs {

/// c_0 + c_1 s + ... + c_{q-1} s^{q-1}. No coefficients means the zero polynomial.
struct LocalPoly {
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  friend bool operator==(const LocalPoly&, const LocalPoly&) = default;
};

/// Horner evaluation.
inline double poly_val(std::span<const double> coeffs, double s) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}
inline double poly_val(const LocalPoly& poly, double s) { return poly_val(poly.coeffs, s); }

/// Antiderivative vanishing at s = 0; one coefficient longer than the input.
LocalPoly poly_int(const LocalPoly& poly);

/// Derivative; one coefficient shorter (the zero polynomial stays empty).
LocalPoly poly_der(const LocalPoly& poly);

/// Adds c to the constant term. The zero polynomial becomes [c].
LocalPoly offset_constant(LocalPoly poly, double c);

}  // namespace gbs
