#include "gbspline/polyops.hpp"

namespace gbs {

LocalPoly poly_int(const LocalPoly& poly) {
  LocalPoly out;
  out.coeffs.resize(poly.coeffs.size() + 1, 0.0);
  for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
    out.coeffs[k + 1] = poly.coeffs[k] / static_cast<double>(k + 1);
  }
  return out;
}

LocalPoly poly_der(const LocalPoly& poly) {
  LocalPoly out;
  if (poly.coeffs.size() <= 1) return out;
  out.coeffs.resize(poly.coeffs.size() - 1);
  for (std::size_t k = 1; k < poly.coeffs.size(); ++k) {
    out.coeffs[k - 1] = static_cast<double>(k) * poly.coeffs[k];
  }
  return out;
}

LocalPoly offset_constant(LocalPoly poly, double c) {
  if (poly.coeffs.empty()) {
    poly.coeffs.push_back(c);
  } else {
    poly.coeffs[0] += c;
  }
  return poly;
}

}  // namespace gbs
