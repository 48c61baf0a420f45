#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "gbspline/core.hpp"
#include "gbspline/families.hpp"

namespace gbs::testing {

inline KnotVector uniform_knots(std::size_t m, double h = 1.0, double start = 0.0) {
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = start + h * static_cast<double>(i);
  return KnotVector(t);
}

/// p + 1 copies of each end, `interior` equally spaced interior knots.
inline KnotVector open_knots(int degree, std::size_t interior, double a = 0.0, double b = 1.0) {
  std::vector<double> t(static_cast<std::size_t>(degree) + 1, a);
  for (std::size_t k = 1; k <= interior; ++k) {
    t.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(interior + 1));
  }
  t.insert(t.end(), static_cast<std::size_t>(degree) + 1, b);
  return KnotVector(t);
}

/// Random knot vector of length m with interior multiplicities up to
/// max_mult, values on a coarse grid so repeats occur; optionally open.
inline KnotVector random_knots(std::mt19937_64& rng, int degree, std::size_t m,
                               std::size_t max_mult, bool open, double max_h = 1.0) {
  std::uniform_real_distribution<double> gap(0.1 * max_h, max_h);
  std::uniform_int_distribution<std::size_t> mult(1, std::max<std::size_t>(1, max_mult));
  const auto p = static_cast<std::size_t>(degree);
  std::vector<double> t;
  double x = 0.0;
  if (open) t.assign(p + 1, x);
  const std::size_t tail = open ? p + 1 : 0;
  while (t.size() + tail < m) {
    x += gap(rng);
    const std::size_t k = std::min(mult(rng), m - tail - t.size());
    t.insert(t.end(), k, x);
  }
  if (open) {
    x += gap(rng);
    t.insert(t.end(), p + 1, x);
  }
  return KnotVector(t);
}

/// Random points in [a, b].
inline std::vector<double> random_points(std::mt19937_64& rng, std::size_t count, double a,
                                         double b) {
  std::uniform_real_distribution<double> dist(a, b);
  std::vector<double> out(count);
  for (auto& x : out) x = dist(rng);
  return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t q = 0; q < count; ++q) {
    out[q] = count == 1 ? a : a + (b - a) * static_cast<double>(q) / static_cast<double>(count - 1);
  }
  out.back() = b;
  return out;
}

/// Distance from t to the nearest knot.
inline double knot_distance(const KnotVector& knots, double t) {
  double d = INFINITY;
  for (double k : knots.values()) d = std::min(d, std::abs(t - k));
  return d;
}

inline std::vector<KnotFunctionFamily> all_families() {
  return {KnotFunctionFamily::linear(), KnotFunctionFamily::trig(0.5),
          KnotFunctionFamily::trig(1.0), KnotFunctionFamily::trig(2.0),
          KnotFunctionFamily::exp(1.0)};
}

}  // namespace gbs::testing
