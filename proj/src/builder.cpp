#include "gbspline/builder.hpp"

#include <cmath>
#include <sstream>

namespace gbs {
namespace {

double dot(const Pair& coef, const Pair& values) { return coef[0] * values[0] + coef[1] * values[1]; }

void check_windows(std::size_t rows, std::size_t cols, const auto& windows, const char* what) {
  if (windows.size() < rows || (rows > 0 && windows.front().size() < cols)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " windows do not cover the basis");
  }
}

LocalBasis finish(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                  double tol, const BasisCoefficients& coefs, const std::vector<Mat2>& scal,
                  std::vector<double> deltas) {
  LocalBasis out;
  out.degree = degree;
  out.knots = knots;
  out.family = family;
  out.polys = coefs.polys;
  out.genfunc = scale_genfunc_coefs(wrap_windows(scal, static_cast<std::size_t>(degree) + 1),
                                    coefs.genfunc);
  out.scal = scal;
  out.deltas = std::move(deltas);
  out.tol = tol;
  return out;
}

BasisLadder construct(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                      double tol, bool keep_ladder) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  if (knots.basis_count(degree) == 0) {
    throw Error(ErrorCode::DegreeTooLargeForKnots,
                "degree " + std::to_string(degree) + " needs at least " +
                    std::to_string(degree + 2) + " knots, got " + std::to_string(knots.size()));
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");

  const auto table = integral_table(family, knots, degree, tol);
  const auto lengths = knots.interval_lengths();
  auto tvals = wrap_windows(lengths, 2);
  auto coefs = make_degree_one(knots.size() - 2);
  auto [ints, scal] = scale_knot_funcs(table, lengths, tol);

  BasisLadder ladder;
  if (keep_ladder || degree == 1) ladder.levels.push_back(finish(knots, family, 1, tol, coefs, scal, {}));

  const auto t = knots.values();
  for (int d = 2; d <= degree; ++d) {
    const auto width = static_cast<std::size_t>(d);
    Grid<LocalPoly> pints(coefs.polys.rows(), coefs.polys.cols());
    for (std::size_t i = 0; i < pints.rows(); ++i) {
      for (std::size_t k = 0; k < pints.cols(); ++k) pints(i, k) = poly_int(coefs.polys(i, k));
    }
    const auto wints = wrap_windows(ints.order(d - 1), width);
    auto [deltas, consts] = integrate_supports(tvals, pints, coefs.genfunc, wints);
    offset_constants(pints, consts);

    std::vector<bool> pos(t.size() - width);
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = t[i + width] - t[i] > tol;

    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (!pos[i]) {
        deltas[i] = 0.0;
        continue;
      }
      if (!(deltas[i] > 0.0) || !std::isfinite(deltas[i])) {
        std::ostringstream msg;
        msg << "support integral of degree-" << d - 1 << " function " << i << " is " << deltas[i];
        throw Error(ErrorCode::SingularOrIllConditioned, msg.str(), i);
      }
      for (std::size_t k = 0; k < pints.cols(); ++k) {
        for (auto& c : pints(i, k).coeffs) c /= deltas[i];
        auto& g = coefs.genfunc(i, k);
        g[0] /= deltas[i];
        g[1] /= deltas[i];
      }
    }

    coefs = offset_differences(pints, coefs.genfunc);
    add_ones(coefs.polys, pos);
    tvals = wrap_windows(lengths, width + 1);
    connect_boundaries(coefs.polys, coefs.genfunc, wints, tvals);

    if (keep_ladder || d == degree) {
      ladder.levels.push_back(finish(knots, family, d, tol, coefs, scal, std::move(deltas)));
    }
  }
  return ladder;
}

}  // namespace

const LocalBasis& BasisLadder::at_degree(int degree) const {
  for (const auto& b : levels) {
    if (b.degree == degree) return b;
  }
  throw Error(ErrorCode::LadderMissing,
              "degree " + std::to_string(degree) + " basis was not retained (build with a ladder)");
}

BasisCoefficients make_degree_one(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "a degree-1 basis needs at least one function");
  BasisCoefficients out{Grid<LocalPoly>(n, 2), Grid<Pair>(n, 2)};
  for (std::size_t i = 0; i < n; ++i) {
    out.genfunc(i, 0) = {0.0, 1.0};
    out.genfunc(i, 1) = {1.0, 0.0};
  }
  return out;
}

ScaledTable scale_knot_funcs(const IntegralTable& ints, std::span<const double> lengths,
                             double tol) {
  if (lengths.size() != ints.intervals()) {
    throw Error(ErrorCode::InvalidArgument, "interval lengths do not match the integral table");
  }
  ScaledTable out{ints, std::vector<Mat2>(ints.intervals(), Mat2::zero())};
  for (std::size_t j = 0; j < ints.intervals(); ++j) {
    if (!(lengths[j] > tol)) continue;
    try {
      out.scal[j] = mat2_inverse(ints.at(0, j), tol);
    } catch (const Error& e) {
      throw Error(ErrorCode::SingularOrIllConditioned,
                  "interval " + std::to_string(j) + ": " + e.what(), j);
    }
  }
  for (int k = 0; k < ints.orders(); ++k) {
    for (std::size_t j = 0; j < ints.intervals(); ++j) out.ints.at(k, j) = ints.at(k, j) * out.scal[j];
  }
  return out;
}

Grid<Pair> scale_genfunc_coefs(const std::vector<std::vector<Mat2>>& scal_windows,
                               Grid<Pair> genfunc) {
  check_windows(genfunc.rows(), genfunc.cols(), scal_windows, "scaling");
  for (std::size_t i = 0; i < genfunc.rows(); ++i) {
    for (std::size_t k = 0; k < genfunc.cols(); ++k) genfunc(i, k) = scal_windows[i][k] * genfunc(i, k);
  }
  return genfunc;
}

GenFuncIntegrals genfunc_int(const Grid<Pair>& genfunc,
                             const std::vector<std::vector<Mat2>>& wints) {
  check_windows(genfunc.rows(), genfunc.cols(), wints, "integral");
  GenFuncIntegrals out{Grid<double>(genfunc.rows(), genfunc.cols()),
                       Grid<double>(genfunc.rows(), genfunc.cols())};
  for (std::size_t i = 0; i < genfunc.rows(); ++i) {
    for (std::size_t k = 0; k < genfunc.cols(); ++k) {
      const Mat2& w = wints[i][k];
      out.consts(i, k) = -dot(genfunc(i, k), w.row(0));
      out.vals(i, k) = dot(genfunc(i, k), w.row(1)) + out.consts(i, k);
    }
  }
  return out;
}

SupportIntegrals integrate_supports(const std::vector<std::vector<double>>& tvals,
                                    const Grid<LocalPoly>& pints, const Grid<Pair>& genfunc,
                                    const std::vector<std::vector<Mat2>>& wints) {
  check_windows(pints.rows(), pints.cols(), tvals, "length");
  auto [vals, consts] = genfunc_int(genfunc, wints);
  SupportIntegrals out{std::vector<double>(pints.rows(), 0.0), std::move(consts)};
  for (std::size_t i = 0; i < pints.rows(); ++i) {
    for (std::size_t k = 0; k < pints.cols(); ++k) {
      out.deltas[i] += vals(i, k) + poly_val(pints(i, k), tvals[i][k]);
    }
  }
  return out;
}

void offset_constants(Grid<LocalPoly>& pints, const Grid<double>& consts) {
  for (std::size_t i = 0; i < pints.rows(); ++i) {
    for (std::size_t k = 0; k < pints.cols(); ++k) {
      pints(i, k) = offset_constant(std::move(pints(i, k)), consts(i, k));
    }
  }
}

BasisCoefficients offset_differences(const Grid<LocalPoly>& pints, const Grid<Pair>& genfunc) {
  const std::size_t n = pints.rows();
  const std::size_t slots = pints.cols();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "differencing needs at least two functions");
  std::size_t width = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < slots; ++k) width = std::max(width, pints(i, k).size());
  }

  BasisCoefficients out{Grid<LocalPoly>(n - 1, slots + 1, LocalPoly{std::vector<double>(width, 0.0)}),
                        Grid<Pair>(n - 1, slots + 1, Pair{0.0, 0.0})};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = 0; k < slots; ++k) {
      auto& left = out.polys(i, k).coeffs;
      const auto& own = pints(i, k).coeffs;
      for (std::size_t c = 0; c < own.size(); ++c) left[c] += own[c];
      out.genfunc(i, k)[0] += genfunc(i, k)[0];
      out.genfunc(i, k)[1] += genfunc(i, k)[1];

      auto& right = out.polys(i, k + 1).coeffs;
      const auto& next = pints(i + 1, k).coeffs;
      for (std::size_t c = 0; c < next.size(); ++c) right[c] -= next[c];
      out.genfunc(i, k + 1)[0] -= genfunc(i + 1, k)[0];
      out.genfunc(i, k + 1)[1] -= genfunc(i + 1, k)[1];
    }
  }
  return out;
}

void add_ones(Grid<LocalPoly>& polys, const std::vector<bool>& pos) {
  if (polys.cols() == 0) return;
  const std::size_t last = polys.cols() - 1;
  for (std::size_t i = 0; i < polys.rows() && i + 1 < pos.size(); ++i) {
    if (!pos[i]) polys(i, last) = offset_constant(std::move(polys(i, last)), 1.0);
  }
}

void connect_boundaries(Grid<LocalPoly>& polys, const Grid<Pair>& genfunc,
                        const std::vector<std::vector<Mat2>>& wints,
                        const std::vector<std::vector<double>>& tvals) {
  if (polys.cols() < 2) return;
  const std::size_t inner = polys.cols() - 1;
  check_windows(polys.rows(), inner, wints, "integral");
  check_windows(polys.rows(), inner, tvals, "length");
  std::vector<double> rise(inner);
  for (std::size_t i = 0; i < polys.rows(); ++i) {
    // increments over each slot, taken before any slot is shifted
    for (std::size_t k = 0; k < inner; ++k) {
      rise[k] = poly_val(polys(i, k), tvals[i][k]) + dot(genfunc(i, k), wints[i][k].row(1));
    }
    double running = 0.0;
    for (std::size_t k = 0; k < inner; ++k) {
      running += rise[k];
      polys(i, k + 1) = offset_constant(std::move(polys(i, k + 1)), running);
    }
  }
}

LocalBasis build_basis(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                       double tol) {
  auto ladder = construct(knots, family, degree, tol, false);
  return std::move(ladder.levels.back());
}

BasisLadder build_ladder(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                         double tol) {
  return construct(knots, family, degree, tol, true);
}

}  // namespace gbs
