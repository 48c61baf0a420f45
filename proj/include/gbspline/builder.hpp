#pragma once

// Construction of the local (per-interval) representation of a GB-spline
// basis. Each basis function N_i^p is stored on every interval j of its
// support [t_i, t_{i+p+1}) as
//
//   N_i^p(t) = P(s) + a * u_j^[p-1](s) + b * v_j^[p-1](s),   s = t - t_j,
//
// with P a power-basis polynomial of p - 1 coefficients and (a, b) the
// general function coefficients. The basis of degree d is obtained from the
// one of degree d - 1 by integrating, normalizing by the support integrals
// and differencing neighbours; the stages below are exposed individually.

#include <cstddef>
#include <span>
#include <vector>

#include "gbspline/core.hpp"
#include "gbspline/families.hpp"
#include "gbspline/polyops.hpp"

namespace gbs {

/// Dense row-major rows x cols table.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, const T& init = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Polynomial and general-function parts of a basis, indexed by
/// (function i, support slot k); slot k lies on interval i + k.
struct BasisCoefficients {
  Grid<LocalPoly> polys;
  Grid<Pair> genfunc;
};

struct LocalBasis {
  int degree = 0;
  KnotVector knots;
  KnotFunctionFamily family;
  /// n x (p+1) polynomials of p - 1 coefficients each.
  Grid<LocalPoly> polys;
  /// n x (p+1) coefficients of the raw family integrals (u^[p-1], v^[p-1]).
  Grid<Pair> genfunc;
  /// Per interval: matrix B_j taking the raw pair to the normalized knot
  /// functions (zero on empty intervals).
  std::vector<Mat2> scal;
  /// Support integrals of the degree p - 1 functions this basis was built
  /// from (n + 1 entries, 0 where the support is empty). Empty for p = 1.
  std::vector<double> deltas;
  double tol = kDefaultTol;

  std::size_t size() const noexcept { return polys.rows(); }
};

/// Bases of degrees 1..p from a single construction; back() has degree p.
struct BasisLadder {
  std::vector<LocalBasis> levels;

  const LocalBasis& top() const { return levels.back(); }
  int degree() const { return levels.empty() ? 0 : levels.back().degree; }
  /// Basis of the given degree; throws LadderMissing if it was not retained.
  const LocalBasis& at_degree(int degree) const;
};

// -- construction stages ----------------------------------------------------

/// Degree-1 hats: v_i on the first slot, u_{i+1} on the second.
BasisCoefficients make_degree_one(std::size_t n);

struct ScaledTable {
  IntegralTable ints;
  std::vector<Mat2> scal;
};

/// Right-multiplies every (order, interval) entry by B_j = A_j^{-1}, A_j the
/// raw endpoint values, so the order-0 entries become the identity. Empty
/// intervals get B_j = 0.
ScaledTable scale_knot_funcs(const IntegralTable& ints, std::span<const double> lengths,
                             double tol = kDefaultTol);

/// Rewrites coefficients of normalized knot functions in terms of the raw
/// pair: (a, b) -> B * (a, b) with B the matrix of the slot's interval.
Grid<Pair> scale_genfunc_coefs(const std::vector<std::vector<Mat2>>& scal_windows,
                               Grid<Pair> genfunc);

struct GenFuncIntegrals {
  Grid<double> vals;
  Grid<double> consts;
};

/// Integral over each slot's interval of the general-function part, using
/// the next-order endpoint values in `wints` (windowed per function).
GenFuncIntegrals genfunc_int(const Grid<Pair>& genfunc,
                             const std::vector<std::vector<Mat2>>& wints);

struct SupportIntegrals {
  std::vector<double> deltas;
  Grid<double> consts;
};

/// Integral of every basis function over its support.
SupportIntegrals integrate_supports(const std::vector<std::vector<double>>& tvals,
                                    const Grid<LocalPoly>& pints, const Grid<Pair>& genfunc,
                                    const std::vector<std::vector<Mat2>>& wints);

/// Adds consts(i, k) to the constant term of pints(i, k).
void offset_constants(Grid<LocalPoly>& pints, const Grid<double>& consts);

/// new(i) = scaled(i) on slots 0..d-1 minus scaled(i+1) on slots 1..d.
BasisCoefficients offset_differences(const Grid<LocalPoly>& pints, const Grid<Pair>& genfunc);

/// For every i < size-1 with pos[i] false, adds 1 to the constant term of the
/// last slot of function i.
void add_ones(Grid<LocalPoly>& polys, const std::vector<bool>& pos);

/// Adds to each slot k >= 1 the value of the function at the left end of the
/// slot, accumulated from the right-end values of slots 0..k-1.
void connect_boundaries(Grid<LocalPoly>& polys, const Grid<Pair>& genfunc,
                        const std::vector<std::vector<Mat2>>& wints,
                        const std::vector<std::vector<double>>& tvals);

// -- drivers ------------------------------------------------------------------

/// Local representation of the degree-p basis over `knots`.
LocalBasis build_basis(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                       double tol = kDefaultTol);

/// Same construction, keeping every intermediate degree.
BasisLadder build_ladder(const KnotVector& knots, const KnotFunctionFamily& family, int degree,
                         double tol = kDefaultTol);

}  // namespace gbs
