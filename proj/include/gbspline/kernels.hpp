#pragma once

// Batch evaluation. Points are grouped by knot interval; within a group the
// p + 1 active pieces are evaluated for many local coordinates at once by a
// kernel selected at runtime (scalar reference or AVX2/FMA).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gbspline/builder.hpp"
#include "gbspline/eval.hpp"

namespace gbs {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
/// Best kernel set supported by the running CPU.
Isa detect_isa();
bool isa_available(Isa isa);

namespace kernels {

/// Pieces of the p + 1 functions active on one interval, function-major:
/// poly[k * width + c] and gen[2 * k + {0, 1}] for function first + k.
struct IntervalBlock {
  const double* poly;
  const double* gen;
  std::size_t functions;  // p + 1
  std::size_t width;      // p - 1 coefficients per piece
};

/// out[k * count + q] = poly_k(s[q]) + a_k * U[q] + b_k * V[q].
using PieceFn = void (*)(const IntervalBlock& block, const double* s, const double* u,
                         const double* v, std::size_t count, double* out);

/// out[d * count + q] = sum_k rows[k * count + q] * ctrl[k * dim + d].
using CombineFn = void (*)(const double* rows, std::size_t functions, const double* ctrl,
                           std::size_t dim, std::size_t count, double* out);

struct KernelSet {
  Isa isa;
  PieceFn pieces;
  CombineFn combine;
};

void pieces_scalar(const IntervalBlock&, const double*, const double*, const double*, std::size_t,
                   double*);
void combine_scalar(const double*, std::size_t, const double*, std::size_t, std::size_t, double*);
#if defined(__x86_64__) || defined(_M_X64)
void pieces_avx2(const IntervalBlock&, const double*, const double*, const double*, std::size_t,
                 double*);
void combine_avx2(const double*, std::size_t, const double*, std::size_t, std::size_t, double*);
#endif

/// Throws InvalidArgument if the CPU lacks the requested set.
const KernelSet& kernel_set(Isa isa);

}  // namespace kernels

/// Local representation regrouped by interval for the batch kernels.
class PackedBasis {
 public:
  /// Keeps a reference to `basis`.
  explicit PackedBasis(const LocalBasis& basis);
  explicit PackedBasis(LocalBasis&&) = delete;

  const LocalBasis& basis() const noexcept { return *basis_; }
  kernels::IntervalBlock block(std::size_t j) const;

 private:
  const LocalBasis* basis_;
  std::size_t functions_ = 0;
  std::size_t width_ = 0;
  std::vector<double> poly_;
  std::vector<double> gen_;
};

/// values(q, i) = N_i^p(ts[q]) for domain points ts.
Grid<double> sample_basis(const LocalBasis& basis, std::span<const double> ts, Isa isa);
Grid<double> sample_basis(const LocalBasis& basis, std::span<const double> ts);

/// points(q, d) = f(ts[q])_d for domain points ts.
Grid<double> sample_curve(const GBSplineCurve& curve, std::span<const double> ts, Isa isa);
Grid<double> sample_curve(const GBSplineCurve& curve, std::span<const double> ts);

}  // namespace gbs
