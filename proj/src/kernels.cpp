#include "gbspline/kernels.hpp"

#include <algorithm>

namespace gbs {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

namespace kernels {

const KernelSet& kernel_set(Isa isa) {
  static const KernelSet scalar{Isa::Scalar, &pieces_scalar, &combine_scalar};
#if defined(__x86_64__) || defined(_M_X64)
  static const KernelSet avx2{Isa::Avx2, &pieces_avx2, &combine_avx2};
#endif
  if (!isa_available(isa)) {
    throw Error(ErrorCode::InvalidArgument,
                "kernel set " + std::string(to_string(isa)) + " is not supported on this CPU");
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::Avx2) return avx2;
#endif
  return scalar;
}

}  // namespace kernels

PackedBasis::PackedBasis(const LocalBasis& basis)
    : basis_(&basis),
      functions_(static_cast<std::size_t>(basis.degree) + 1),
      width_(static_cast<std::size_t>(basis.degree) - 1) {
  const std::size_t intervals = basis.knots.interval_count();
  const std::size_t p = functions_ - 1;
  poly_.assign(intervals * functions_ * width_, 0.0);
  gen_.assign(intervals * functions_ * 2, 0.0);
  for (std::size_t j = 0; j < intervals; ++j) {
    for (std::size_t k = 0; k < functions_; ++k) {
      if (j + k < p) continue;
      const std::size_t i = j + k - p;
      if (i >= basis.size()) continue;
      const std::size_t slot = p - k;
      const auto& c = basis.polys(i, slot).coeffs;
      std::copy(c.begin(), c.end(), poly_.begin() + static_cast<std::ptrdiff_t>((j * functions_ + k) * width_));
      gen_[(j * functions_ + k) * 2] = basis.genfunc(i, slot)[0];
      gen_[(j * functions_ + k) * 2 + 1] = basis.genfunc(i, slot)[1];
    }
  }
}

kernels::IntervalBlock PackedBasis::block(std::size_t j) const {
  return {poly_.data() + j * functions_ * width_, gen_.data() + j * functions_ * 2, functions_,
          width_};
}

namespace {

constexpr std::size_t kBlock = 256;

// Calls visit(j, first, count, rows) for runs of consecutive points in the
// same interval; rows holds the p + 1 active values, function-major.
template <class Visit>
void for_each_run(const PackedBasis& packed, std::span<const double> ts,
                  const kernels::KernelSet& ks, Visit&& visit) {
  const LocalBasis& basis = packed.basis();
  const auto functions = static_cast<std::size_t>(basis.degree) + 1;
  std::vector<double> s(kBlock), u(kBlock), v(kBlock), rows(functions * kBlock);
  std::vector<std::size_t> interval(ts.size());
  for (std::size_t q = 0; q < ts.size(); ++q) {
    interval[q] = find_interval(basis.knots, ts[q], basis.degree, basis.tol).value;
  }
  std::size_t q = 0;
  while (q < ts.size()) {
    const std::size_t j = interval[q];
    std::size_t count = 0;
    while (q + count < ts.size() && count < kBlock && interval[q + count] == j) {
      const double local = std::max(0.0, ts[q + count] - basis.knots[j]);
      const Pair g = basis.family.integral(basis.degree - 1, local);
      s[count] = local;
      u[count] = g[0];
      v[count] = g[1];
      ++count;
    }
    ks.pieces(packed.block(j), s.data(), u.data(), v.data(), count, rows.data());
    visit(j, q, count, rows.data());
    q += count;
  }
}

}  // namespace

Grid<double> sample_basis(const LocalBasis& basis, std::span<const double> ts, Isa isa) {
  const auto& ks = kernels::kernel_set(isa);
  const PackedBasis packed(basis);
  const auto p = static_cast<std::size_t>(basis.degree);
  Grid<double> out(ts.size(), basis.size(), 0.0);
  for_each_run(packed, ts, ks, [&](std::size_t j, std::size_t first, std::size_t count,
                                   const double* rows) {
    for (std::size_t k = 0; k <= p; ++k) {
      for (std::size_t q = 0; q < count; ++q) out(first + q, j - p + k) = rows[k * count + q];
    }
  });
  return out;
}

Grid<double> sample_basis(const LocalBasis& basis, std::span<const double> ts) {
  return sample_basis(basis, ts, detect_isa());
}

Grid<double> sample_curve(const GBSplineCurve& curve, std::span<const double> ts, Isa isa) {
  const auto& ks = kernels::kernel_set(isa);
  const LocalBasis& basis = curve.basis();
  const PackedBasis packed(basis);
  const auto p = static_cast<std::size_t>(basis.degree);
  const std::size_t dim = curve.dimension();
  const auto ctrl = curve.control_points_flat();
  Grid<double> out(ts.size(), dim, 0.0);
  std::vector<double> pts(dim * kBlock);
  for_each_run(packed, ts, ks, [&](std::size_t j, std::size_t first, std::size_t count,
                                   const double* rows) {
    ks.combine(rows, p + 1, ctrl.data() + (j - p) * dim, dim, count, pts.data());
    for (std::size_t d = 0; d < dim; ++d) {
      for (std::size_t q = 0; q < count; ++q) out(first + q, d) = pts[d * count + q];
    }
  });
  return out;
}

Grid<double> sample_curve(const GBSplineCurve& curve, std::span<const double> ts) {
  return sample_curve(curve, ts, detect_isa());
}

}  // namespace gbs
