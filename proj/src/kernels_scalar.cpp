#include "gbspline/kernels.hpp"

namespace gbs::kernels {

void pieces_scalar(const IntervalBlock& block, const double* s, const double* u, const double* v,
                   std::size_t count, double* out) {
  for (std::size_t k = 0; k < block.functions; ++k) {
    const double* c = block.poly + k * block.width;
    const double a = block.gen[2 * k];
    const double b = block.gen[2 * k + 1];
    double* row = out + k * count;
    for (std::size_t q = 0; q < count; ++q) {
      double acc = 0.0;
      for (std::size_t i = block.width; i-- > 0;) acc = acc * s[q] + c[i];
      row[q] = acc + (a * u[q] + b * v[q]);
    }
  }
}

void combine_scalar(const double* rows, std::size_t functions, const double* ctrl, std::size_t dim,
                    std::size_t count, double* out) {
  for (std::size_t d = 0; d < dim; ++d) {
    double* dst = out + d * count;
    for (std::size_t q = 0; q < count; ++q) dst[q] = 0.0;
    for (std::size_t k = 0; k < functions; ++k) {
      const double w = ctrl[k * dim + d];
      const double* src = rows + k * count;
      for (std::size_t q = 0; q < count; ++q) dst[q] += src[q] * w;
    }
  }
}

}  // namespace gbs::kernels
