// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "gbspline/kernels.hpp"

namespace gbs::kernels {

void pieces_avx2(const IntervalBlock& block, const double* s, const double* u, const double* v,
                 std::size_t count, double* out) {
  const std::size_t vec_end = count - count % 4;
  for (std::size_t k = 0; k < block.functions; ++k) {
    const double* c = block.poly + k * block.width;
    const __m256d a = _mm256_set1_pd(block.gen[2 * k]);
    const __m256d b = _mm256_set1_pd(block.gen[2 * k + 1]);
    double* row = out + k * count;
    std::size_t q = 0;
    for (; q < vec_end; q += 4) {
      const __m256d sv = _mm256_loadu_pd(s + q);
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t i = block.width; i-- > 0;) acc = _mm256_fmadd_pd(acc, sv, _mm256_set1_pd(c[i]));
      acc = _mm256_fmadd_pd(a, _mm256_loadu_pd(u + q), acc);
      acc = _mm256_fmadd_pd(b, _mm256_loadu_pd(v + q), acc);
      _mm256_storeu_pd(row + q, acc);
    }
    for (; q < count; ++q) {
      double acc = 0.0;
      for (std::size_t i = block.width; i-- > 0;) acc = acc * s[q] + c[i];
      row[q] = acc + block.gen[2 * k] * u[q] + block.gen[2 * k + 1] * v[q];
    }
  }
}

void combine_avx2(const double* rows, std::size_t functions, const double* ctrl, std::size_t dim,
                  std::size_t count, double* out) {
  const std::size_t vec_end = count - count % 4;
  for (std::size_t d = 0; d < dim; ++d) {
    double* dst = out + d * count;
    std::size_t q = 0;
    for (; q < vec_end; q += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < functions; ++k) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(rows + k * count + q), _mm256_set1_pd(ctrl[k * dim + d]),
                              acc);
      }
      _mm256_storeu_pd(dst + q, acc);
    }
    for (; q < count; ++q) {
      double acc = 0.0;
      for (std::size_t k = 0; k < functions; ++k) acc += rows[k * count + q] * ctrl[k * dim + d];
      dst[q] = acc;
    }
  }
}

}  // namespace gbs::kernels
