#include "kernels_impl.hpp"

#if PGCC_HAVE_AVX2_BUILD

#include <immintrin.h>

#define PGCC_AVX2 __attribute__((target("avx2")))

namespace pgcc::kernels::detail {
namespace {

PGCC_AVX2 inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Blocks of 4 doubles cover whole rows only when cols divides 4.
constexpr bool tiles_register(std::size_t cols) { return cols == 1 || cols == 2 || cols == 4; }

}  // namespace

PGCC_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return horizontal_sum(acc) + tail;
}

PGCC_AVX2 double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    tail += d * d;
  }
  return horizontal_sum(acc) + tail;
}

PGCC_AVX2 void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

PGCC_AVX2 void rotate_avx2(double* x, double* y, std::size_t n, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, xi), _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, xi), _mm256_mul_pd(vc, yi)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

PGCC_AVX2 void column_sums_avx2(const double* data, std::size_t rows, std::size_t cols,
                                double* out) {
  if (!tiles_register(cols)) {
    column_sums_scalar(data, rows, cols, out);
    return;
  }
  const std::size_t total = rows * cols;
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= total; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(data + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t l = 0; l < 4; ++l) out[l % cols] += lanes[l];
  for (; i < total; ++i) out[i % cols] += data[i];
}

PGCC_AVX2 double sum_squared_deviation_avx2(const double* data, std::size_t rows,
                                            std::size_t cols, const double* center) {
  if (!tiles_register(cols)) return sum_squared_deviation_scalar(data, rows, cols, center);
  const __m256d vc = _mm256_setr_pd(center[0], center[1 % cols], center[2 % cols], center[3 % cols]);
  const std::size_t total = rows * cols;
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= total; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(data + i), vc);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double tail = 0.0;
  for (; i < total; ++i) {
    const double d = data[i] - center[i % cols];
    tail += d * d;
  }
  return horizontal_sum(acc) + tail;
}

PGCC_AVX2 void neighbor_difference_sum_avx2(const std::uint32_t* offsets,
                                            const std::uint32_t* adjacency, const double* data,
                                            std::size_t rows, std::size_t cols, double* out) {
  if (cols == 4) {
    for (std::size_t n = 0; n < rows; ++n) {
      const __m256d pn = _mm256_loadu_pd(data + n * 4);
      __m256d acc = _mm256_setzero_pd();
      for (std::uint32_t e = offsets[n]; e < offsets[n + 1]; ++e) {
        acc = _mm256_add_pd(acc, _mm256_sub_pd(pn, _mm256_loadu_pd(data + std::size_t{adjacency[e]} * 4)));
      }
      _mm256_storeu_pd(out + n * 4, acc);
    }
  } else if (cols == 2) {
    for (std::size_t n = 0; n < rows; ++n) {
      const __m128d pn = _mm_loadu_pd(data + n * 2);
      __m128d acc = _mm_setzero_pd();
      for (std::uint32_t e = offsets[n]; e < offsets[n + 1]; ++e) {
        acc = _mm_add_pd(acc, _mm_sub_pd(pn, _mm_loadu_pd(data + std::size_t{adjacency[e]} * 2)));
      }
      _mm_storeu_pd(out + n * 2, acc);
    }
  } else {
    neighbor_difference_sum_scalar(offsets, adjacency, data, rows, cols, out);
  }
}

PGCC_AVX2 double neighbor_squared_distance_sum_avx2(const std::uint32_t* offsets,
                                                    const std::uint32_t* adjacency,
                                                    const double* data, std::size_t rows,
                                                    std::size_t cols) {
  if (cols == 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t n = 0; n < rows; ++n) {
      const __m256d pn = _mm256_loadu_pd(data + n * 4);
      for (std::uint32_t e = offsets[n]; e < offsets[n + 1]; ++e) {
        const __m256d d = _mm256_sub_pd(pn, _mm256_loadu_pd(data + std::size_t{adjacency[e]} * 4));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
      }
    }
    return horizontal_sum(acc);
  }
  if (cols == 2) {
    __m128d acc = _mm_setzero_pd();
    for (std::size_t n = 0; n < rows; ++n) {
      const __m128d pn = _mm_loadu_pd(data + n * 2);
      for (std::uint32_t e = offsets[n]; e < offsets[n + 1]; ++e) {
        const __m128d d = _mm_sub_pd(pn, _mm_loadu_pd(data + std::size_t{adjacency[e]} * 2));
        acc = _mm_add_pd(acc, _mm_mul_pd(d, d));
      }
    }
    return _mm_cvtsd_f64(_mm_add_sd(acc, _mm_unpackhi_pd(acc, acc)));
  }
  return neighbor_squared_distance_sum_scalar(offsets, adjacency, data, rows, cols);
}

}  // namespace pgcc::kernels::detail

#endif  // PGCC_HAVE_AVX2_BUILD
