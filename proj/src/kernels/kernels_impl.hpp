#pragma once

#include <cstddef>
#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64)
#define PGCC_HAVE_AVX2_BUILD 1
#else
#define PGCC_HAVE_AVX2_BUILD 0
#endif

namespace pgcc::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double squared_distance_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void rotate_scalar(double* x, double* y, std::size_t n, double c, double s);
void column_sums_scalar(const double* data, std::size_t rows, std::size_t cols, double* out);
double sum_squared_deviation_scalar(const double* data, std::size_t rows, std::size_t cols,
                                    const double* center);
void neighbor_difference_sum_scalar(const std::uint32_t* offsets, const std::uint32_t* adjacency,
                                    const double* data, std::size_t rows, std::size_t cols,
                                    double* out);
double neighbor_squared_distance_sum_scalar(const std::uint32_t* offsets,
                                            const std::uint32_t* adjacency, const double* data,
                                            std::size_t rows, std::size_t cols);

#if PGCC_HAVE_AVX2_BUILD
double dot_avx2(const double* a, const double* b, std::size_t n);
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void rotate_avx2(double* x, double* y, std::size_t n, double c, double s);
void column_sums_avx2(const double* data, std::size_t rows, std::size_t cols, double* out);
double sum_squared_deviation_avx2(const double* data, std::size_t rows, std::size_t cols,
                                  const double* center);
void neighbor_difference_sum_avx2(const std::uint32_t* offsets, const std::uint32_t* adjacency,
                                  const double* data, std::size_t rows, std::size_t cols,
                                  double* out);
double neighbor_squared_distance_sum_avx2(const std::uint32_t* offsets,
                                          const std::uint32_t* adjacency, const double* data,
                                          std::size_t rows, std::size_t cols);
#endif

}  // namespace pgcc::kernels::detail
