#include "kernels_impl.hpp"

namespace pgcc::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rotate_scalar(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void column_sums_scalar(const double* data, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = data + i * cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] += row[j];
  }
}

double sum_squared_deviation_scalar(const double* data, std::size_t rows, std::size_t cols,
                                    const double* center) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = data + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      const double d = row[j] - center[j];
      acc += d * d;
    }
  }
  return acc;
}

void neighbor_difference_sum_scalar(const std::uint32_t* offsets, const std::uint32_t* adjacency,
                                    const double* data, std::size_t rows, std::size_t cols,
                                    double* out) {
  for (std::size_t n = 0; n < rows; ++n) {
    const double* pn = data + n * cols;
    double* on = out + n * cols;
    for (std::size_t j = 0; j < cols; ++j) on[j] = 0.0;
    for (std::uint32_t e = offsets[n]; e < offsets[n + 1]; ++e) {
      const double* pk = data + std::size_t{adjacency[e]} * cols;
      for (std::size_t j = 0; j < cols; ++j) on[j] += pn[j] - pk[j];
    }
  }
}

double neighbor_squared_distance_sum_scalar(const std::uint32_t* offsets,
                                            const std::uint32_t* adjacency, const double* data,
                                            std::size_t rows, std::size_t cols) {
  double acc = 0.0;
  for (std::size_t n = 0; n < rows; ++n) {
    const double* pn = data + n * cols;
    for (std::uint32_t e = offsets[n]; e < offsets[n + 1]; ++e) {
      const double* pk = data + std::size_t{adjacency[e]} * cols;
      acc += squared_distance_scalar(pn, pk, cols);
    }
  }
  return acc;
}

}  // namespace pgcc::kernels::detail
