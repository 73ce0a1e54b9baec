#pragma once

// Flat-buffer numeric kernels.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled on x86-64 and picked at runtime when the CPU supports it. Set
// PGCC_KERNELS=scalar|avx2|auto in the environment to override the choice.
//
// Elementwise kernels (axpy, rotate, neighbor_difference_sum) are bit-identical
// across variants. Reductions may differ in summation order and agree to a few
// ulps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pgcc::kernels {

struct KernelTable {
  std::string_view name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);

  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // Plane rotation: x' = c*x - s*y, y' = s*x + c*y.
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);

  // data is row-major rows x cols; out has cols entries.
  void (*column_sums)(const double* data, std::size_t rows, std::size_t cols, double* out);

  // sum_i sum_j (data[i][j] - center[j])^2
  double (*sum_squared_deviation)(const double* data, std::size_t rows, std::size_t cols,
                                  const double* center);

  // CSR adjacency. out[n] = sum_{k in adj(n)} (data[n] - data[k]), blockwise over cols.
  void (*neighbor_difference_sum)(const std::uint32_t* offsets, const std::uint32_t* adjacency,
                                  const double* data, std::size_t rows, std::size_t cols,
                                  double* out);

  // sum_n sum_{k in adj(n)} ||data[n] - data[k]||^2 (each undirected edge counted twice).
  double (*neighbor_squared_distance_sum)(const std::uint32_t* offsets,
                                          const std::uint32_t* adjacency, const double* data,
                                          std::size_t rows, std::size_t cols);
};

const KernelTable& scalar_table();

// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table();

const KernelTable& active();

// Accepts "scalar", "avx2" or "auto". Returns false (and leaves the selection
// unchanged) when the requested variant is unavailable or the name is unknown.
bool select(std::string_view name);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace pgcc::kernels
