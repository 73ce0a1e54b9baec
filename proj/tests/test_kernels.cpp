#include <doctest.h>

#include <cmath>
#include <vector>

#include "pgcc/graph.hpp"
#include "pgcc/kernels.hpp"
#include "pgcc/rng.hpp"

using namespace pgcc;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-3.0, 3.0);
  return v;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

Graph random_graph(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId k = i + 1; k < n; ++k)
      if (rng.uniform() < 0.3) edges.emplace_back(i, k);
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("scalar kernels on hand-checked inputs") {
  const auto& k = kernels::scalar_table();
  const double a[] = {1, 2, 3};
  const double b[] = {4, 6, 3};
  CHECK(k.dot(a, b, 3) == 25.0);
  CHECK(k.squared_distance(a, b, 3) == 25.0);

  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);

  double x[] = {1, 0};
  double z[] = {0, 1};
  k.rotate(x, z, 2, 0.0, 1.0);  // quarter turn
  CHECK(x[0] == 0.0);
  CHECK(x[1] == -1.0);
  CHECK(z[0] == 1.0);
  CHECK(z[1] == 0.0);

  const double rows[] = {0, 1, 2, 3, 4, 5};  // 3 x 2
  double sums[2];
  k.column_sums(rows, 3, 2, sums);
  CHECK(sums[0] == 6.0);
  CHECK(sums[1] == 9.0);
  const double center[] = {2, 3};
  CHECK(k.sum_squared_deviation(rows, 3, 2, center) == 16.0);

  // path 0-1-2 with scalar strategies 0, 1, 3
  const Graph g = Graph::path(3);
  const double p[] = {0, 1, 3};
  double out[3];
  k.neighbor_difference_sum(g.offsets().data(), g.adjacency().data(), p, 3, 1, out);
  CHECK(out[0] == -1.0);
  CHECK(out[1] == -1.0);
  CHECK(out[2] == 2.0);
  CHECK(k.neighbor_squared_distance_sum(g.offsets().data(), g.adjacency().data(), p, 3, 1) == 10.0);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const kernels::KernelTable* simd = kernels::avx2_table();
  if (simd == nullptr) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const auto& ref = kernels::scalar_table();
  Rng rng(42);

  for (std::size_t n = 0; n < 40; ++n) {
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    CHECK(close(simd->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)));
    CHECK(close(simd->squared_distance(a.data(), b.data(), n), ref.squared_distance(a.data(), b.data(), n)));

    auto y1 = b, y2 = b;
    simd->axpy(-0.37, a.data(), y1.data(), n);
    ref.axpy(-0.37, a.data(), y2.data(), n);
    CHECK(y1 == y2);  // elementwise: bit-identical

    auto x1 = a, x2 = a, z1 = b, z2 = b;
    simd->rotate(x1.data(), z1.data(), n, 0.8, 0.6);
    ref.rotate(x2.data(), z2.data(), n, 0.8, 0.6);
    CHECK(x1 == x2);
    CHECK(z1 == z2);
  }

  for (std::size_t cols = 1; cols <= 5; ++cols) {
    for (std::size_t rows = 1; rows < 30; rows += 3) {
      const auto data = random_vector(rng, rows * cols);
      std::vector<double> s1(cols), s2(cols);
      simd->column_sums(data.data(), rows, cols, s1.data());
      ref.column_sums(data.data(), rows, cols, s2.data());
      for (std::size_t j = 0; j < cols; ++j) CHECK(close(s1[j], s2[j]));
      const auto center = random_vector(rng, cols);
      CHECK(close(simd->sum_squared_deviation(data.data(), rows, cols, center.data()),
                  ref.sum_squared_deviation(data.data(), rows, cols, center.data())));

      const Graph g = random_graph(rng, rows);
      std::vector<double> o1(rows * cols), o2(rows * cols);
      simd->neighbor_difference_sum(g.offsets().data(), g.adjacency().data(), data.data(), rows, cols, o1.data());
      ref.neighbor_difference_sum(g.offsets().data(), g.adjacency().data(), data.data(), rows, cols, o2.data());
      CHECK(o1 == o2);
      CHECK(close(simd->neighbor_squared_distance_sum(g.offsets().data(), g.adjacency().data(), data.data(), rows, cols),
                  ref.neighbor_squared_distance_sum(g.offsets().data(), g.adjacency().data(), data.data(), rows, cols)));
    }
  }
}

TEST_CASE("runtime selection") {
  const std::string_view before = kernels::active().name;
  CHECK(kernels::select("scalar"));
  CHECK(kernels::active().name == "scalar");
  CHECK_FALSE(kernels::select("sse9"));
  CHECK(kernels::active().name == "scalar");
  CHECK(kernels::select("auto"));
  if (kernels::avx2_table() != nullptr) {
    CHECK(kernels::active().name == "avx2");
  } else {
    CHECK(kernels::active().name == "scalar");
  }
  CHECK(kernels::select(before));
}
