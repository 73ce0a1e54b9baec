#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "pgcc/graph.hpp"
#include "pgcc/rng.hpp"

using namespace pgcc;

TEST_CASE("construction and adjacency") {
  const std::vector<Edge> edges = {{0, 1}, {1, 0}, {1, 2}};
  const Graph g = Graph::from_edges(3, edges);
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g == Graph::path(3));
  CHECK(Graph::complete(5).edge_count() == 10);

  const std::vector<Edge> loop = {{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), std::invalid_argument);
  const std::vector<Edge> out_of_range = {{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, out_of_range), std::invalid_argument);
}

TEST_CASE("connectivity examples") {
  CHECK(is_connected(Graph::path(3)));
  CHECK_FALSE(is_connected(Graph(2)));
  CHECK(is_connected(Graph::complete(5)));
  const std::vector<Edge> two_parts = {{0, 1}, {2, 3}};
  CHECK_FALSE(is_connected(Graph::from_edges(4, two_parts)));
}

TEST_CASE("laplacian examples") {
  const SymmetricMatrix k2 = laplacian(Graph::complete(2));
  CHECK(k2(0, 0) == 1.0);
  CHECK(k2(0, 1) == -1.0);
  CHECK(k2(1, 1) == 1.0);

  const SymmetricMatrix p3 = laplacian(Graph::path(3));
  const double expected[3][3] = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(p3(i, j) == expected[i][j]);

  const SymmetricMatrix empty = laplacian(Graph(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(empty(i, j) == 0.0);
}

TEST_CASE("fiedler value examples") {
  CHECK(fiedler_value(Graph::complete(2)) == doctest::Approx(2.0).epsilon(1e-12));
  const std::vector<Edge> two_parts = {{0, 1}, {2, 3}};
  CHECK(fiedler_value(Graph::from_edges(4, two_parts)) == doctest::Approx(0.0).epsilon(1e-12));

  // Path on three nodes: det(L - x I) = -x (x - 1)(x - 3) = -x^3 + 4x^2 - 3x.
  const auto roots = oracle::polynomial_roots({0.0, -3.0, 4.0, -1.0}, -0.5, 5.0);
  REQUIRE(roots.size() == 3);
  CHECK(fiedler_value(Graph::path(3)) == doctest::Approx(roots[1]).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("path and complete spectra") {
  for (std::size_t n : {2u, 5u, 9u, 16u}) {
    const JacobiResult r = jacobi_eigenvalues(laplacian(Graph::path(n)));
    REQUIRE(r.eigenvalues.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = std::sin(std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(n)));
      CHECK(r.eigenvalues[k] == doctest::Approx(4.0 * s * s).epsilon(1e-10).scale(1.0));
    }
    const JacobiResult c = jacobi_eigenvalues(laplacian(Graph::complete(n)));
    for (std::size_t k = 1; k < n; ++k) CHECK(c.eigenvalues[k] == doctest::Approx(static_cast<double>(n)));
  }
}

TEST_CASE("jacobi on a random symmetric matrix preserves trace and frobenius norm") {
  Rng rng(5);
  const std::size_t n = 12;
  SymmetricMatrix a(n);
  double trace = 0.0, frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = rng.uniform(-1.0, 1.0);
      a(i, j) = v;
      a(j, i) = v;
      frob += (i == j ? 1.0 : 2.0) * v * v;
    }
    trace += a(i, i);
  }
  const JacobiResult r = jacobi_eigenvalues(a);
  double sum = 0.0, sq = 0.0;
  for (double e : r.eigenvalues) {
    sum += e;
    sq += e * e;
  }
  CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
  CHECK(sq == doctest::Approx(frob).epsilon(1e-10));
  CHECK(r.off_diagonal_norm <= 1e-12);
  for (std::size_t k = 1; k < n; ++k) CHECK(r.eigenvalues[k - 1] <= r.eigenvalues[k]);
}

TEST_CASE("geometric graph edge rule") {
  const std::vector<Point> near = {{0.1, 0.1}, {0.3, 0.1}};
  CHECK(geometric_graph(near, 0.3).has_edge(0, 1));
  const std::vector<Point> far = {{0.1, 0.1}, {0.5, 0.1}};
  CHECK_FALSE(geometric_graph(far, 0.3).has_edge(0, 1));
  const std::vector<Point> boundary = {{0.0}, {0.5}};
  CHECK(geometric_graph(boundary, 0.5).has_edge(0, 1));
}

TEST_CASE("random geometric graphs are deterministic and match the distance rule") {
  const GeometricGraph a = generate_rgg(100, 2, 0.3, 1234);
  const GeometricGraph b = generate_rgg(100, 2, 0.3, 1234);
  CHECK(a.graph == b.graph);
  CHECK(a.layout == b.layout);
  CHECK_FALSE(generate_rgg(100, 2, 0.3, 1235).layout == a.layout);

  for (std::size_t i = 0; i < 100; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(a.layout.positions[i][j] >= 0.0);
      CHECK(a.layout.positions[i][j] < 1.0);
    }
    for (std::size_t k = i + 1; k < 100; ++k) {
      const bool close = distance(a.layout.positions[i], a.layout.positions[k]) <= 0.3;
      CHECK(a.graph.has_edge(i, k) == close);
    }
  }
}

TEST_CASE("edge list output is one-based") {
  std::ostringstream os;
  write_edge_list(os, Graph::path(3));
  CHECK(os.str() == "1 2\n2 3\n");
}
