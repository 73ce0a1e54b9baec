#pragma once

// Undirected communication graphs, random geometric graph generation and the
// Laplacian spectrum.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "pgcc/point.hpp"

namespace pgcc {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Simple undirected graph in CSR form. Neighbour lists are sorted, symmetric
// and free of self-loops. Ids are 0-based; text output is 1-based.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);  // n isolated nodes

  // Duplicate edges are merged. Throws std::invalid_argument on self-loops or
  // out-of-range ids.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  static Graph complete(std::size_t n);
  static Graph path(std::size_t n);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
  std::size_t degree(std::size_t n) const { return offsets_[n + 1] - offsets_[n]; }
  std::span<const NodeId> neighbors(std::size_t n) const {
    return {adjacency_.data() + offsets_[n], degree(n)};
  }
  bool has_edge(std::size_t a, std::size_t b) const;

  // Each undirected edge once, as (smaller, larger), lexicographically sorted.
  std::vector<Edge> edges() const;

  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return adjacency_; }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<NodeId> adjacency_;
};

struct GeometricLayout {
  std::vector<Point> positions;  // inside [0,1]^q
  double range = 0.0;            // communication range rho

  std::size_t dim() const { return positions.empty() ? 0 : positions.front().dim(); }
  bool operator==(const GeometricLayout&) const = default;
};

struct GeometricGraph {
  Graph graph;
  GeometricLayout layout;
};

// Edge (i,k) iff ||l_i - l_k|| <= rho.
Graph geometric_graph(std::span<const Point> positions, double rho);

// Positions i.i.d. uniform on [0,1]^q from Rng(seed). Requires n >= 2, q >= 1,
// rho > 0.
GeometricGraph generate_rgg(std::size_t n, std::size_t q, double rho, std::uint64_t seed);

// Breadth-first search from node 0. Graphs with fewer than two nodes are connected.
bool is_connected(const Graph& g);

// Dense symmetric matrix, row-major.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  double off_diagonal_norm() const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// L = D - A.
SymmetricMatrix laplacian(const Graph& g);

struct JacobiOptions {
  double off_diagonal_tol = 1e-12;  // absolute, Frobenius norm of the off-diagonal part
  int max_sweeps = 100;
};

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  double off_diagonal_norm = 0.0;
};

// Cyclic Jacobi eigenvalue iteration on a symmetric matrix.
JacobiResult jacobi_eigenvalues(SymmetricMatrix a, const JacobiOptions& options = {});

// Second-smallest Laplacian eigenvalue, clamped at 0. Zero for n < 2.
double fiedler_value(const Graph& g);

// One "i k" line per undirected edge, 1-based, i < k.
void write_edge_list(std::ostream& os, const Graph& g);

}  // namespace pgcc
