#include "pgcc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pgcc/kernels.hpp"
#include "pgcc/rng.hpp"

namespace pgcc {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<NodeId>> lists(n);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw std::invalid_argument("graph: edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") out of range for " + std::to_string(n) + " nodes");
    }
    if (a == b) throw std::invalid_argument("graph: self-loop at node " + std::to_string(a + 1));
    lists[a].push_back(b);
    lists[b].push_back(a);
  }
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& l = lists[i];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    g.offsets_[i + 1] = g.offsets_[i] + static_cast<std::uint32_t>(l.size());
    g.adjacency_.insert(g.adjacency_.end(), l.begin(), l.end());
  }
  return g;
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId k = i + 1; k < n; ++k) edges.emplace_back(i, k);
  return from_edges(n, edges);
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edges(n, edges);
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), static_cast<NodeId>(b));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId i = 0; i < size(); ++i)
    for (NodeId k : neighbors(i))
      if (i < k) out.emplace_back(i, k);
  return out;
}

Graph geometric_graph(std::span<const Point> positions, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("geometric_graph: rho must be positive");
  const std::size_t n = positions.size();
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId k = i + 1; k < n; ++k) {
      if (distance(positions[i], positions[k]) <= rho) edges.emplace_back(i, k);
    }
  }
  return Graph::from_edges(n, edges);
}

GeometricGraph generate_rgg(std::size_t n, std::size_t q, double rho, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_rgg: need at least two nodes");
  if (q < 1) throw std::invalid_argument("generate_rgg: dimension must be at least 1");
  if (!(rho > 0.0)) throw std::invalid_argument("generate_rgg: rho must be positive");
  Rng rng(seed);
  GeometricLayout layout;
  layout.range = rho;
  layout.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p(q);
    for (std::size_t j = 0; j < q; ++j) p[j] = rng.uniform();
    layout.positions.push_back(std::move(p));
  }
  Graph g = geometric_graph(layout.positions, rho);
  return {std::move(g), std::move(layout)};
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 2) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> frontier{0};
  seen[0] = 1;
  std::size_t reached = 1;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    for (NodeId k : g.neighbors(frontier[head])) {
      if (!seen[k]) {
        seen[k] = 1;
        ++reached;
        frontier.push_back(k);
      }
    }
  }
  return reached == n;
}

double SymmetricMatrix::off_diagonal_norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j) acc += data_[i * n_ + j] * data_[i * n_ + j];
  return std::sqrt(acc);
}

SymmetricMatrix laplacian(const Graph& g) {
  const std::size_t n = g.size();
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t diag = 0;
    for (NodeId k : g.neighbors(i)) {
      l(i, k) = -1.0;
      ++diag;
    }
    l(i, i) = static_cast<double>(diag);
  }
  return l;
}

JacobiResult jacobi_eigenvalues(SymmetricMatrix a, const JacobiOptions& options) {
  const std::size_t n = a.size();
  const auto& rotate = kernels::active().rotate;
  JacobiResult result;
  result.off_diagonal_norm = a.off_diagonal_norm();
  while (result.off_diagonal_norm > options.off_diagonal_tol && result.sweeps < options.max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Rows p and q absorb the rotation; the columns are restored by symmetry.
        rotate(a.row(p).data(), a.row(q).data(), n, c, s);
        for (std::size_t k = 0; k < n; ++k) {
          a(k, p) = a(p, k);
          a(k, q) = a(q, k);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    ++result.sweeps;
    result.off_diagonal_norm = a.off_diagonal_norm();
  }
  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

double fiedler_value(const Graph& g) {
  if (g.size() < 2) return 0.0;
  const JacobiResult r = jacobi_eigenvalues(laplacian(g));
  return std::max(0.0, r.eigenvalues[1]);
}

void write_edge_list(std::ostream& os, const Graph& g) {
  for (const auto& [a, b] : g.edges()) os << (a + 1) << ' ' << (b + 1) << '\n';
}

}  // namespace pgcc
