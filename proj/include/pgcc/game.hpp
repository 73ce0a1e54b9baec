#pragma once

// The constrained-consensus game: node n picks a strategy p_n in its convex set
// C_n and is paid U_n(p) = -sum_{k in N_n} ||p_n - p_k||^2. The game admits the
// exact potential phi(p) = -1/2 sum_n sum_{k in N_n} ||p_n - p_k||^2, and the
// gradient-projection algorithm minimises J = -phi over C_1 x ... x C_N.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pgcc/convex_set.hpp"
#include "pgcc/graph.hpp"
#include "pgcc/point.hpp"

namespace pgcc {

// N strategies of dimension q, stored contiguously (node-major).
class StrategyProfile {
 public:
  StrategyProfile() = default;
  StrategyProfile(std::size_t nodes, std::size_t dim) : nodes_(nodes), dim_(dim), data_(nodes * dim, 0.0) {}
  StrategyProfile(std::size_t nodes, std::size_t dim, std::vector<double> flat);
  static StrategyProfile from_points(std::span<const Point> points);

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> node(std::size_t n) const { return {data_.data() + n * dim_, dim_}; }
  std::span<double> node(std::size_t n) { return {data_.data() + n * dim_, dim_}; }
  Point point(std::size_t n) const { return Point(node(n)); }

  std::span<const double> flat() const noexcept { return data_; }
  std::span<double> flat() noexcept { return data_; }

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::size_t nodes_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Graph plus one convex set per node. Non-emptiness of the intersection of the
// sets is assumed by the algorithms and is not checked here.
class GameInstance {
 public:
  GameInstance(Graph graph, std::vector<ConvexSet> sets,
               std::optional<GeometricLayout> layout = std::nullopt);

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<ConvexSet>& sets() const noexcept { return sets_; }
  const ConvexSet& set(std::size_t n) const { return sets_[n]; }
  const std::optional<GeometricLayout>& layout() const noexcept { return layout_; }
  std::size_t nodes() const noexcept { return graph_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  // Throws std::invalid_argument unless p has nodes() strategies of dimension dim().
  void require_matches(const StrategyProfile& p) const;
  void require_node(std::size_t n) const;

 private:
  Graph graph_;
  std::vector<ConvexSet> sets_;
  std::optional<GeometricLayout> layout_;
  std::size_t dim_ = 0;
};

// Shared numeric tolerances for invariant checks and termination.
struct Tolerances {
  double feasibility = 1e-9;           // distance of p_n to C_n after a round
  double fixed_point_metric = 1e-18;   // DGTC stops when every m_n is at most this
  double potential_monotone = 1e-12;   // allowed DGTC potential decrease per round
  double exact_potential_rel = 1e-9;   // potential-difference identity, relative
  double finite_difference_rel = 1e-6;
  double finite_difference_step = 1e-6;
  double best_response = 1e-9;         // sampled candidates may beat BR by at most this
  double lipschitz = 1e-12;
  double equivalence = 1e-12;          // distributed vs. stacked DGPC update, per coordinate
  double consensus_at_fixed_point = 1e-6;
  double projection = 1e-12;           // idempotence / nonexpansiveness slack
  double variational = 1e-9;
  double concavity = 1e-9;
};

// Largest distance of any strategy to its own set.
double max_infeasibility(const GameInstance& inst, const StrategyProfile& p);

double utility(const GameInstance& inst, const StrategyProfile& p, std::size_t n);
double potential(const GameInstance& inst, const StrategyProfile& p);

// -2 sum_{k in N_n} (p_n - p_k)
Point utility_gradient(const GameInstance& inst, const StrategyProfile& p, std::size_t n);

// Stacked gradient of J = -phi; block n is 2 sum_{k in N_n} (p_n - p_k).
std::vector<double> cost_gradient(const GameInstance& inst, const StrategyProfile& p);

// Mean of the neighbours' strategies. Throws DegenerateNode for isolated nodes.
Point centroid(const GameInstance& inst, const StrategyProfile& p, std::size_t n);

// Projection of the neighbourhood centroid onto C_n: the maximiser of U_n over
// C_n with the other strategies held fixed.
Point best_response(const GameInstance& inst, const StrategyProfile& p, std::size_t n);

// ||best_response(n) - p_n||^2
double update_metric(const GameInstance& inst, const StrategyProfile& p, std::size_t n);

// L = 4 sqrt(q sum_n |N_n|^2). Throws DegenerateInstance on edgeless graphs.
double lipschitz_constant(const GameInstance& inst);

// 2 / L, the open upper bound on constant step sizes for gradient projection.
double max_step_size(const GameInstance& inst);

// 0.99 * max_step_size
double default_step_size(const GameInstance& inst);

// Centralised gradient projection step P_C(p - s grad J(p)) on the stacked vector.
StrategyProfile gradient_projection_step(const GameInstance& inst, const StrategyProfile& p,
                                         double step);

}  // namespace pgcc
