#include "pgcc/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pgcc/errors.hpp"
#include "pgcc/kernels.hpp"

namespace pgcc {

StrategyProfile::StrategyProfile(std::size_t nodes, std::size_t dim, std::vector<double> flat)
    : nodes_(nodes), dim_(dim), data_(std::move(flat)) {
  if (data_.size() != nodes * dim) {
    throw std::invalid_argument("strategy profile: expected " + std::to_string(nodes * dim) +
                                " values, got " + std::to_string(data_.size()));
  }
}

StrategyProfile StrategyProfile::from_points(std::span<const Point> points) {
  if (points.empty()) return {};
  const std::size_t q = points.front().dim();
  StrategyProfile p(points.size(), q);
  for (std::size_t n = 0; n < points.size(); ++n) {
    require_same_dim(q, points[n].dim(), "strategy profile");
    std::copy(points[n].coords().begin(), points[n].coords().end(), p.node(n).begin());
  }
  return p;
}

GameInstance::GameInstance(Graph graph, std::vector<ConvexSet> sets,
                           std::optional<GeometricLayout> layout)
    : graph_(std::move(graph)), sets_(std::move(sets)), layout_(std::move(layout)) {
  if (sets_.size() != graph_.size()) {
    throw std::invalid_argument("game instance: " + std::to_string(graph_.size()) + " nodes but " +
                                std::to_string(sets_.size()) + " sets");
  }
  if (sets_.empty()) throw std::invalid_argument("game instance: no nodes");
  dim_ = sets_.front().dim();
  for (const auto& s : sets_) require_same_dim(dim_, s.dim(), "game instance sets");
  if (layout_) {
    if (layout_->positions.size() != graph_.size()) {
      throw std::invalid_argument("game instance: layout size does not match the graph");
    }
    for (const auto& pos : layout_->positions) require_same_dim(dim_, pos.dim(), "game instance layout");
  }
}

void GameInstance::require_matches(const StrategyProfile& p) const {
  if (p.nodes() != nodes()) {
    throw std::invalid_argument("strategy profile has " + std::to_string(p.nodes()) +
                                " nodes, instance has " + std::to_string(nodes()));
  }
  require_same_dim(dim_, p.dim(), "strategy profile");
}

void GameInstance::require_node(std::size_t n) const {
  if (n >= nodes()) {
    throw std::invalid_argument("node id " + std::to_string(n + 1) + " out of range 1.." +
                                std::to_string(nodes()));
  }
}

double max_infeasibility(const GameInstance& inst, const StrategyProfile& p) {
  inst.require_matches(p);
  double worst = 0.0;
  for (std::size_t n = 0; n < inst.nodes(); ++n) worst = std::max(worst, inst.set(n).distance_to(p.node(n)));
  return worst;
}

double utility(const GameInstance& inst, const StrategyProfile& p, std::size_t n) {
  inst.require_matches(p);
  inst.require_node(n);
  double acc = 0.0;
  for (NodeId k : inst.graph().neighbors(n)) acc += kernels::squared_distance(p.node(n), p.node(k));
  return -acc;
}

double potential(const GameInstance& inst, const StrategyProfile& p) {
  inst.require_matches(p);
  const Graph& g = inst.graph();
  const double twice = kernels::active().neighbor_squared_distance_sum(
      g.offsets().data(), g.adjacency().data(), p.flat().data(), p.nodes(), p.dim());
  return -0.5 * twice;
}

Point utility_gradient(const GameInstance& inst, const StrategyProfile& p, std::size_t n) {
  inst.require_matches(p);
  inst.require_node(n);
  const auto pn = p.node(n);
  Point acc(p.dim());
  for (NodeId k : inst.graph().neighbors(n)) {
    const auto pk = p.node(k);
    for (std::size_t j = 0; j < pn.size(); ++j) acc[j] += pn[j] - pk[j];
  }
  for (std::size_t j = 0; j < pn.size(); ++j) acc[j] *= -2.0;
  return acc;
}

std::vector<double> cost_gradient(const GameInstance& inst, const StrategyProfile& p) {
  inst.require_matches(p);
  const Graph& g = inst.graph();
  std::vector<double> grad(p.flat().size());
  kernels::active().neighbor_difference_sum(g.offsets().data(), g.adjacency().data(),
                                            p.flat().data(), p.nodes(), p.dim(), grad.data());
  for (double& v : grad) v *= 2.0;
  return grad;
}

Point centroid(const GameInstance& inst, const StrategyProfile& p, std::size_t n) {
  inst.require_matches(p);
  inst.require_node(n);
  const auto nb = inst.graph().neighbors(n);
  if (nb.empty()) throw DegenerateNode(n);
  Point c(p.dim());
  for (NodeId k : nb) {
    const auto pk = p.node(k);
    for (std::size_t j = 0; j < pk.size(); ++j) c[j] += pk[j];
  }
  const double inv = 1.0 / static_cast<double>(nb.size());
  for (std::size_t j = 0; j < c.dim(); ++j) c[j] *= inv;
  return c;
}

Point best_response(const GameInstance& inst, const StrategyProfile& p, std::size_t n) {
  Point c = centroid(inst, p, n);
  inst.set(n).project_into(c.coords(), c.coords());
  return c;
}

double update_metric(const GameInstance& inst, const StrategyProfile& p, std::size_t n) {
  const Point r = best_response(inst, p, n);
  return kernels::squared_distance(r.coords(), p.node(n));
}

double lipschitz_constant(const GameInstance& inst) {
  const Graph& g = inst.graph();
  if (g.edge_count() == 0) throw DegenerateInstance("Lipschitz constant undefined for an edgeless graph");
  double sum_sq_degree = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double d = static_cast<double>(g.degree(n));
    sum_sq_degree += d * d;
  }
  return 4.0 * std::sqrt(static_cast<double>(inst.dim()) * sum_sq_degree);
}

double max_step_size(const GameInstance& inst) { return 2.0 / lipschitz_constant(inst); }

double default_step_size(const GameInstance& inst) { return 0.99 * max_step_size(inst); }

StrategyProfile gradient_projection_step(const GameInstance& inst, const StrategyProfile& p,
                                         double step) {
  const std::vector<double> grad = cost_gradient(inst, p);
  StrategyProfile next = p;
  kernels::axpy(-step, grad, next.flat());
  for (std::size_t n = 0; n < inst.nodes(); ++n) inst.set(n).project_into(next.node(n), next.node(n));
  return next;
}

}  // namespace pgcc
