#include "pgcc/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "pgcc/csv.hpp"
#include "pgcc/kernels.hpp"

namespace pgcc {

Ball::Ball(Point center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.dim() == 0) throw std::invalid_argument("ball: dimension must be at least 1");
  if (!(radius_ >= 0.0) || !std::isfinite(radius_)) {
    throw std::invalid_argument("ball: radius must be finite and nonnegative");
  }
}

void Ball::project_into(std::span<const double> x, std::span<double> out) const {
  const std::span<const double> c = center_.coords();
  const double dist = std::sqrt(kernels::squared_distance(x, c));
  if (dist <= radius_) {
    if (out.data() != x.data()) std::copy(x.begin(), x.end(), out.begin());
    return;
  }
  const double scale = radius_ / dist;
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] + scale * (x[j] - c[j]);
}

Halfspace::Halfspace(Point normal, double offset)
    : normal_(std::move(normal)), offset_(offset), normal_sq_(0.0) {
  if (normal_.dim() == 0) throw std::invalid_argument("halfspace: dimension must be at least 1");
  if (!std::isfinite(offset_)) throw std::invalid_argument("halfspace: offset must be finite");
  normal_sq_ = kernels::dot(normal_.coords(), normal_.coords());
  if (!(normal_sq_ > 0.0)) throw std::invalid_argument("halfspace: normal must be nonzero");
}

void Halfspace::project_into(std::span<const double> x, std::span<double> out) const {
  const std::span<const double> a = normal_.coords();
  const double excess = kernels::dot(a, x) - offset_;
  if (excess <= 0.0) {
    if (out.data() != x.data()) std::copy(x.begin(), x.end(), out.begin());
    return;
  }
  const double scale = excess / normal_sq_;
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = x[j] - scale * a[j];
}

Box::Box(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.dim() == 0) throw std::invalid_argument("box: dimension must be at least 1");
  require_same_dim(lower_.dim(), upper_.dim(), "box");
  for (std::size_t j = 0; j < lower_.dim(); ++j) {
    if (!(lower_[j] <= upper_[j])) throw std::invalid_argument("box: lower must not exceed upper");
  }
}

void Box::project_into(std::span<const double> x, std::span<double> out) const {
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = std::clamp(x[j], lower_[j], upper_[j]);
}

std::size_t ConvexSet::dim() const {
  return std::visit([](const auto& s) { return s.dim(); }, set_);
}

std::string_view ConvexSet::kind() const {
  static constexpr std::string_view names[] = {"ball", "halfspace", "box"};
  return names[set_.index()];
}

void ConvexSet::project_into(std::span<const double> x, std::span<double> out) const {
  std::visit([&](const auto& s) { s.project_into(x, out); }, set_);
}

Point ConvexSet::project(const Point& x) const {
  require_same_dim(dim(), x.dim(), "project");
  Point out(x.dim());
  project_into(x.coords(), out.coords());
  return out;
}

double ConvexSet::distance_to(std::span<const double> x) const {
  require_same_dim(dim(), x.size(), "distance_to");
  std::vector<double> proj(x.size());
  project_into(x, proj);
  return std::sqrt(kernels::squared_distance(x, proj));
}

bool ConvexSet::contains(const Point& x, double tol) const {
  if (!(tol >= 0.0)) throw std::invalid_argument("contains: tolerance must be nonnegative");
  return distance_to(x.coords()) <= tol;
}

std::string to_record(const ConvexSet& set) {
  struct Writer {
    std::string operator()(const Ball& b) const {
      return "kind=ball center=" + join_doubles(b.center().coords()) +
             " radius=" + format_double(b.radius());
    }
    std::string operator()(const Halfspace& h) const {
      return "kind=halfspace normal=" + join_doubles(h.normal().coords()) +
             " offset=" + format_double(h.offset());
    }
    std::string operator()(const Box& b) const {
      return "kind=box lower=" + join_doubles(b.lower().coords()) +
             " upper=" + join_doubles(b.upper().coords());
    }
  };
  return std::visit(Writer{}, set.variant());
}

ConvexSet parse_set_record(std::string_view record) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t pos = 0;
  while (pos < record.size()) {
    while (pos < record.size() && (record[pos] == ' ' || record[pos] == '\t')) ++pos;
    if (pos >= record.size()) break;
    std::size_t end = record.find_first_of(" \t", pos);
    if (end == std::string_view::npos) end = record.size();
    const std::string_view token = record.substr(pos, end - pos);
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("set record: expected key=value, got '" + std::string(token) + "'");
    }
    if (!fields.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1))).second) {
      throw std::invalid_argument("set record: duplicate key '" + std::string(token.substr(0, eq)) + "'");
    }
    pos = end;
  }

  auto take = [&](std::string_view key) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument("set record: missing '" + std::string(key) + "'");
    std::string value = it->second;
    fields.erase(it);
    return value;
  };
  auto finish = [&](ConvexSet set) {
    if (!fields.empty()) {
      throw std::invalid_argument("set record: unknown key '" + fields.begin()->first + "'");
    }
    return set;
  };

  const std::string kind = take("kind");
  if (kind == "ball") {
    Point center(split_doubles(take("center")));
    const double radius = parse_double(take("radius"));
    return finish(Ball(std::move(center), radius));
  }
  if (kind == "halfspace") {
    Point normal(split_doubles(take("normal")));
    const double offset = parse_double(take("offset"));
    return finish(Halfspace(std::move(normal), offset));
  }
  if (kind == "box") {
    Point lower(split_doubles(take("lower")));
    Point upper(split_doubles(take("upper")));
    return finish(Box(std::move(lower), std::move(upper)));
  }
  throw std::invalid_argument("set record: unknown kind '" + kind + "'");
}

}  // namespace pgcc
