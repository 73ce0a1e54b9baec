#pragma once

// Closed convex sets of R^q with closed-form Euclidean projections.

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "pgcc/point.hpp"

namespace pgcc {

// { x : ||x - center|| <= radius }. Radius 0 is allowed (a single point).
class Ball {
 public:
  Ball(Point center, double radius);

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  std::size_t dim() const noexcept { return center_.dim(); }

  void project_into(std::span<const double> x, std::span<double> out) const;

  bool operator==(const Ball&) const = default;

 private:
  Point center_;
  double radius_;
};

// { x : normal . x <= offset }, normal nonzero.
class Halfspace {
 public:
  Halfspace(Point normal, double offset);

  const Point& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }
  std::size_t dim() const noexcept { return normal_.dim(); }

  void project_into(std::span<const double> x, std::span<double> out) const;

  bool operator==(const Halfspace&) const = default;

 private:
  Point normal_;
  double offset_;
  double normal_sq_;
};

// Axis-aligned box lower <= x <= upper.
class Box {
 public:
  Box(Point lower, Point upper);

  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }
  std::size_t dim() const noexcept { return lower_.dim(); }

  void project_into(std::span<const double> x, std::span<double> out) const;

  bool operator==(const Box&) const = default;

 private:
  Point lower_;
  Point upper_;
};

class ConvexSet {
 public:
  using Variant = std::variant<Ball, Halfspace, Box>;

  ConvexSet(Ball b) : set_(std::move(b)) {}
  ConvexSet(Halfspace h) : set_(std::move(h)) {}
  ConvexSet(Box b) : set_(std::move(b)) {}

  std::size_t dim() const;
  std::string_view kind() const;
  const Variant& variant() const noexcept { return set_; }

  // Nearest point of the set to x. out may alias x. Sizes must equal dim();
  // this overload does not check them.
  void project_into(std::span<const double> x, std::span<double> out) const;

  // The checked operations below throw std::invalid_argument on a dimension
  // mismatch.
  Point project(const Point& x) const;
  double distance_to(std::span<const double> x) const;
  double distance_to(const Point& x) const { return distance_to(x.coords()); }
  // distance_to(x) <= tol
  bool contains(const Point& x, double tol) const;

  bool operator==(const ConvexSet&) const = default;

 private:
  Variant set_;
};

// Tagged single-line record, e.g. "kind=ball center=0.5,0.5 radius=0.25".
std::string to_record(const ConvexSet& set);
ConvexSet parse_set_record(std::string_view record);

}  // namespace pgcc
