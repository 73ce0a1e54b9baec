#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pgcc {

// A point of R^q. Coordinates are finite on construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim) : coords_(dim, 0.0) {}
  Point(std::initializer_list<double> coords);
  explicit Point(std::vector<double> coords);
  explicit Point(std::span<const double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t j) const { return coords_[j]; }
  double& operator[](std::size_t j) { return coords_[j]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  const double* data() const noexcept { return coords_.data(); }
  double* data() noexcept { return coords_.data(); }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
double norm(const Point& a);

// Throws std::invalid_argument when the dimensions differ.
void require_same_dim(std::size_t expected, std::size_t actual, const char* what);

}  // namespace pgcc
