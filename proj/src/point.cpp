#include "pgcc/point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pgcc/kernels.hpp"

namespace pgcc {
namespace {

void require_finite(std::span<const double> coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) throw std::invalid_argument("point coordinates must be finite");
  }
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point::Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
  require_finite(coords_);
}

void require_same_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                std::to_string(expected) + ", got " + std::to_string(actual) +
                                ")");
  }
}

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "squared_distance");
  return kernels::squared_distance(a.coords(), b.coords());
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

double norm(const Point& a) { return std::sqrt(kernels::dot(a.coords(), a.coords())); }

}  // namespace pgcc
