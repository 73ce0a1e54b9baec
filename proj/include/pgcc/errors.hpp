#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgcc {

// A node with no neighbours has no centroid and hence no best response.
class DegenerateNode : public std::domain_error {
 public:
  explicit DegenerateNode(std::size_t node)
      : std::domain_error("node " + std::to_string(node + 1) + " has an empty neighbourhood"),
        node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

// Raised for instances on which a quantity is undefined, e.g. the Lipschitz
// constant of an edgeless graph.
class DegenerateInstance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InstanceGenerationError : public std::runtime_error {
 public:
  InstanceGenerationError(const std::string& what, std::size_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pgcc
