#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nbvar {

/// Bad shapes, out-of-domain parameters, malformed inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two bodies (closer than the collision threshold) at the same place.
class CollisionError : public std::runtime_error {
 public:
  CollisionError(std::size_t i, std::size_t j, std::optional<std::size_t> node = std::nullopt)
      : std::runtime_error(describe(i, j, node)), i_(i), j_(j), node_(node) {}

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }
  std::optional<std::size_t> node() const noexcept { return node_; }

 private:
  static std::string describe(std::size_t i, std::size_t j, std::optional<std::size_t> node) {
    std::string s = "collision between bodies " + std::to_string(i) + " and " + std::to_string(j);
    if (node) s += " at node " + std::to_string(*node);
    return s;
  }

  std::size_t i_, j_;
  std::optional<std::size_t> node_;
};

/// Parameter outside the mathematical domain of an operation (e.g. h = 0 for free-time solves).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The duration search never found an interior minimum.
class BracketError : public std::runtime_error {
 public:
  BracketError(double lo, double hi)
      : std::runtime_error("no interior minimum of the duration objective on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]"),
        lo_(lo),
        hi_(hi) {}

  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }

 private:
  double lo_, hi_;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nbvar
