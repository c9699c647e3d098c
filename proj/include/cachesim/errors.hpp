#pragma once

#include <stdexcept>

namespace cachesim {

/// Invalid parameters or malformed configuration input.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A policy was invoked outside the parameter regime it is defined for
/// (e.g. the knapsack weight table with beta <= 1).
struct RegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A placement rule could not be satisfied without violating capacity or
/// duplicate-copy constraints.
struct PlacementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem / stream failure while emitting results.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cachesim
