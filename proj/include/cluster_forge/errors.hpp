#pragma once

#include <stdexcept>
#include <string>

namespace cluster_forge {

/// Malformed or inconsistent user input (files, flags, mismatched universes).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance admits no valid clustering.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cluster_forge
