#pragma once

#include <stdexcept>
#include <string>

namespace mtasep {

// Thrown when an input is structurally valid but the requested construction
// cannot exist (more arrivals than services, counts exceeding the ring size).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched extents or topologies between operands.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An exact computation would exceed a configured size cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mtasep
