#pragma once

#include <stdexcept>

namespace ubiloc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed scenario files or invalid numeric inputs.
struct ValidationError : Error {
  using Error::Error;
};

// Inconsistent policy, axis or anchor configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Timestamps arriving out of order.
struct OrderingError : Error {
  using Error::Error;
};

// Degenerate anchor geometry (collinear or too few anchors).
struct GeometryError : Error {
  using Error::Error;
};

}  // namespace ubiloc
