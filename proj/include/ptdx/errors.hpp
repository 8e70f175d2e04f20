#pragma once

#include <stdexcept>
#include <string>

namespace ptdx {

// Violated input contract: bad parameters, mismatched grids, invalid config.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A numerical procedure failed: Newton divergence, QL stall, pole hit,
// seed node on the contour.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ptdx
