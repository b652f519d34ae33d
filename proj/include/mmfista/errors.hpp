#pragma once

#include <stdexcept>
#include <string>

namespace mmfista {

/// Shapes of operands do not conform.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A scalar or integer parameter is outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mmfista
