#pragma once

#include <stdexcept>
#include <string>

namespace scatter1d {

// Error taxonomy shared by the library and the CLI exit-code mapping:
//   config_error     -> exit 2 (bad inputs, files, parameter ranges)
//   numeric_error    -> exit 3 (iteration failures, resolution limits)
//   hypothesis_error -> exit 4 (bound states present where forbidden, etc.)

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

struct hypothesis_error : std::runtime_error {
  explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scatter1d
