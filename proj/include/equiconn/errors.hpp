#ifndef EQUICONN_ERRORS_HPP
#define EQUICONN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace equiconn {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched variable counts, chart dimensions or basis sizes.
struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Structurally invalid input data (bad structure constants, bad scene, ...).
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Sign/orientation conventions of the inputs are inconsistent with each other.
struct ConventionError : Error {
  explicit ConventionError(const std::string& msg) : Error(msg) {}
};

/// The requested computation is outside the supported fragment.
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

/// A distribution frame lost rank at a point where full rank is required.
struct DegenerateFrameError : Error {
  explicit DegenerateFrameError(const std::string& msg) : Error(msg) {}
};

/// A numeric trajectory left the representable range.
struct DivergenceError : Error {
  DivergenceError(const std::string& msg, double last_valid_time)
      : Error(msg), last_valid_time(last_valid_time) {}
  double last_valid_time;
};

/// A user-supplied closed-form flow map fails its defining identities.
struct InvalidFlowError : Error {
  explicit InvalidFlowError(const std::string& msg) : Error(msg) {}
};

}  // namespace equiconn

#endif
